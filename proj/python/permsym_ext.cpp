#include <sstream>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "permsym/cli.hpp"
#include "permsym/compare.hpp"
#include "permsym/errors.hpp"
#include "permsym/json_io.hpp"

namespace py = pybind11;
using namespace permsym;

namespace {

std::string levels_json(int n, double xi, int max_quanta, bool classify) {
  const auto m = make_model(n, xi);
  auto levels = enumerate_levels(m, max_quanta);
  if (classify) levels = classify_levels(m, levels);
  return json(levels).dump();
}

std::string salc_json(int n, double xi, int n_sym, int n_last, const std::string& irrep) {
  const auto m = make_model(n, xi);
  const auto t = character_table(n);
  return json(salc(m, make_level(m, n_sym, n_last), t.irrep(irrep))).dump();
}

std::string ci_json(int n, double xi, int orbitals, std::optional<int> twice_ms) {
  const auto result = ci_solve(make_model(n, xi), build_basis(n, orbitals, twice_ms));
  return json{{"basis_size", result.basis.size()}, {"states", result.states}}.dump();
}

py::tuple run(const std::vector<std::string>& args) {
  std::vector<std::string> argv = {"permsym"};
  argv.insert(argv.end(), args.begin(), args.end());
  std::ostringstream out, err;
  int code = 0;
  {
    py::gil_scoped_release release;
    code = cli::main_entry(argv, out, err);
  }
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Native core of permsym";

  auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<UnboundModelError>(m, "UnboundModelError", base.ptr());
  py::register_exception<NumericalIntegrityError>(m, "NumericalIntegrityError", base.ptr());
  py::register_exception<InfeasibleBasisError>(m, "InfeasibleBasisError", base.ptr());

  m.def("character_table_json", [](int n) { return json(character_table(n)).dump(); }, py::arg("n"));
  m.def("multiplet_table_json", [](int n) { return json(multiplet_table(n)).dump(); }, py::arg("n"));
  m.def("allowed_irreps_json", [](int n) { return json(allowed_spatial_irreps(n)).dump(); }, py::arg("n"));
  m.def(
      "constructive_allowed_irreps_json",
      [](int n, double xi, int max_n_sym) {
        return json(constructive_allowed_irreps(make_model(n, xi), max_n_sym)).dump();
      },
      py::arg("n"), py::arg("xi"), py::arg("max_n_sym"));
  m.def("levels_json", &levels_json, py::arg("n"), py::arg("xi"), py::arg("max_quanta"), py::arg("classify"));
  m.def("salc_json", &salc_json, py::arg("n"), py::arg("xi"), py::arg("n_sym"), py::arg("n_last"), py::arg("irrep"));
  m.def("ci_json", &ci_json, py::arg("n"), py::arg("xi"), py::arg("orbitals"), py::arg("twice_ms") = std::nullopt,
        py::call_guard<py::gil_scoped_release>());
  m.def(
      "level_energy",
      [](int n, double xi, int n_sym, int n_last) { return level_energy(make_model(n, xi), n_sym, n_last); },
      py::arg("n"), py::arg("xi"), py::arg("n_sym"), py::arg("n_last"));
  m.def(
      "ci_energies",
      [](int n, double xi, int orbitals) {
        const auto result = ci_solve(make_model(n, xi), build_basis(n, orbitals));
        return std::vector<double>(result.eigenvalues.data(), result.eigenvalues.data() + result.eigenvalues.size());
      },
      py::arg("n"), py::arg("xi"), py::arg("orbitals"), py::call_guard<py::gil_scoped_release>());
  m.def("run", &run, py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");
}
