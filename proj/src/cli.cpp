#include "permsym/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include <CLI11.hpp>

#include "permsym/errors.hpp"

namespace permsym::cli {

namespace {

constexpr int kMaxQuantaLimit = 40;
constexpr int kMaxProjectQuanta = 12;
constexpr std::int64_t kMaxDeterminants = 12000;

const std::vector<std::string> kCommands = {"table", "spectrum", "irreps", "allowed",
                                            "project", "ci", "compare"};

bool needs_model(const RunConfig& c) {
  return c.command != "table" && !(c.command == "allowed" && c.verify.empty());
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

int default_orbitals(int n) { return n == 3 ? 10 : 8; }

std::string format_number(double v) {
  std::ostringstream s;
  s.precision(9);
  s << v;
  return s.str();
}

std::string twice_to_text(int twice) {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string irrep_content(const std::map<std::string, int>& mults) {
  std::string text;
  for (const auto& [label, count] : mults) {
    for (int i = 0; i < count; ++i) text += (text.empty() ? "" : "+") + label;
  }
  return text;
}

void csv_header(std::ostream& os, const RunConfig& c) {
  json j = c;
  os << "# config: " << j.dump() << "\n";
}

void emit_table(const RunConfig& c, std::ostream& os) {
  const auto t = character_table(c.n);
  if (c.format == "csv") {
    csv_header(os, c);
    os << "irrep,dimension";
    for (std::size_t k = 0; k < t.classes.size(); ++k) os << "," << t.class_aliases[k];
    os << "\n";
    for (std::size_t i = 0; i < t.irreps.size(); ++i) {
      os << t.irreps[i].label << "," << t.irreps[i].dimension;
      for (int x : t.chars[i]) os << "," << x;
      os << "\n";
    }
    return;
  }
  json j{{"config", c}, {"table", t}, {"valid", !validate_table(t).has_value()}};
  os << j.dump(2) << "\n";
}

void emit_levels(const RunConfig& c, std::ostream& os, bool classify) {
  const auto m = make_model(c.n, c.xi);
  auto levels = enumerate_levels(m, c.max_quanta);
  if (classify) levels = classify_levels(m, levels);
  const auto accidental = accidental_degeneracies(levels);
  if (c.format == "csv") {
    csv_header(os, c);
    os << "n_sym,n_last,energy,degeneracy,parity" << (classify ? ",content" : "") << "\n";
    for (const auto& l : levels) {
      os << l.n_sym << "," << l.n_last << "," << format_number(l.energy) << "," << l.degeneracy << ","
         << l.parity;
      if (classify) os << "," << irrep_content(l.irrep_mults);
      os << "\n";
    }
    return;
  }
  json j{{"config", c}, {"levels", levels}, {"accidental_degeneracies", accidental}};
  os << j.dump(2) << "\n";
}

int emit_allowed(const RunConfig& c, std::ostream& os, std::ostream& err) {
  const auto allowed = allowed_spatial_irreps(c.n);
  std::optional<AllowedIrrepMap> constructive;
  if (c.verify == "constructive") {
    const auto m = make_model(c.n, c.xi);
    constructive = constructive_allowed_irreps(m, c.n == 3 ? 3 : 6);
  }
  const bool agree = !constructive || constructive->spins == allowed.spins;

  if (c.format == "csv") {
    csv_header(os, c);
    os << "irrep,allowed,S,multiplets\n";
    for (const auto& [label, spins] : allowed.spins) {
      std::string s_text;
      std::string names;
      for (const auto& s : spins) {
        s_text += (s_text.empty() ? "" : ";") + s.to_string();
        names += (names.empty() ? "" : ";") + s.multiplet_name();
      }
      os << label << "," << (spins.empty() ? "no" : "yes") << "," << s_text << ","
         << (spins.empty() ? "forbidden" : names) << "\n";
    }
  } else {
    json j{{"config", c}, {"allowed", allowed}, {"multiplets", multiplet_table(c.n)}};
    if (constructive) {
      j["constructive"] = *constructive;
      j["agree"] = agree;
    }
    os << j.dump(2) << "\n";
  }
  if (!agree) {
    err << "permsym: character and constructive routes disagree on the allowed irreps\n";
    return kNumericalError;
  }
  return kSuccess;
}

void emit_project(const RunConfig& c, std::ostream& os) {
  const auto m = make_model(c.n, c.xi);
  const auto level = classify_level(m, make_level(m, c.nsym, c.nlast));
  const auto t = character_table(c.n);
  const auto s = salc(m, level, t.irrep(c.irrep));
  json j{{"config", c},
         {"level", level},
         {"basis", level_basis(m.degenerate_modes(), c.nsym)},
         {"salc", s}};
  os << j.dump(2) << "\n";
}

void emit_ci(const RunConfig& c, std::ostream& os) {
  const auto m = make_model(c.n, c.xi);
  const auto basis = build_basis(c.n, c.orbitals, c.twice_ms);
  const auto result = ci_solve(m, basis);
  if (c.format == "csv") {
    csv_header(os, c);
    os << "index,energy,S,Ms,parity,S2\n";
    for (std::size_t i = 0; i < result.states.size(); ++i) {
      const auto& s = result.states[i];
      os << i << "," << format_number(s.energy) << "," << s.spin.to_string() << ","
         << twice_to_text(s.twice_ms) << "," << s.parity << "," << format_number(round_significant(s.s_squared))
         << "\n";
    }
    return;
  }
  json j{{"config", c}, {"basis_size", basis.size()}, {"states", result.states}};
  os << j.dump(2) << "\n";
}

int emit_compare(const RunConfig& c, std::ostream& os, std::ostream& err) {
  const auto m = make_model(c.n, c.xi);
  const double tol = *c.tol;
  const auto fine = ci_solve(m, build_basis(c.n, c.orbitals));
  const int coarse_orbitals = c.orbitals - 2;
  double horizon = std::numeric_limits<double>::infinity();
  if (2 * coarse_orbitals >= c.n) {
    const auto coarse = ci_solve(m, build_basis(c.n, coarse_orbitals));
    horizon = convergence_horizon(fine, coarse, tol);
  }
  const auto exact = classify_levels(m, enumerate_levels(m, c.max_quanta));
  const auto report = compare(m, fine, exact, allowed_spatial_irreps(c.n), tol, horizon);

  json j = report;
  j["config"] = c;
  j["coarse_orbitals"] = coarse_orbitals;
  j["convergence_horizon"] = finite_or_null(horizon);
  os << j.dump(2) << "\n";

  if (report.vacuous) err << "permsym: warning: tolerance does not resolve neighbouring exact levels\n";
  if (!report.verified()) {
    err << "permsym: missing-level verification failed (" << report.spurious.size() << " spurious states)\n";
    return kVerificationFailed;
  }
  return kSuccess;
}

int dispatch(const RunConfig& c, std::ostream& os, std::ostream& err) {
  if (c.command == "table") {
    emit_table(c, os);
  } else if (c.command == "spectrum") {
    emit_levels(c, os, false);
  } else if (c.command == "irreps") {
    emit_levels(c, os, true);
  } else if (c.command == "allowed") {
    return emit_allowed(c, os, err);
  } else if (c.command == "project") {
    emit_project(c, os);
  } else if (c.command == "ci") {
    emit_ci(c, os);
  } else if (c.command == "compare") {
    return emit_compare(c, os, err);
  } else {
    throw DomainError("unknown command '" + c.command + "'");
  }
  return kSuccess;
}

}  // namespace

int parse_twice_ms(const std::string& text) {
  if (text.empty()) throw DomainError("empty M_s value");
  std::size_t used = 0;
  const auto slash = text.find('/');
  try {
    if (slash != std::string::npos) {
      const int numerator = std::stoi(text.substr(0, slash), &used);
      if (used != slash || text.substr(slash + 1) != "2") throw DomainError("");
      return numerator;
    }
    const double v = std::stod(text, &used);
    if (used != text.size()) throw DomainError("");
    const double twice = 2.0 * v;
    if (std::abs(twice - std::round(twice)) > 1e-12) throw DomainError("");
    return static_cast<int>(std::lround(twice));
  } catch (const std::exception&) {
    throw DomainError("M_s must be an integer or half-integer, got '" + text + "'");
  }
}

RunConfig resolve(RunConfig c) {
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw DomainError("unknown command '" + c.command + "'");
  }
  if (c.n != 3 && c.n != 4) throw DomainError("N must be 3 or 4, got " + std::to_string(c.n));
  if (c.format != "json" && c.format != "csv") throw DomainError("format must be json or csv");
  if (c.format == "csv" && (c.command == "project" || c.command == "compare")) {
    throw DomainError("the " + c.command + " command only writes JSON");
  }
  if (needs_model(c)) (void)make_model(c.n, c.xi);
  if (c.max_quanta < 0 || c.max_quanta > kMaxQuantaLimit) {
    throw DomainError("max-quanta must lie in [0, " + std::to_string(kMaxQuantaLimit) + "]");
  }
  if (!c.verify.empty() && c.verify != "constructive") throw DomainError("--verify accepts only 'constructive'");

  if (c.command == "ci" || c.command == "compare") {
    if (c.orbitals == 0) c.orbitals = default_orbitals(c.n);
    if (2 * c.orbitals < c.n) {
      throw DomainError(std::to_string(c.orbitals) + " orbitals cannot hold " + std::to_string(c.n) +
                        " electrons");
    }
    if (c.orbitals > 32 || binomial(2 * c.orbitals, c.n) > kMaxDeterminants) {
      throw DomainError("basis of " + std::to_string(c.orbitals) + " orbitals exceeds the dense CI limit of " +
                        std::to_string(kMaxDeterminants) + " determinants");
    }
  }
  if (c.twice_ms) {
    if (c.command != "ci") throw DomainError("--ms only applies to the ci command");
    if (std::abs(*c.twice_ms) > c.n || (*c.twice_ms + c.n) % 2 != 0) {
      throw DomainError("M_s = " + twice_to_text(*c.twice_ms) + " is impossible for N = " + std::to_string(c.n));
    }
  }
  if (c.command == "compare") {
    if (!c.tol) c.tol = default_tolerance(c.n);
    if (!(*c.tol > 0.0) || !std::isfinite(*c.tol)) throw DomainError("tolerance must be positive and finite");
  } else if (c.tol) {
    throw DomainError("--tol only applies to the compare command");
  }
  if (c.command == "project") {
    if (c.nsym < 0 || c.nsym > kMaxProjectQuanta) {
      throw DomainError("nsym must lie in [0, " + std::to_string(kMaxProjectQuanta) + "]");
    }
    if (c.nlast < 0) throw DomainError("nlast must be non-negative");
    (void)character_table(c.n).irrep(c.irrep);
  }
  return c;
}

void to_json(json& j, const RunConfig& c) {
  j = json{{"command", c.command}, {"n", c.n}, {"format", c.format}};
  if (c.command != "table" && !(c.command == "allowed" && c.verify.empty())) j["xi"] = c.xi;
  if (c.command == "spectrum" || c.command == "irreps" || c.command == "compare") j["max_quanta"] = c.max_quanta;
  if (c.command == "ci" || c.command == "compare") j["orbitals"] = c.orbitals;
  if (c.twice_ms) j["ms"] = *c.twice_ms / 2.0;
  if (c.tol) j["tol"] = *c.tol;
  if (c.command == "project") {
    j["nsym"] = c.nsym;
    j["nlast"] = c.nlast;
    j["irrep"] = c.irrep;
  }
  if (!c.verify.empty()) j["verify"] = c.verify;
  j["output"] = c.output.empty() ? json(nullptr) : json(c.output);
}

void from_json(const json& j, RunConfig& c) {
  c = RunConfig{};
  c.command = j.at("command").get<std::string>();
  c.n = j.at("n").get<int>();
  c.format = j.at("format").get<std::string>();
  if (j.contains("xi")) c.xi = j.at("xi").get<double>();
  if (j.contains("max_quanta")) c.max_quanta = j.at("max_quanta").get<int>();
  if (j.contains("orbitals")) c.orbitals = j.at("orbitals").get<int>();
  if (j.contains("ms")) c.twice_ms = static_cast<int>(std::lround(2.0 * j.at("ms").get<double>()));
  if (j.contains("tol")) c.tol = j.at("tol").get<double>();
  if (j.contains("nsym")) c.nsym = j.at("nsym").get<int>();
  if (j.contains("nlast")) c.nlast = j.at("nlast").get<int>();
  if (j.contains("irrep")) c.irrep = j.at("irrep").get<std::string>();
  if (j.contains("verify")) c.verify = j.at("verify").get<std::string>();
  if (j.contains("output") && !j.at("output").is_null()) c.output = j.at("output").get<std::string>();
}

std::variant<RunConfig, ParseFailure> parse_args(const std::vector<std::string>& args) {
  CLI::App app{"Symmetry analysis and configuration interaction for exactly solvable oscillator models",
               "permsym"};
  app.require_subcommand(1);

  RunConfig c;
  std::string ms_text;
  double tol = 0.0;

  auto add_n = [&](CLI::App* sub) { sub->add_option("--n", c.n, "Particle count (3 or 4)")->required(); };
  auto add_xi = [&](CLI::App* sub) { sub->add_option("--xi", c.xi, "Coupling constant")->capture_default_str(); };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) { sub->add_option("-o,--output", c.output, "Write the artifact to this path"); };

  auto* table = app.add_subcommand("table", "Character table of S_N");
  add_n(table);
  add_format(table);
  add_output(table);

  auto* spectrum = app.add_subcommand("spectrum", "Exact energy levels");
  auto* irreps = app.add_subcommand("irreps", "Exact levels with their irrep content");
  for (auto* sub : {spectrum, irreps}) {
    add_n(sub);
    add_xi(sub);
    sub->add_option("--max-quanta", c.max_quanta, "Largest total quanta n_sym + n_last")->capture_default_str();
    add_format(sub);
    add_output(sub);
  }

  auto* allowed = app.add_subcommand("allowed", "Spatial irreps allowed by antisymmetry, with their spins");
  add_n(allowed);
  add_xi(allowed);
  allowed->add_option("--verify", c.verify, "Also run the constructive route")->check(CLI::IsMember({"constructive"}));
  add_format(allowed);
  add_output(allowed);

  auto* project = app.add_subcommand("project", "Symmetry-adapted combinations within one level");
  add_n(project);
  add_xi(project);
  project->add_option("--nsym", c.nsym, "Quanta in the degenerate modes")->required();
  project->add_option("--nlast", c.nlast, "Quanta in the symmetric mode")->capture_default_str();
  project->add_option("--irrep", c.irrep, "Irrep label")->required();
  add_output(project);

  auto* ci = app.add_subcommand("ci", "Full configuration interaction");
  add_n(ci);
  add_xi(ci);
  ci->add_option("--orbitals", c.orbitals, "Number of spatial orbitals M (default 10 for N=3, 8 for N=4)");
  ci->add_option("--ms", ms_text, "Restrict to one M_s, e.g. 1/2");
  add_format(ci);
  add_output(ci);

  auto* cmp = app.add_subcommand("compare", "Match CI eigenvalues against the exact levels");
  add_n(cmp);
  add_xi(cmp);
  cmp->add_option("--orbitals", c.orbitals, "Number of spatial orbitals M (default 10 for N=3, 8 for N=4)");
  cmp->add_option("--max-quanta", c.max_quanta, "Largest total quanta of the exact levels")->capture_default_str();
  auto* tol_opt = cmp->add_option("--tol", tol, "Matching tolerance (default 1e-4 for N=3, 5e-3 for N=4)");
  add_output(cmp);

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    return ParseFailure{kSuccess, app.help()};
  } catch (const CLI::CallForAllHelp&) {
    return ParseFailure{kSuccess, app.help("", CLI::AppFormatMode::All)};
  } catch (const CLI::ParseError& e) {
    std::string help = app.help();
    for (auto* sub : app.get_subcommands()) help = sub->help();
    return ParseFailure{kUsageError, std::string("permsym: ") + e.what() + "\n\n" + help};
  }

  c.command = app.get_subcommands().front()->get_name();
  try {
    if (!ms_text.empty()) c.twice_ms = parse_twice_ms(ms_text);
  } catch (const DomainError& e) {
    return ParseFailure{kUsageError, std::string("permsym: ") + e.what()};
  }
  if (tol_opt->count() > 0) c.tol = tol;
  return c;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
  try {
    return body();
  } catch (const UnboundModelError& e) {
    err << "permsym: " << e.what() << "\n";
    return kUsageError;
  } catch (const NumericalIntegrityError& e) {
    err << "permsym: numerical integrity error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    err << "permsym: " << e.what() << "\n";
    return kUsageError;
  } catch (const json::exception& e) {
    err << "permsym: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    err << "permsym: internal error: " << e.what() << "\n";
    return kNumericalError;
  }
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  return guarded(
      [&] {
        const RunConfig resolved = resolve(config);
        if (resolved.output.empty()) return dispatch(resolved, out, err);
        std::ostringstream buffer;
        const int code = dispatch(resolved, buffer, err);
        std::ofstream file(resolved.output);
        if (!file) throw DomainError("cannot open output file '" + resolved.output + "'");
        file << buffer.str();
        return code;
      },
      err);
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  auto parsed = parse_args(args);
  if (auto* failure = std::get_if<ParseFailure>(&parsed)) {
    (failure->exit_code == kSuccess ? out : err) << failure->message << (failure->message.ends_with('\n') ? "" : "\n");
    return failure->exit_code;
  }
  return run(std::get<RunConfig>(parsed), out, err);
}

}  // namespace permsym::cli
