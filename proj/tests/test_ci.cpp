#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "permsym/ci.hpp"

using namespace permsym;

namespace {

std::vector<std::vector<int>> occupations(const std::vector<SlaterDeterminant>& basis) {
  std::vector<std::vector<int>> out;
  for (const auto& d : basis) out.push_back(d.occupied());
  return out;
}

// S^2 between determinants in the first-quantized product space.
Eigen::MatrixXd first_quantized_s_squared(int particles, int orbitals, const std::vector<std::vector<int>>& dets) {
  const int so = 2 * orbitals;
  Eigen::MatrixXd sp = Eigen::MatrixXd::Zero(so, so);
  Eigen::MatrixXd sz = Eigen::MatrixXd::Zero(so, so);
  for (int p = 0; p < orbitals; ++p) {
    sp(2 * p, 2 * p + 1) = 1.0;
    sz(2 * p, 2 * p) = 0.5;
    sz(2 * p + 1, 2 * p + 1) = -0.5;
  }
  const auto dim = static_cast<Eigen::Index>(std::pow(so, particles));
  Eigen::MatrixXd Sp = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd Sz = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < particles; ++i) {
    Sp += oracle::on_particle(sp, i, particles);
    Sz += oracle::on_particle(sz, i, particles);
  }
  const Eigen::MatrixXd s2 = Sp.transpose() * Sp + Sz * Sz + Sz;
  const auto perms = oracle::brute_permutations(particles);
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(dets.size()));
  for (std::size_t c = 0; c < dets.size(); ++c) {
    for (const auto& p : perms) {
      Eigen::Index index = 0;
      for (int i = 0; i < particles; ++i) index = index * so + dets[c][static_cast<std::size_t>(p[static_cast<std::size_t>(i)] - 1)];
      D(index, static_cast<Eigen::Index>(c)) += oracle::inversion_parity(p) / std::sqrt(static_cast<double>(perms.size()));
    }
  }
  return D.transpose() * s2 * D;
}

}  // namespace

TEST_CASE("spin-orbital indexing") {
  CHECK(SpinOrbital{0, SpinLabel::alpha}.index() == 0);
  CHECK(SpinOrbital{0, SpinLabel::beta}.index() == 1);
  CHECK(SpinOrbital{3, SpinLabel::beta}.index() == 7);
  CHECK(SpinOrbital::from_index(6) == SpinOrbital{3, SpinLabel::alpha});
}

TEST_CASE("Slater determinants") {
  const SlaterDeterminant d({0, 1, 2});
  CHECK(d.to_string() == "|0a 0b 1a>");
  CHECK(d.bits() == 0b111);
  CHECK(d.twice_ms() == 1);
  CHECK(d.total_quanta() == 1);
  CHECK(d.parity() == -1);
  CHECK_THROWS_AS(SlaterDeterminant({1, 0}), DomainError);
  CHECK_THROWS_AS(SlaterDeterminant({2, 2}), DomainError);

  const auto [sorted, sign] = SlaterDeterminant::canonicalize({5, 0, 3});
  CHECK(sorted.occupied() == std::vector<int>{0, 3, 5});
  CHECK(sign == 1);
  // Swapping two spin-orbitals before canonicalization flips the sign.
  const auto [swapped, swapped_sign] = SlaterDeterminant::canonicalize({0, 5, 3});
  CHECK(swapped == sorted);
  CHECK(swapped_sign == -sign);
  CHECK_THROWS_AS((void)SlaterDeterminant::canonicalize({1, 4, 1}), DomainError);
}

TEST_CASE("position matrix elements against quadrature") {
  const auto q = oracle::gauss_hermite(24);
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b) CHECK(std::abs(x_matrix_element(a, b) - oracle::quadrature_x_element(q, a, b)) < 1e-12);
  CHECK(x_matrix_element(0, 1) == doctest::Approx(0.70710678).epsilon(1e-8));
  CHECK(x_matrix_element(3, 4) == doctest::Approx(1.41421356).epsilon(1e-8));
  CHECK(x_matrix_element(2, 2) == 0.0);
  CHECK(core_energy(3) == 3.5);
}

TEST_CASE("basis construction") {
  const auto full = build_basis(3, 4);
  CHECK(full.size() == 56);
  CHECK(std::is_sorted(full.begin(), full.end()));
  CHECK(build_basis(4, 3, 0).size() == 9);
  for (const auto& d : build_basis(4, 3, 0)) CHECK(d.twice_ms() == 0);
  CHECK(build_basis(3, 4, 3).size() == 4);
  CHECK(build_basis(3, 4, 5).empty());
  CHECK_THROWS_AS((void)build_basis(3, 1), InfeasibleBasisError);
}

TEST_CASE("Slater-Condon matches the first-quantized Hamiltonian") {
  SUBCASE("N = 3, M = 4") {
    const auto m = make_model(3, 0.1);
    const auto basis = build_basis(3, 4);
    const auto H = hamiltonian_matrix(basis, m);
    const auto ref = oracle::first_quantized_hamiltonian(3, 4, 0.1, occupations(basis));
    CHECK((H - ref).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((spin_squared_matrix(basis) - first_quantized_s_squared(3, 4, occupations(basis))).cwiseAbs().maxCoeff() < 1e-10);
  }
  SUBCASE("N = 4, M = 3, negative coupling") {
    const auto m = make_model(4, -0.2);
    const auto basis = build_basis(4, 3);
    const auto H = hamiltonian_matrix(basis, m);
    const auto ref = oracle::first_quantized_hamiltonian(4, 3, -0.2, occupations(basis));
    CHECK((H - ref).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("energies do not depend on the input ordering of the basis") {
  const auto m = make_model(3, 0.1);
  auto basis = build_basis(3, 5);
  const Eigen::VectorXd sorted_values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hamiltonian_matrix(basis, m)).eigenvalues();
  std::mt19937 rng(3);
  std::shuffle(basis.begin(), basis.end(), rng);
  const Eigen::VectorXd shuffled_values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hamiltonian_matrix(basis, m)).eigenvalues();
  CHECK((sorted_values - shuffled_values).cwiseAbs().maxCoeff() < 1e-10);
  const auto result = ci_solve(m, basis);
  CHECK((result.eigenvalues - sorted_values).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("CI for three particles") {
  const auto m = make_model(3, 0.1);
  const auto result = ci_solve(m, build_basis(3, 10));
  const double lowest_allowed = 2.0 * std::sqrt(0.9) + 0.5 * std::sqrt(1.2);
  CHECK(result.states.front().energy == doctest::Approx(lowest_allowed).epsilon(1e-4));
  CHECK(result.states.front().spin.twice == 1);
  CHECK(result.eigenvalues.size() == static_cast<Eigen::Index>(result.basis.size()));
  for (Eigen::Index i = 1; i < result.eigenvalues.size(); ++i) CHECK(result.eigenvalues(i - 1) <= result.eigenvalues(i));

  // No state near the totally symmetric ground level.
  const double e000 = level_energy(m, 0, 0);
  for (const auto& s : result.states) CHECK(std::abs(s.energy - e000) > 0.05);
}

TEST_CASE("eigenvectors are spin eigenstates with a definite parity") {
  const auto m = make_model(3, 0.1);
  const auto result = ci_solve(m, build_basis(3, 6));
  const auto S2 = spin_squared_matrix(result.basis);
  for (Eigen::Index j = 0; j < result.eigenvectors.cols(); ++j) {
    const auto v = result.eigenvectors.col(j);
    const auto& state = result.states[static_cast<std::size_t>(j)];
    const double s = state.spin.value();
    CHECK(v.dot(S2 * v) == doctest::Approx(s * (s + 1)).epsilon(1e-6));
    CHECK(state.s_squared == doctest::Approx(s * (s + 1)).epsilon(1e-6));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      if (std::abs(v(i)) > 1e-12) {
        CHECK(result.basis[static_cast<std::size_t>(i)].parity() == state.parity);
        CHECK(result.basis[static_cast<std::size_t>(i)].twice_ms() == state.twice_ms);
      }
    }
  }
  CHECK((result.eigenvectors.transpose() * result.eigenvectors).isIdentity(1e-10));
}

TEST_CASE("CI is deterministic") {
  const auto m = make_model(4, 0.1);
  const auto basis = build_basis(4, 5);
  const auto a = ci_solve(m, basis);
  const auto b = ci_solve(m, basis);
  CHECK(a.eigenvalues == b.eigenvalues);
  CHECK(a.eigenvectors == b.eigenvectors);
}

TEST_CASE("variational monotonicity") {
  const auto m = make_model(3, 0.1);
  double previous = std::numeric_limits<double>::infinity();
  for (int orbitals : {4, 6, 8, 10}) {
    const double e = ci_solve(m, build_basis(3, orbitals)).eigenvalues(0);
    CHECK(e <= previous + 1e-12);
    CHECK(e >= level_energy(m, 1, 0) - 1e-10);
    previous = e;
  }
}

TEST_CASE("product-basis oracle") {
  const auto m = make_model(3, 0.1);
  const auto levels = product_basis_oracle(m, 8);
  REQUIRE(levels.size() >= 5);
  CHECK(levels[0].energy == doctest::Approx(1.4964058555556798).epsilon(1e-5));
  CHECK(levels[0].degeneracy == 1);
  CHECK(levels[1].energy == doctest::Approx(level_energy(m, 1, 0)).epsilon(1e-5));
  CHECK(levels[1].degeneracy == 2);
  CHECK(levels[2].energy == doctest::Approx(level_energy(m, 0, 1)).epsilon(1e-5));
  CHECK(levels[3].energy == doctest::Approx(level_energy(m, 2, 0)).epsilon(1e-5));
  CHECK(levels[3].degeneracy == 3);
  CHECK_THROWS_AS((void)product_basis_oracle(m, 9), DomainError);
  CHECK_THROWS_AS((void)product_basis_oracle(make_model(4, 0.1), 7), DomainError);
}
