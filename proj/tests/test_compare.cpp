#include <doctest.h>

#include <algorithm>
#include <limits>

#include "permsym/compare.hpp"

using namespace permsym;

namespace {

CIState state(double energy, int twice_s, int parity, int twice_ms = 1) {
  CIState s;
  s.energy = energy;
  s.spin = SpinValue{twice_s};
  s.s_squared = s.spin.value() * (s.spin.value() + 1);
  s.twice_ms = twice_ms;
  s.parity = parity;
  return s;
}

CIResult synthetic(int n, std::vector<CIState> states) {
  CIResult r;
  r.n = n;
  r.states = std::move(states);
  r.eigenvalues.resize(static_cast<Eigen::Index>(r.states.size()));
  for (std::size_t i = 0; i < r.states.size(); ++i) r.eigenvalues(static_cast<Eigen::Index>(i)) = r.states[i].energy;
  return r;
}

const MissingLevel* find_missing(const ComparisonReport& r, int n_sym, int n_last) {
  for (const auto& l : r.missing)
    if (l.n_sym == n_sym && l.n_last == n_last) return &l;
  return nullptr;
}

}  // namespace

TEST_CASE("default tolerances") {
  CHECK(default_tolerance(3) == 1e-4);
  CHECK(default_tolerance(4) == 5e-3);
  CHECK_THROWS_AS((void)default_tolerance(5), DomainError);
}

TEST_CASE("enumeration horizon is the lowest level just past the enumerated shell") {
  const auto m = make_model(3, 0.1);
  double expected = std::numeric_limits<double>::infinity();
  for (int n_sym = 0; n_sym <= 5; ++n_sym) expected = std::min(expected, level_energy(m, n_sym, 5 - n_sym));
  CHECK(enumeration_horizon(m, 4) == expected);
  CHECK(enumeration_horizon(m, 4) == doctest::Approx(level_energy(m, 5, 0)));
}

TEST_CASE("convergence horizon from a synthetic pair of runs") {
  const auto fine = synthetic(3, {state(1.0, 1, 1), state(2.0, 1, 1), state(3.0, 1, 1), state(1.5, 1, -1), state(2.5, 1, -1)});
  SUBCASE("converged everywhere except the top of one block") {
    const auto coarse = synthetic(3, {state(1.0, 1, 1), state(2.0 + 1e-6, 1, 1), state(3.5, 1, 1), state(1.5, 1, -1),
                                      state(2.5, 1, -1)});
    CHECK(convergence_horizon(fine, coarse, 1e-4) == 3.0);
  }
  SUBCASE("a block the coarse run does not reach") {
    const auto coarse = synthetic(3, {state(1.0, 1, 1), state(2.0, 1, 1), state(3.0, 1, 1), state(1.5, 1, -1)});
    CHECK(convergence_horizon(fine, coarse, 1e-4) == 2.5);
  }
  SUBCASE("identical runs never stop") {
    CHECK(convergence_horizon(fine, fine, 1e-4) == std::numeric_limits<double>::infinity());
  }
}

TEST_CASE("matching, spurious states and missing levels") {
  const auto m = make_model(3, 0.1);
  const auto exact = classify_levels(m, enumerate_levels(m, 2));
  const auto allowed = allowed_spatial_irreps(3);
  const double e000 = level_energy(m, 0, 0);
  const double e100 = level_energy(m, 1, 0);
  const double e200 = level_energy(m, 2, 0);

  const auto ci = synthetic(3, {
                                   state(e000, 1, 1),           // only A1 at this level: forbidden
                                   state(e100 + 1e-6, 1, -1),   // E doublet
                                   state(e100 + 2e-6, 1, -1),
                                   state(e100, 1, 1),           // wrong parity
                                   state(e100, 3, -1),          // E does not pair with S = 3/2
                                   state(2.0, 1, 1),            // no level nearby
                                   state(100.0, 1, 1),          // past the horizon
                               });
  const auto report = compare(m, ci, exact, allowed, 1e-4, std::numeric_limits<double>::infinity());

  CHECK(report.horizon == doctest::Approx(enumeration_horizon(m, 2)));
  CHECK(report.unclassified == 1);
  REQUIRE(report.matched.size() == 2);
  CHECK(report.matched[0].ci_index == 1);
  CHECK(report.matched[0].n_sym == 1);
  CHECK(report.matched[0].n_last == 0);
  CHECK(report.matched[0].exact_energy == e100);
  REQUIRE(report.spurious.size() == 4);
  std::vector<std::size_t> spurious_indices;
  for (const auto& s : report.spurious) spurious_indices.push_back(s.ci_index);
  CHECK(spurious_indices == std::vector<std::size_t>{0, 3, 4, 5});

  const auto* ground = find_missing(report, 0, 0);
  REQUIRE(ground != nullptr);
  CHECK(ground->forbidden_only);
  const auto* two = find_missing(report, 2, 0);
  REQUIRE(two != nullptr);
  CHECK(two->energy == e200);
  CHECK_FALSE(two->forbidden_only);
  CHECK(find_missing(report, 1, 0) == nullptr);
  CHECK_FALSE(report.verified());
  CHECK_FALSE(report.vacuous);
}

TEST_CASE("verified report") {
  const auto m = make_model(3, 0.1);
  const auto exact = classify_levels(m, enumerate_levels(m, 1));
  const auto ci = synthetic(3, {state(level_energy(m, 1, 0), 1, -1), state(level_energy(m, 1, 0), 1, -1, -1)});
  const auto report = compare(m, ci, exact, allowed_spatial_irreps(3), 1e-4, 10.0);
  CHECK(report.spurious.empty());
  REQUIRE(report.missing.size() == 2);
  CHECK(report.verified());
}

TEST_CASE("vacuous tolerance") {
  const auto m = make_model(3, 0.1);
  const auto exact = classify_levels(m, enumerate_levels(m, 3));
  const auto ci = synthetic(3, {state(level_energy(m, 1, 0), 1, -1)});
  const auto allowed = allowed_spatial_irreps(3);
  const auto inf = std::numeric_limits<double>::infinity();
  CHECK_FALSE(compare(m, ci, exact, allowed, 1e-3, inf).vacuous);
  CHECK(compare(m, ci, exact, allowed, 0.5, inf).vacuous);
  CHECK(compare(m, ci, exact, allowed, inf, inf).vacuous);
}

TEST_CASE("input validation") {
  const auto m = make_model(3, 0.1);
  const auto exact = classify_levels(m, enumerate_levels(m, 2));
  const auto allowed = allowed_spatial_irreps(3);
  const auto ci = synthetic(3, {});
  CHECK_THROWS_AS((void)compare(m, ci, exact, allowed, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS((void)compare(m, ci, {}, allowed, 1e-4, 1.0), DomainError);
  CHECK_THROWS_AS((void)compare(m, ci, enumerate_levels(m, 2), allowed, 1e-4, 1.0), DomainError);
  CHECK_THROWS_AS((void)compare(m, synthetic(4, {}), exact, allowed, 1e-4, 1.0), SizeMismatchError);
}

TEST_CASE("three fermions, ten orbitals") {
  const auto m = make_model(3, 0.1);
  const auto fine = ci_solve(m, build_basis(3, 10));
  const auto coarse = ci_solve(m, build_basis(3, 8));
  const double horizon = convergence_horizon(fine, coarse, 1e-4);
  CHECK(horizon == doctest::Approx(8.137).epsilon(1e-3));
  const auto exact = classify_levels(m, enumerate_levels(m, 4));
  const auto report = compare(m, fine, exact, allowed_spatial_irreps(3), 1e-4, horizon);
  CHECK(report.horizon == doctest::Approx(level_energy(m, 5, 0)));
  CHECK(report.spurious.empty());
  REQUIRE(report.missing.size() == 5);
  for (int q = 0; q <= 4; ++q) {
    const auto* l = find_missing(report, 0, q);
    REQUIRE(l != nullptr);
    CHECK(l->forbidden_only);
  }
  CHECK(report.verified());
  CHECK_FALSE(report.vacuous);
}
