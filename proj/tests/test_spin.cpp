#include <doctest.h>

#include <optional>
#include <random>

#include "oracles.hpp"
#include "permsym/spin.hpp"

using namespace permsym;

namespace {

// S^2 = S_- S_+ + S_z^2 + S_z from single-particle ladder matrices.
Eigen::MatrixXd s_squared_from_ladders(int n) {
  Eigen::MatrixXd sp(2, 2), sz(2, 2);
  sp << 0, 1,
        0, 0;  // alpha = index 0
  sz << 0.5, 0,
        0, -0.5;
  const auto dim = static_cast<Eigen::Index>(1) << n;
  Eigen::MatrixXd Sp = Eigen::MatrixXd::Zero(dim, dim);
  Eigen::MatrixXd Sz = Eigen::MatrixXd::Zero(dim, dim);
  for (int i = 0; i < n; ++i) {
    Sp += oracle::on_particle(sp, i, n);
    Sz += oracle::on_particle(sz, i, n);
  }
  return Sp.transpose() * Sp + Sz * Sz + Sz;
}

std::vector<SpinValue> spins(std::initializer_list<int> twice) {
  std::vector<SpinValue> out;
  for (int t : twice) out.push_back(SpinValue{t});
  return out;
}

}  // namespace

TEST_CASE("spin values and products") {
  CHECK(SpinValue{3}.to_string() == "3/2");
  CHECK(SpinValue{2}.to_string() == "1");
  CHECK(SpinValue{0}.multiplet_name() == "singlet");
  CHECK(SpinValue{1}.multiplet_name() == "doublet");
  CHECK(SpinValue{3}.multiplet_name() == "quadruplet");
  CHECK(SpinValue{4}.multiplet_name() == "quintuplet");

  CHECK(SpinProduct::from_index(2, 0).to_string() == "aa");
  CHECK(SpinProduct::from_index(2, 1).to_string() == "ab");
  CHECK(SpinProduct::from_index(2, 2).to_string() == "ba");
  CHECK(SpinProduct::from_index(2, 3).to_string() == "bb");
  for (std::size_t i = 0; i < 16; ++i) CHECK(SpinProduct::from_index(4, i).index() == i);
  CHECK(SpinProduct::parse("aab").twice_ms() == 1);
  CHECK(SpinProduct::parse("bbbb").twice_ms() == -4);
  CHECK_THROWS_AS((void)SpinProduct::parse("axb"), DomainError);
}

TEST_CASE("spin permutation matrices form a representation") {
  for (int n : {2, 3, 4}) {
    const auto elements = all_permutations(n);
    for (const auto& p : elements) {
      const auto Sp = spin_permutation_matrix(n, p);
      for (const auto& q : elements) {
        CHECK((Sp * spin_permutation_matrix(n, q) - spin_permutation_matrix(n, compose(p, q))).norm() == 0.0);
      }
    }
  }
  // Particle 1's spin moves to particle 2 under (12).
  const auto t = spin_permutation_matrix(2, Permutation::transposition(2, 1, 2));
  CHECK(t(SpinProduct::parse("ba").index(), SpinProduct::parse("ab").index()) == 1.0);
}

TEST_CASE("total spin operator") {
  for (int n : {2, 3, 4}) {
    const auto s2 = total_spin_squared(n);
    CHECK((s2 - s_squared_from_ladders(n)).norm() < 1e-12);
    for (const auto& p : all_permutations(n)) {
      const auto P = spin_permutation_matrix(n, p);
      CHECK((P * s2 - s2 * P).norm() < 1e-12);
    }
  }
  CHECK(twice_sz_diagonal(3)(0) == 3);
  CHECK(twice_sz_diagonal(3)(7) == -3);
  CHECK(spin_from_s_squared(0.75).twice == 1);
  CHECK(spin_from_s_squared(2.0).twice == 2);
  CHECK_THROWS_AS((void)spin_from_s_squared(1.0), NumericalIntegrityError);
}

TEST_CASE("multiplet tables") {
  const auto two = multiplet_table(2);
  CHECK(two.counts == std::map<SpinValue, int>{{SpinValue{0}, 1}, {SpinValue{2}, 1}});
  const auto three = multiplet_table(3);
  CHECK(three.counts == std::map<SpinValue, int>{{SpinValue{1}, 2}, {SpinValue{3}, 1}});
  CHECK(three.dimension() == 8);
  const auto four = multiplet_table(4);
  CHECK(four.counts == std::map<SpinValue, int>{{SpinValue{0}, 2}, {SpinValue{2}, 3}, {SpinValue{4}, 1}});
  CHECK(four.dimension() == 16);
}

TEST_CASE("S_N content of spin space") {
  const auto t3 = character_table(3);
  CHECK(spin_irrep_multiplicities(3, t3) == std::map<std::string, int>{{"A1", 4}, {"A2", 0}, {"E", 2}});
  const auto t4 = character_table(4);
  CHECK(spin_irrep_multiplicities(4, t4) ==
        std::map<std::string, int>{{"A1", 5}, {"A2", 0}, {"E", 1}, {"T1", 0}, {"T2", 3}});

  // One copy of each multiplet carries a single irrep.
  CHECK(spin_irrep_characters(3, SpinValue{1}) == t3.chars[t3.irrep_index("E")]);
  CHECK(spin_irrep_characters(3, SpinValue{3}) == t3.chars[t3.irrep_index("A1")]);
  CHECK(spin_irrep_characters(4, SpinValue{0}) == t4.chars[t4.irrep_index("E")]);
  CHECK(spin_irrep_characters(4, SpinValue{2}) == t4.chars[t4.irrep_index("T2")]);
  CHECK(spin_irrep_characters(4, SpinValue{4}) == t4.chars[t4.irrep_index("A1")]);
}

TEST_CASE("allowed spatial irreps, character route") {
  const auto a3 = allowed_spatial_irreps(3);
  CHECK(a3.spins.at("A2") == spins({3}));
  CHECK(a3.spins.at("E") == spins({1}));
  CHECK(a3.spins.at("A1").empty());
  CHECK_FALSE(a3.allowed("A1"));
  CHECK(a3.allowed("E"));

  const auto a4 = allowed_spatial_irreps(4);
  CHECK(a4.spins.at("A2") == spins({4}));
  CHECK(a4.spins.at("T1") == spins({2}));
  CHECK(a4.spins.at("E") == spins({0}));
  CHECK(a4.spins.at("A1").empty());
  CHECK(a4.spins.at("T2").empty());
}

TEST_CASE("constructive route agrees with the character route") {
  for (int n : {3, 4}) {
    const auto m = make_model(n, 0.1);
    const auto constructive = constructive_allowed_irreps(m, n == 3 ? 3 : 6);
    CHECK(constructive.spins == allowed_spatial_irreps(n).spins);
  }
  CHECK_THROWS_AS((void)constructive_allowed_irreps(make_model(3, 0.1), 2), DomainError);
}

TEST_CASE("antisymmetrized space-spin products") {
  const auto m = make_model(3, 0.1);
  const auto t = character_table(3);

  // A1 content is annihilated for every spin product.
  const auto ground = make_level(m, 0, 0);
  for (std::size_t s = 0; s < 8; ++s) {
    CHECK_FALSE(antisymmetrize_space_spin(m, ground, t.irrep("A1"), SpinProduct::from_index(3, s)).nonzero);
  }
  const auto level1 = make_level(m, 1, 0);
  const auto doublet = antisymmetrize_space_spin(m, level1, t.irrep("E"), SpinProduct::parse("aab"));
  REQUIRE(doublet.nonzero);
  CHECK(doublet.spin_squared == doctest::Approx(0.75));
  CHECK_FALSE(doublet.determinants.empty());
  // All-alpha spin is symmetric, so E in space cannot be antisymmetrized with it.
  CHECK_FALSE(antisymmetrize_space_spin(m, level1, t.irrep("E"), SpinProduct::parse("aaa")).nonzero);

  const auto level3 = make_level(m, 3, 0);
  // Seed psi_30: the A2 combination lives on psi_30 and psi_12 only.
  const auto quartet = antisymmetrize_space_spin(m, level3, t.irrep("A2"), SpinProduct::parse("aaa"), 3);
  REQUIRE(quartet.nonzero);
  CHECK(quartet.spin_squared == doctest::Approx(3.75));
  for (const auto& d : quartet.determinants) {
    int power = 0;
    for (const auto& o : d.orbitals) power += o.power;
    CHECK(power % 2 == 1);
    CHECK(power <= 3);
  }
  CHECK_THROWS_AS((void)antisymmetrize_space_spin(m, level1, t.irrep("E"), SpinProduct::parse("aa")), SizeMismatchError);
}

TEST_CASE("determinant expansion represents the antisymmetrized function") {
  const auto m = make_model(3, 0.1);
  const auto t = character_table(3);
  const auto level = make_level(m, 2, 1);
  const auto f = antisymmetrize_space_spin(m, level, t.irrep("E"), SpinProduct::parse("abb"), 1);
  REQUIRE(f.nonzero);

  const auto basis = level_basis(2, level.n_sym);
  std::vector<HermiteGaussian> psis;
  for (const auto& b : basis) psis.push_back(eigenfunction(m, {{b[0], b[1], level.n_last}}));
  const auto gaussian = eigenfunction(m, {{0, 0, 0}});

  std::mt19937 rng(5);
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  std::optional<double> ratio;
  for (int trial = 0; trial < 6; ++trial) {
    const std::vector<double> x = {coord(rng), coord(rng), coord(rng)};
    for (std::size_t s = 0; s < 8; ++s) {
      const auto sigma = SpinProduct::from_index(3, s);
      double from_components = 0.0;
      for (std::size_t a = 0; a < basis.size(); ++a)
        from_components += f.components(static_cast<Eigen::Index>(a * 8 + s)) * evaluate(m, psis[a], x);
      double from_dets = 0.0;
      for (const auto& d : f.determinants) {
        Eigen::Matrix3d mat;
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            mat(i, j) = sigma.labels[static_cast<std::size_t>(i)] == d.orbitals[static_cast<std::size_t>(j)].spin
                            ? std::pow(x[static_cast<std::size_t>(i)], d.orbitals[static_cast<std::size_t>(j)].power)
                            : 0.0;
        from_dets += d.coefficient * mat.determinant();
      }
      from_dets *= evaluate(m, gaussian, x);
      if (std::abs(from_components) < 1e-6) continue;
      if (!ratio) ratio = from_dets / from_components;
      CHECK(from_dets / from_components == doctest::Approx(*ratio).epsilon(1e-8));
    }
  }
  CHECK(ratio.has_value());
}
