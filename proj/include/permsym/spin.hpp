#pragma once

// Spin space of N spin-1/2 particles, its S_N content, and which spatial
// irreps survive antisymmetrization of space x spin products.

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "permsym/levelsym.hpp"
#include "permsym/oscillator.hpp"
#include "permsym/symgroup.hpp"

namespace permsym {

enum class SpinLabel : std::uint8_t { alpha, beta };

/// Total spin stored as 2S so half-integers stay exact.
struct SpinValue {
  int twice = 0;

  [[nodiscard]] double value() const noexcept { return twice / 2.0; }
  [[nodiscard]] int multiplicity() const noexcept { return twice + 1; }
  /// "3/2", "1", "0", ...
  [[nodiscard]] std::string to_string() const;
  /// "singlet", "doublet", ...
  [[nodiscard]] std::string multiplet_name() const;

  auto operator<=>(const SpinValue&) const = default;
};

/// Product of one-particle spin states, particle 1 first. Basis index has
/// particle 1 as the most significant bit with alpha = 0, so for N = 2 the
/// order is (aa, ab, ba, bb).
struct SpinProduct {
  std::vector<SpinLabel> labels;

  [[nodiscard]] static SpinProduct from_index(int n, std::size_t index);
  [[nodiscard]] static SpinProduct parse(const std::string& text);  // e.g. "aab"
  [[nodiscard]] std::size_t index() const;
  [[nodiscard]] int twice_ms() const;
  [[nodiscard]] std::string to_string() const;
};

/// Matrix of the operator that carries the spin of particle i to particle p(i).
[[nodiscard]] Eigen::MatrixXd spin_permutation_matrix(int n, const Permutation& p);

/// S^2 = sum_ij s_i . s_j on the 2^N product space.
[[nodiscard]] Eigen::MatrixXd total_spin_squared(int n);
/// Diagonal of 2 S_z on the product space.
[[nodiscard]] Eigen::VectorXi twice_sz_diagonal(int n);

/// Rounds an S(S+1) eigenvalue to 2S, guarded.
[[nodiscard]] SpinValue spin_from_s_squared(double s_squared, double tol = kRoundingGuard);

struct MultipletTable {
  std::map<SpinValue, int> counts;

  [[nodiscard]] int dimension() const;
};

/// Diagonalizes S^2 and counts eigenspace dimensions / (2S + 1).
[[nodiscard]] MultipletTable multiplet_table(int n);

/// S_N content of the whole 2^N spin space.
[[nodiscard]] std::map<std::string, int> spin_irrep_multiplicities(int n, const CharacterTable& t);

/// Characters of S_N on one copy of the spin-S multiplet space (the M_s = S
/// highest-weight vectors), one per class.
[[nodiscard]] std::vector<int> spin_irrep_characters(int n, SpinValue s);

/// Spatial irrep label -> total spins it pairs with; an empty list means forbidden.
struct AllowedIrrepMap {
  std::map<std::string, std::vector<SpinValue>> spins;

  [[nodiscard]] bool allowed(const std::string& label) const;
};

/// Character route: G is allowed with spin S when the sign irrep occurs in
/// G x Sigma_S, Sigma_S being the S_N irrep carried by the spin-S multiplets.
[[nodiscard]] AllowedIrrepMap allowed_spatial_irreps(int n);

/// Spin-orbital made of the monomial x^power and a spin label.
struct MonomialSpinOrbital {
  int power = 0;
  SpinLabel spin = SpinLabel::alpha;

  auto operator<=>(const MonomialSpinOrbital&) const = default;
};

/// Coefficient of det[chi_j(particle i)] over canonically ordered spin-orbitals.
struct DeterminantTerm {
  std::vector<MonomialSpinOrbital> orbitals;
  double coefficient = 0.0;
};

struct AntisymmetrizedFunction {
  bool nonzero = false;
  double norm = 0.0;
  /// Coordinates over (level basis) x (spin products), spin index fastest.
  Eigen::VectorXd components;
  /// <S^2> of the normalized result; meaningful when nonzero.
  double spin_squared = 0.0;
  /// Expansion in determinants of monomial spin-orbitals. The symmetric
  /// Gaussian common to the level is omitted.
  std::vector<DeterminantTerm> determinants;
};

/// Antisymmetrizes (P_irrep e_seed) x spin_pattern under simultaneous
/// permutation of space and spin labels. A zero result is a valid answer.
[[nodiscard]] AntisymmetrizedFunction antisymmetrize_space_spin(const OscillatorModel& m,
                                                                const LevelDescriptor& level,
                                                                const IrrepId& irrep,
                                                                const SpinProduct& pattern,
                                                                std::size_t seed = 0);

/// Same, reusing a precomputed level representation and projector. The
/// determinant expansion is skipped unless `expand` is set.
[[nodiscard]] AntisymmetrizedFunction antisymmetrize_space_spin(const OscillatorModel& m,
                                                                const LevelDescriptor& level,
                                                                const LevelRepresentation& rep,
                                                                const Eigen::MatrixXd& projector,
                                                                const SpinProduct& pattern,
                                                                std::size_t seed, bool expand);

inline constexpr double kZeroThreshold = 1e-8;

/// Constructive route: for every irrep, run every seed of every level with
/// n_last = 0 and n_sym <= max_n_sym that contains it against every spin
/// product; record S of each nonzero result. Throws DomainError when some
/// irrep occurs in none of those levels.
[[nodiscard]] AllowedIrrepMap constructive_allowed_irreps(const OscillatorModel& m, int max_n_sym);

}  // namespace permsym
