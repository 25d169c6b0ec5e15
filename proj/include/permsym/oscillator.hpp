#pragma once

// Exactly solvable coupled-oscillator models of N = 3 and N = 4 identical
// particles on a line:
//
//   H = -1/2 sum_i d^2/dx_i^2 + 1/2 sum_i x_i^2 + xi * sum_{i<j} x_i x_j
//
// An orthogonal change of variables y = U x separates H into N - 1
// degenerate modes with force constant k = 1 - xi and one totally
// symmetric breathing mode y_N with k' = 1 + (N - 1) xi.

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "permsym/polynomial.hpp"
#include "permsym/symgroup.hpp"

namespace permsym {

struct OscillatorModel {
  int n = 0;
  double xi = 0.0;
  double k = 0.0;        // degenerate modes y_1..y_{N-1}
  double k_prime = 0.0;  // breathing mode y_N
  Eigen::MatrixXd U;     // y = U x; last row is uniform

  [[nodiscard]] int degenerate_modes() const noexcept { return n - 1; }
};

/// Open interval of xi for which both force constants are positive.
[[nodiscard]] std::pair<double, double> bound_window(int n);

/// Throws UnboundModelError outside the bound window, DomainError for N not in {3, 4}.
[[nodiscard]] OscillatorModel make_model(int n, double xi);

/// Quanta (n_1, ..., n_{N-1}, n_N); the last entry belongs to the breathing mode.
struct QuantaPattern {
  std::vector<int> n;

  [[nodiscard]] int n_sym() const;
  [[nodiscard]] int n_last() const;
};

[[nodiscard]] double exact_energy(const OscillatorModel& m, const QuantaPattern& q);
/// Energy of the level with n_sym quanta in the degenerate modes and n_last in y_N.
[[nodiscard]] double level_energy(const OscillatorModel& m, int n_sym, int n_last);

/// One degenerate exact level, keyed by (n_sym, n_last).
struct LevelDescriptor {
  int n_sym = 0;
  int n_last = 0;
  double energy = 0.0;
  int degeneracy = 0;
  int parity = 1;
  /// Irrep label -> multiplicity; empty until filled by classify_levels.
  std::map<std::string, int> irrep_mults;

  bool operator==(const LevelDescriptor&) const = default;
};

[[nodiscard]] int level_degeneracy(int n, int n_sym);

/// Every (n_sym, n_last) with n_sym + n_last <= max_total_quanta, sorted by
/// energy with (n_sym, n_last) as tie-break.
[[nodiscard]] std::vector<LevelDescriptor> enumerate_levels(const OscillatorModel& m,
                                                            int max_total_quanta);

[[nodiscard]] LevelDescriptor make_level(const OscillatorModel& m, int n_sym, int n_last);

struct AccidentalDegeneracy {
  std::pair<int, int> first;   // (n_sym, n_last)
  std::pair<int, int> second;
  double energy_gap = 0.0;
};

/// Pairs of distinct levels whose energies coincide within tol. These are
/// reported, never merged.
[[nodiscard]] std::vector<AccidentalDegeneracy> accidental_degeneracies(
    std::span<const LevelDescriptor> levels, double tol = 1e-9);

/// Quanta patterns of the degenerate modes summing to n_sym, in lexicographic order.
/// This fixes the basis order of every level.
[[nodiscard]] std::vector<std::vector<int>> level_basis(int degenerate_modes, int n_sym);

/// Norm of the unnormalized Hermite product prod_i H_{n_i}(q) relative to the
/// normalized one (sqrt(prod 2^n n!)), ignoring the common Gaussian factor.
[[nodiscard]] double hermite_product_scale(std::span<const int> pattern);

/// Converts coefficients over unnormalized Hermite products prod_i H_{n_i}(q_i)
/// into coordinates over the orthonormal level basis.
[[nodiscard]] Eigen::VectorXd level_vector_from_hermite_products(
    const std::vector<std::vector<int>>& basis, const std::map<std::vector<int>, double>& raw);

/// Polynomial part of an eigenfunction. `poly` is a polynomial in the
/// unscaled normal coordinates y_1..y_{N-1}; the factor H_{n_last}(k'^{1/4} y_N)
/// and the Gaussian are common to the level and carried as metadata.
struct HermiteGaussian {
  Polynomial poly;
  int n_last = 0;
  double normalization = 1.0;
  double k = 0.0;
  double k_prime = 0.0;
};

[[nodiscard]] Polynomial hermite_in_scaled(int n, double k);
[[nodiscard]] HermiteGaussian eigenfunction(const OscillatorModel& m, const QuantaPattern& q);

/// psi(x) for the normalized eigenfunction.
[[nodiscard]] double evaluate(const OscillatorModel& m, const HermiteGaussian& f,
                              std::span<const double> x);

/// Orthogonal action of p on the degenerate normal coordinates: the
/// operator f(x) -> f(M_p^{-1} x) becomes g(y) -> g(R y) with the returned R.
[[nodiscard]] Eigen::MatrixXd normal_mode_action(const OscillatorModel& m, const Permutation& p);

/// Permutation matrix with M e_i = e_{p(i)}; M_{p∘q} = M_p M_q.
[[nodiscard]] Eigen::MatrixXd permutation_matrix(const Permutation& p);

/// Representation matrix of p on the orthonormal basis of a level.
/// D(p) D(q) = D(compose(p, q)).
[[nodiscard]] Eigen::MatrixXd permutation_action_matrix(const OscillatorModel& m,
                                                        const LevelDescriptor& level,
                                                        const Permutation& p);

/// Largest coefficient that the permuted level basis leaves outside the level
/// (lower-degree Hermite products); zero up to roundoff because H commutes with p.
[[nodiscard]] double permutation_leakage(const OscillatorModel& m, const LevelDescriptor& level,
                                         const Permutation& p);

}  // namespace permsym
