#pragma once

// Matching of CI eigenvalues against the exact spectrum: which exact levels
// the antisymmetric calculation reaches, and which it never does.

#include <map>
#include <string>
#include <vector>

#include "permsym/ci.hpp"
#include "permsym/oscillator.hpp"
#include "permsym/spin.hpp"

namespace permsym {

/// Matching tolerances calibrated against the closed-form spectrum.
inline constexpr double kDefaultTolN3 = 1e-4;  // N = 3, M = 10
inline constexpr double kDefaultTolN4 = 5e-3;  // N = 4, M = 8

[[nodiscard]] double default_tolerance(int n);

struct MatchedState {
  std::size_t ci_index = 0;
  double ci_energy = 0.0;
  double exact_energy = 0.0;
  int n_sym = 0;
  int n_last = 0;
  SpinValue spin;
  int twice_ms = 0;
  int parity = 1;

  bool operator==(const MatchedState&) const = default;
};

struct MissingLevel {
  int n_sym = 0;
  int n_last = 0;
  double energy = 0.0;
  std::map<std::string, int> irrep_mults;
  /// Every irrep present at this level is forbidden by antisymmetry.
  bool forbidden_only = false;

  bool operator==(const MissingLevel&) const = default;
};

struct SpuriousState {
  std::size_t ci_index = 0;
  double energy = 0.0;
  SpinValue spin;
  int twice_ms = 0;
  int parity = 1;

  bool operator==(const SpuriousState&) const = default;
};

struct ComparisonReport {
  std::vector<MatchedState> matched;
  std::vector<MissingLevel> missing;
  std::vector<SpuriousState> spurious;
  double tolerance = 0.0;
  /// Only CI states and exact levels below this energy are classified.
  double horizon = 0.0;
  /// CI states at or above the horizon, left unclassified.
  std::size_t unclassified = 0;
  /// The tolerance cannot tell neighbouring exact levels apart.
  bool vacuous = false;

  /// No spurious states and every missing level is forbidden.
  [[nodiscard]] bool verified() const;

  bool operator==(const ComparisonReport&) const = default;
};

/// Energy below which the fine CI is converged to `tol`: the lowest fine
/// eigenvalue whose counterpart (same index in the same (M_s, parity) block)
/// in a smaller-basis run lies more than `tol` above it. Nested bases make
/// coarse eigenvalues upper bounds of the fine ones index by index.
[[nodiscard]] double convergence_horizon(const CIResult& fine, const CIResult& coarse, double tol);

/// Lowest energy not covered by levels enumerated up to max_total_quanta.
[[nodiscard]] double enumeration_horizon(const OscillatorModel& m, int max_total_quanta);

/// Greedy matching of every CI state below the horizon to the closest exact
/// level within `tol` that has the same parity and holds an irrep allowed
/// with the state's spin. `exact` must carry irrep multiplicities. The
/// horizon used is min(horizon, enumeration horizon of `exact`).
[[nodiscard]] ComparisonReport compare(const OscillatorModel& m, const CIResult& ci,
                                       const std::vector<LevelDescriptor>& exact,
                                       const AllowedIrrepMap& allowed, double tol, double horizon);

}  // namespace permsym
