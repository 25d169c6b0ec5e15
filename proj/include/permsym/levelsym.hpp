#pragma once

// Irrep decomposition of the exact oscillator levels and symmetry-adapted
// linear combinations (SALCs) built with character projectors.

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "permsym/oscillator.hpp"
#include "permsym/symgroup.hpp"

namespace permsym {

/// Characters and multiplicities must land within this distance of an integer.
inline constexpr double kRoundingGuard = 1e-6;

/// D(g) for every element of S_N on one level, in all_permutations order.
class LevelRepresentation {
 public:
  LevelRepresentation(const OscillatorModel& m, const LevelDescriptor& level);

  [[nodiscard]] const std::vector<Permutation>& elements() const noexcept { return elements_; }
  [[nodiscard]] const Eigen::MatrixXd& matrix(const Permutation& p) const;
  [[nodiscard]] Eigen::Index dimension() const noexcept { return dimension_; }

 private:
  std::vector<Permutation> elements_;
  std::vector<Eigen::MatrixXd> matrices_;
  Eigen::Index dimension_ = 0;
};

struct LevelCharacters {
  std::vector<CycleType> classes;
  std::vector<double> traces;

  /// Rounded trace of class c; throws NumericalIntegrityError past the guard.
  [[nodiscard]] int integer_trace(std::size_t c) const;
  [[nodiscard]] double max_rounding_error() const;
};

/// Traces of D(g) on one representative per class (conjugacy_classes order).
[[nodiscard]] LevelCharacters level_characters(const OscillatorModel& m, const LevelDescriptor& level);

/// m_G = (1/N!) sum_c |c| chi_G(c) trace(c), guarded to non-negative integers.
[[nodiscard]] std::map<std::string, int> irrep_multiplicities(const LevelCharacters& c,
                                                              const CharacterTable& t);

/// Copy of `level` with irrep_mults filled in.
[[nodiscard]] LevelDescriptor classify_level(const OscillatorModel& m, const LevelDescriptor& level);
[[nodiscard]] std::vector<LevelDescriptor> classify_levels(const OscillatorModel& m,
                                                           const std::vector<LevelDescriptor>& levels);

/// (dim/N!) sum_g chi(g) D(g) on the level basis.
[[nodiscard]] Eigen::MatrixXd character_projector(const LevelRepresentation& rep,
                                                  const CharacterTable& t, const IrrepId& irrep);

struct SalcSet {
  IrrepId irrep;
  /// Orthonormal coefficient vectors over the level basis.
  std::vector<Eigen::VectorXd> vectors;
  int copies = 0;
};

/// Projects the level basis with the character projector of `irrep` and
/// orthonormalizes the image by Gram-Schmidt over the projected basis
/// columns in basis order. The split into partners within a copy of a
/// multidimensional irrep is convention dependent; the span is not.
[[nodiscard]] SalcSet salc(const OscillatorModel& m, const LevelDescriptor& level,
                           const IrrepId& irrep);

/// ||v - Q Q^T v|| / ||v|| for the span Q of a SALC set.
[[nodiscard]] double span_residual(const SalcSet& s, const Eigen::VectorXd& v);

/// Irreps whose basis functions are eigenfunctions of every permutation:
/// exactly the one-dimensional irreps.
[[nodiscard]] std::vector<IrrepId> all_perm_eigenfunction_irreps(const CharacterTable& t);

}  // namespace permsym
