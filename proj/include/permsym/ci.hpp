#pragma once

// Full configuration interaction for the coupled-oscillator models in a basis
// of Slater determinants built from the eigenfunctions phi_n of the uncoupled
// unit-frequency oscillator, times alpha/beta spin.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "permsym/levelsym.hpp"
#include "permsym/oscillator.hpp"
#include "permsym/spin.hpp"

namespace permsym {

/// phi_orbital times a spin label. Spin-orbital index = 2 * orbital + (beta ? 1 : 0),
/// so canonical order is by orbital, then alpha before beta.
struct SpinOrbital {
  int orbital = 0;
  SpinLabel spin = SpinLabel::alpha;

  [[nodiscard]] int index() const noexcept { return 2 * orbital + (spin == SpinLabel::beta ? 1 : 0); }
  [[nodiscard]] static SpinOrbital from_index(int index);

  auto operator<=>(const SpinOrbital&) const = default;
};

class SlaterDeterminant {
 public:
  /// `occupied` must be strictly increasing spin-orbital indices.
  explicit SlaterDeterminant(std::vector<int> occupied);

  /// Sorts an arbitrary ordering of distinct spin-orbitals and returns the
  /// sign of the sorting permutation. Throws DomainError on a repeated
  /// spin-orbital (the product vanishes).
  [[nodiscard]] static std::pair<SlaterDeterminant, int> canonicalize(std::vector<int> spin_orbitals);

  [[nodiscard]] const std::vector<int>& occupied() const noexcept { return occupied_; }
  [[nodiscard]] int size() const noexcept { return static_cast<int>(occupied_.size()); }
  [[nodiscard]] std::uint64_t bits() const noexcept { return bits_; }
  [[nodiscard]] int twice_ms() const;
  /// Sum of occupied orbital quanta.
  [[nodiscard]] int total_quanta() const;
  [[nodiscard]] int parity() const { return total_quanta() % 2 == 0 ? 1 : -1; }
  /// e.g. "|0a 0b 1a>"
  [[nodiscard]] std::string to_string() const;

  bool operator==(const SlaterDeterminant& other) const { return bits_ == other.bits_; }
  auto operator<=>(const SlaterDeterminant& other) const { return occupied_ <=> other.occupied_; }

 private:
  std::vector<int> occupied_;
  std::uint64_t bits_ = 0;
};

/// <phi_a | x | phi_b> for the unit-frequency oscillator.
[[nodiscard]] double x_matrix_element(int a, int b);
/// a + 1/2: the one-body operator is diagonal in the orbital basis.
[[nodiscard]] double core_energy(int a);

/// All C(2M, N) determinants over M orbitals, optionally restricted to
/// 2 M_s = twice_ms, in lexicographic order of occupied indices.
[[nodiscard]] std::vector<SlaterDeterminant> build_basis(int n, int n_orbitals,
                                                         std::optional<int> twice_ms = std::nullopt);

/// Slater-Condon matrix element <bra|H|ket> of the model Hamiltonian.
[[nodiscard]] double hamiltonian_element(const SlaterDeterminant& bra, const SlaterDeterminant& ket,
                                         const OscillatorModel& m);

/// Dense H over `basis`, assembled from the upper triangle so it is exactly symmetric.
[[nodiscard]] Eigen::MatrixXd hamiltonian_matrix(const std::vector<SlaterDeterminant>& basis,
                                                 const OscillatorModel& m);

/// <bra|S^2|ket> for N-electron determinants.
[[nodiscard]] Eigen::MatrixXd spin_squared_matrix(const std::vector<SlaterDeterminant>& basis);

struct CIState {
  double energy = 0.0;
  double s_squared = 0.0;
  SpinValue spin;
  int twice_ms = 0;
  int parity = 1;
};

struct CIResult {
  int n = 0;
  int n_orbitals = 0;
  std::vector<SlaterDeterminant> basis;
  /// Ascending.
  Eigen::VectorXd eigenvalues;
  /// Column j is the eigenvector of eigenvalues(j) over `basis`.
  Eigen::MatrixXd eigenvectors;
  std::vector<CIState> states;
};

/// Solves H within each (M_s, parity) block; H conserves both. Inside a
/// block, eigenvectors of (near-)degenerate clusters are rotated to
/// diagonalize S^2 and then fixed by Gram-Schmidt over the canonical basis
/// order, so the output does not depend on the eigensolver's choice.
[[nodiscard]] CIResult ci_solve(const OscillatorModel& m, const std::vector<SlaterDeterminant>& basis);

/// Eigenvalues of H on the full M^N product basis of spatial orbitals,
/// without antisymmetrization; contains every S_N species including the
/// ones CI never reaches. Capped at M <= 8 for N = 3 and M <= 6 for N = 4.
struct ProductLevel {
  double energy = 0.0;
  int degeneracy = 0;
};
[[nodiscard]] Eigen::VectorXd product_basis_eigenvalues(const OscillatorModel& m, int n_orbitals);
[[nodiscard]] std::vector<ProductLevel> product_basis_oracle(const OscillatorModel& m, int n_orbitals,
                                                             double group_tol = 1e-7);

}  // namespace permsym
