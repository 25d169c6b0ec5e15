#pragma once

// Permutations of N labels, conjugacy classes of S_N, and the character
// tables of S_3 (as C3v) and S_4 (as O) with their projection operators.
//
// Composition convention: compose(p, q) is "apply q, then p", so
// compose(p, q)(i) == p(q(i)). Every other module relies on this.

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "permsym/errors.hpp"

namespace permsym {

using Rational = boost::rational<std::int64_t>;

/// A bijection of {1..N}; images()[i-1] is the image of label i.
class Permutation {
 public:
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int n);
  /// The transposition exchanging labels i and j (1-based).
  static Permutation transposition(int n, int i, int j);

  [[nodiscard]] int size() const noexcept { return static_cast<int>(images_.size()); }
  [[nodiscard]] int operator()(int label) const { return images_[static_cast<std::size_t>(label - 1)]; }
  [[nodiscard]] const std::vector<int>& images() const noexcept { return images_; }
  [[nodiscard]] bool is_identity() const noexcept;
  [[nodiscard]] std::string to_string() const;

  auto operator<=>(const Permutation&) const = default;

 private:
  std::vector<int> images_;
};

/// Apply q, then p.
[[nodiscard]] Permutation compose(const Permutation& p, const Permutation& q);
[[nodiscard]] Permutation inverse(const Permutation& p);
/// +1 for even, -1 for odd permutations.
[[nodiscard]] int parity(const Permutation& p);

/// Moves the entry at position i of `labels` to position p(i).
/// permute_positions(compose(p, q), l) == permute_positions(p, permute_positions(q, l)).
template <typename T>
[[nodiscard]] std::vector<T> permute_positions(const Permutation& p, std::span<const T> labels);

/// All N! permutations in lexicographic order of their image lists.
[[nodiscard]] std::vector<Permutation> all_permutations(int n);

struct CycleType {
  std::vector<int> parts;  // weakly decreasing, sums to N

  [[nodiscard]] int n() const noexcept;
  /// N! / prod(m_i! * i^m_i)
  [[nodiscard]] std::int64_t class_size() const;
  /// lcm of the cycle lengths
  [[nodiscard]] int element_order() const;
  [[nodiscard]] std::string to_string() const;

  auto operator<=>(const CycleType&) const = default;
};

[[nodiscard]] CycleType cycle_type(const Permutation& p);
/// A canonical element of the class: consecutive labels grouped into cycles.
[[nodiscard]] Permutation class_representative(const CycleType& type);

struct ConjugacyClass {
  CycleType type;
  std::int64_t size = 0;
  int order = 0;

  bool operator==(const ConjugacyClass&) const = default;
};

/// Classes of S_N ordered by ascending lexicographic order of their
/// partitions, so the identity class [1,...,1] is always first.
[[nodiscard]] std::vector<ConjugacyClass> conjugacy_classes(int n);

struct IrrepId {
  std::string label;
  int dimension = 0;

  auto operator<=>(const IrrepId&) const = default;
};

struct CharacterTable {
  int n = 0;
  std::string group_name;
  std::vector<ConjugacyClass> classes;
  /// Point-group name of each class (display only).
  std::vector<std::string> class_aliases;
  std::vector<IrrepId> irreps;
  /// chars[irrep][class]
  std::vector<std::vector<int>> chars;

  [[nodiscard]] std::int64_t group_order() const;
  [[nodiscard]] std::size_t irrep_index(const std::string& label) const;
  [[nodiscard]] const IrrepId& irrep(const std::string& label) const;
  [[nodiscard]] std::size_t class_index(const CycleType& type) const;
  [[nodiscard]] int character(std::size_t irrep, const Permutation& p) const;
};

/// Literal tables for N = 3 (C3v labels) and N = 4 (O labels). The N = 2
/// table is also available for the sign-irrep machinery.
[[nodiscard]] CharacterTable character_table(int n);

struct TableViolation {
  enum class Kind { Shape, OrderSum, RowOrthogonality, ColumnOrthogonality };
  Kind kind;
  std::size_t first = 0;   // irrep or class index
  std::size_t second = 0;
  std::int64_t expected = 0;
  std::int64_t actual = 0;

  [[nodiscard]] std::string describe() const;
};

/// Checks the order sum rule and both orthogonality relations in integer
/// arithmetic; returns the first violation found.
[[nodiscard]] std::optional<TableViolation> validate_table(const CharacterTable& t);

/// Coefficient of every group element in (dim/N!) * sum_g chi(g) g.
[[nodiscard]] std::map<Permutation, Rational> projector_coefficients(const CharacterTable& t,
                                                                     const IrrepId& irrep);

/// The one-dimensional irrep whose character is the parity on every class.
[[nodiscard]] IrrepId sign_irrep(const CharacterTable& t);

/// Named symmetry operations of C3v as permutations of three labels,
/// following E, C3, C3^2, sigma_v1..3.
[[nodiscard]] std::vector<std::pair<std::string, Permutation>> c3v_operations();

template <typename T>
std::vector<T> permute_positions(const Permutation& p, std::span<const T> labels) {
  if (labels.size() != static_cast<std::size_t>(p.size())) {
    throw SizeMismatchError("permute_positions: label list length differs from permutation size");
  }
  std::vector<T> out(labels.begin(), labels.end());
  for (int i = 1; i <= p.size(); ++i) {
    out[static_cast<std::size_t>(p(i) - 1)] = labels[static_cast<std::size_t>(i - 1)];
  }
  return out;
}

}  // namespace permsym
