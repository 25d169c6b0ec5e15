#include "permsym/symgroup.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

namespace permsym {

namespace {

std::int64_t factorial(int n) {
  std::int64_t f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void partitions_into(int remaining, int max_part, std::vector<int>& prefix,
                     std::vector<CycleType>& out) {
  if (remaining == 0) {
    out.push_back(CycleType{prefix});
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    prefix.push_back(part);
    partitions_into(remaining - part, part, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  const int n = size();
  if (n < 1) throw DomainError("Permutation: empty image list");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int img : images_) {
    if (img < 1 || img > n || seen[static_cast<std::size_t>(img - 1)]) {
      throw DomainError("Permutation: images must be a bijection of 1.." + std::to_string(n));
    }
    seen[static_cast<std::size_t>(img - 1)] = true;
  }
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  return Permutation(std::move(img));
}

Permutation Permutation::transposition(int n, int i, int j) {
  if (i < 1 || j < 1 || i > n || j > n || i == j) {
    throw DomainError("transposition: labels must be distinct and in 1..N");
  }
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::swap(img[static_cast<std::size_t>(i - 1)], img[static_cast<std::size_t>(j - 1)]);
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != static_cast<int>(i) + 1) return false;
  }
  return true;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (i) os << ',';
    os << images_[i];
  }
  os << ']';
  return os.str();
}

Permutation compose(const Permutation& p, const Permutation& q) {
  if (p.size() != q.size()) {
    throw SizeMismatchError("compose: permutations of " + std::to_string(p.size()) + " and " +
                            std::to_string(q.size()) + " labels");
  }
  std::vector<int> img(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) img[static_cast<std::size_t>(i - 1)] = p(q(i));
  return Permutation(std::move(img));
}

Permutation inverse(const Permutation& p) {
  std::vector<int> img(static_cast<std::size_t>(p.size()));
  for (int i = 1; i <= p.size(); ++i) img[static_cast<std::size_t>(p(i) - 1)] = i;
  return Permutation(std::move(img));
}

int parity(const Permutation& p) {
  // A cycle of length L is a product of L-1 transpositions.
  int transpositions = 0;
  for (int part : cycle_type(p).parts) transpositions += part - 1;
  return transpositions % 2 == 0 ? 1 : -1;
}

std::vector<Permutation> all_permutations(int n) {
  if (n < 1) throw DomainError("all_permutations: N must be positive");
  std::vector<int> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  std::vector<Permutation> out;
  out.reserve(static_cast<std::size_t>(factorial(n)));
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

int CycleType::n() const noexcept { return std::accumulate(parts.begin(), parts.end(), 0); }

std::int64_t CycleType::class_size() const {
  std::map<int, int> multiplicity;
  for (int part : parts) ++multiplicity[part];
  std::int64_t centralizer = 1;
  for (auto [length, count] : multiplicity) {
    centralizer *= factorial(count);
    for (int k = 0; k < count; ++k) centralizer *= length;
  }
  return factorial(n()) / centralizer;
}

int CycleType::element_order() const {
  int order = 1;
  for (int part : parts) order = std::lcm(order, part);
  return order;
}

std::string CycleType::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) os << ',';
    os << parts[i];
  }
  os << ']';
  return os.str();
}

CycleType cycle_type(const Permutation& p) {
  const int n = p.size();
  std::vector<bool> visited(static_cast<std::size_t>(n), false);
  CycleType type;
  for (int start = 1; start <= n; ++start) {
    if (visited[static_cast<std::size_t>(start - 1)]) continue;
    int length = 0;
    for (int label = start; !visited[static_cast<std::size_t>(label - 1)]; label = p(label)) {
      visited[static_cast<std::size_t>(label - 1)] = true;
      ++length;
    }
    type.parts.push_back(length);
  }
  std::sort(type.parts.begin(), type.parts.end(), std::greater<>());
  return type;
}

Permutation class_representative(const CycleType& type) {
  std::vector<int> img(static_cast<std::size_t>(type.n()));
  int first = 1;
  for (int length : type.parts) {
    for (int k = 0; k < length; ++k) {
      const int label = first + k;
      img[static_cast<std::size_t>(label - 1)] = (k + 1 < length) ? label + 1 : first;
    }
    first += length;
  }
  return Permutation(std::move(img));
}

std::vector<ConjugacyClass> conjugacy_classes(int n) {
  if (n < 2) throw DomainError("conjugacy_classes: N must be at least 2");
  std::vector<CycleType> types;
  std::vector<int> prefix;
  partitions_into(n, n, prefix, types);
  std::sort(types.begin(), types.end());
  std::vector<ConjugacyClass> classes;
  classes.reserve(types.size());
  for (auto& t : types) {
    const auto size = t.class_size();
    const auto order = t.element_order();
    classes.push_back({std::move(t), size, order});
  }
  return classes;
}

std::int64_t CharacterTable::group_order() const { return factorial(n); }

std::size_t CharacterTable::irrep_index(const std::string& label) const {
  for (std::size_t i = 0; i < irreps.size(); ++i) {
    if (irreps[i].label == label) return i;
  }
  throw DomainError("irrep '" + label + "' is not in table " + group_name);
}

const IrrepId& CharacterTable::irrep(const std::string& label) const {
  return irreps[irrep_index(label)];
}

std::size_t CharacterTable::class_index(const CycleType& type) const {
  for (std::size_t c = 0; c < classes.size(); ++c) {
    if (classes[c].type == type) return c;
  }
  throw DomainError("cycle type " + type.to_string() + " is not a class of " + group_name);
}

int CharacterTable::character(std::size_t irrep_idx, const Permutation& p) const {
  return chars.at(irrep_idx).at(class_index(cycle_type(p)));
}

CharacterTable character_table(int n) {
  CharacterTable t;
  t.n = n;
  t.classes = conjugacy_classes(n);
  switch (n) {
    case 2:
      // classes: [1,1] [2]
      t.group_name = "S2/Cs";
      t.class_aliases = {"E", "sh"};
      t.irreps = {{"A'", 1}, {"A''", 1}};
      t.chars = {{1, 1}, {1, -1}};
      break;
    case 3:
      // classes: [1,1,1] [2,1] [3]
      t.group_name = "S3/C3v";
      t.class_aliases = {"E", "3sv", "2C3"};
      t.irreps = {{"A1", 1}, {"A2", 1}, {"E", 2}};
      t.chars = {{1, 1, 1}, {1, -1, 1}, {2, 0, -1}};
      break;
    case 4:
      // classes: [1,1,1,1] [2,1,1] [2,2] [3,1] [4]
      t.group_name = "S4/O";
      t.class_aliases = {"E", "6C2'", "3C2", "8C3", "6C4"};
      t.irreps = {{"A1", 1}, {"A2", 1}, {"E", 2}, {"T1", 3}, {"T2", 3}};
      t.chars = {{1, 1, 1, 1, 1},
                 {1, -1, 1, 1, -1},
                 {2, 0, 2, -1, 0},
                 {3, -1, -1, 0, 1},
                 {3, 1, -1, 0, -1}};
      break;
    default:
      throw DomainError("character_table: only N = 2, 3, 4 are tabulated (got " +
                        std::to_string(n) + ")");
  }
  if (auto bad = validate_table(t)) {
    throw NumericalIntegrityError("built-in character table failed validation: " + bad->describe());
  }
  return t;
}

std::string TableViolation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::Shape: os << "shape"; break;
    case Kind::OrderSum: os << "order sum rule"; break;
    case Kind::RowOrthogonality: os << "row orthogonality"; break;
    case Kind::ColumnOrthogonality: os << "column orthogonality"; break;
  }
  os << " violated at (" << first << ',' << second << "): expected " << expected << ", got "
     << actual;
  return os.str();
}

std::optional<TableViolation> validate_table(const CharacterTable& t) {
  using Kind = TableViolation::Kind;
  const std::size_t n_irreps = t.irreps.size();
  const std::size_t n_classes = t.classes.size();
  if (n_irreps != n_classes || t.chars.size() != n_irreps) {
    return TableViolation{Kind::Shape, n_irreps, n_classes, 0, 0};
  }
  for (std::size_t i = 0; i < n_irreps; ++i) {
    if (t.chars[i].size() != n_classes) return TableViolation{Kind::Shape, i, 0, 0, 0};
  }
  const std::int64_t order = t.group_order();

  std::int64_t dim_sum = 0;
  for (const auto& irrep : t.irreps) dim_sum += std::int64_t{irrep.dimension} * irrep.dimension;
  if (dim_sum != order) return TableViolation{Kind::OrderSum, 0, 0, order, dim_sum};

  for (std::size_t i = 0; i < n_irreps; ++i) {
    for (std::size_t j = i; j < n_irreps; ++j) {
      std::int64_t sum = 0;
      for (std::size_t c = 0; c < n_classes; ++c) {
        sum += t.classes[c].size * t.chars[i][c] * t.chars[j][c];
      }
      const std::int64_t expected = (i == j) ? order : 0;
      if (sum != expected) return TableViolation{Kind::RowOrthogonality, i, j, expected, sum};
    }
  }
  for (std::size_t c = 0; c < n_classes; ++c) {
    for (std::size_t d = c; d < n_classes; ++d) {
      std::int64_t sum = 0;
      for (std::size_t i = 0; i < n_irreps; ++i) sum += t.chars[i][c] * t.chars[i][d];
      const std::int64_t expected = (c == d) ? order / t.classes[c].size : 0;
      if (sum != expected) return TableViolation{Kind::ColumnOrthogonality, c, d, expected, sum};
    }
  }
  return std::nullopt;
}

std::map<Permutation, Rational> projector_coefficients(const CharacterTable& t,
                                                       const IrrepId& irrep) {
  const std::size_t row = t.irrep_index(irrep.label);
  const int dim = t.irreps[row].dimension;
  std::map<Permutation, Rational> coeffs;
  for (const auto& g : all_permutations(t.n)) {
    coeffs.emplace(g, Rational(std::int64_t{dim} * t.character(row, g), t.group_order()));
  }
  return coeffs;
}

IrrepId sign_irrep(const CharacterTable& t) {
  for (std::size_t i = 0; i < t.irreps.size(); ++i) {
    if (t.irreps[i].dimension != 1) continue;
    bool matches = true;
    for (std::size_t c = 0; c < t.classes.size() && matches; ++c) {
      matches = t.chars[i][c] == parity(class_representative(t.classes[c].type));
    }
    if (matches) return t.irreps[i];
  }
  throw DomainError("table " + t.group_name + " has no sign irrep");
}

std::vector<std::pair<std::string, Permutation>> c3v_operations() {
  return {{"E", Permutation({1, 2, 3})},   {"C3", Permutation({3, 1, 2})},
          {"C3^2", Permutation({2, 3, 1})}, {"sv1", Permutation({1, 3, 2})},
          {"sv2", Permutation({3, 2, 1})},  {"sv3", Permutation({2, 1, 3})}};
}

}  // namespace permsym
