#include "permsym/levelsym.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "permsym/errors.hpp"

namespace permsym {

LevelRepresentation::LevelRepresentation(const OscillatorModel& m, const LevelDescriptor& level)
    : elements_(all_permutations(m.n)), dimension_(level_degeneracy(m.n, level.n_sym)) {
  matrices_.reserve(elements_.size());
  for (const auto& p : elements_) matrices_.push_back(permutation_action_matrix(m, level, p));
}

const Eigen::MatrixXd& LevelRepresentation::matrix(const Permutation& p) const {
  auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
  if (it == elements_.end() || *it != p) throw DomainError("permutation is not in the group");
  return matrices_[static_cast<std::size_t>(it - elements_.begin())];
}

int LevelCharacters::integer_trace(std::size_t c) const {
  const double t = traces.at(c);
  const double r = std::round(t);
  if (std::abs(t - r) >= kRoundingGuard) {
    std::ostringstream os;
    os << "character " << t << " on class " << classes.at(c).to_string()
       << " is not an integer within " << kRoundingGuard;
    throw NumericalIntegrityError(os.str());
  }
  return static_cast<int>(r);
}

double LevelCharacters::max_rounding_error() const {
  double worst = 0.0;
  for (double t : traces) worst = std::max(worst, std::abs(t - std::round(t)));
  return worst;
}

LevelCharacters level_characters(const OscillatorModel& m, const LevelDescriptor& level) {
  LevelCharacters out;
  for (const auto& cls : conjugacy_classes(m.n)) {
    out.classes.push_back(cls.type);
    out.traces.push_back(permutation_action_matrix(m, level, class_representative(cls.type)).trace());
  }
  for (std::size_t c = 0; c < out.traces.size(); ++c) (void)out.integer_trace(c);
  return out;
}

std::map<std::string, int> irrep_multiplicities(const LevelCharacters& c, const CharacterTable& t) {
  if (c.classes.size() != t.classes.size()) {
    throw SizeMismatchError("level characters and character table have different class counts");
  }
  std::vector<std::size_t> column(c.classes.size());
  for (std::size_t i = 0; i < c.classes.size(); ++i) column[i] = t.class_index(c.classes[i]);

  std::map<std::string, int> mults;
  for (std::size_t g = 0; g < t.irreps.size(); ++g) {
    double sum = 0.0;
    for (std::size_t i = 0; i < c.classes.size(); ++i) {
      const auto col = column[i];
      sum += static_cast<double>(t.classes[col].size) * t.chars[g][col] * c.traces[i];
    }
    const double mult = sum / static_cast<double>(t.group_order());
    const double rounded = std::round(mult);
    if (std::abs(mult - rounded) >= kRoundingGuard || rounded < 0) {
      std::ostringstream os;
      os << "multiplicity of " << t.irreps[g].label << " is " << mult
         << ", not a non-negative integer";
      throw NumericalIntegrityError(os.str());
    }
    mults[t.irreps[g].label] = static_cast<int>(rounded);
  }
  return mults;
}

LevelDescriptor classify_level(const OscillatorModel& m, const LevelDescriptor& level) {
  const auto table = character_table(m.n);
  LevelDescriptor out = level;
  out.irrep_mults = irrep_multiplicities(level_characters(m, level), table);
  int dim_sum = 0;
  for (const auto& [label, count] : out.irrep_mults) dim_sum += count * table.irrep(label).dimension;
  if (dim_sum != level.degeneracy) {
    throw NumericalIntegrityError("irrep dimensions do not add up to the level degeneracy");
  }
  return out;
}

std::vector<LevelDescriptor> classify_levels(const OscillatorModel& m,
                                             const std::vector<LevelDescriptor>& levels) {
  std::vector<LevelDescriptor> out;
  out.reserve(levels.size());
  // The decomposition depends on n_sym only; reuse it across n_last.
  std::map<int, std::map<std::string, int>> by_nsym;
  for (const auto& level : levels) {
    auto it = by_nsym.find(level.n_sym);
    if (it == by_nsym.end()) it = by_nsym.emplace(level.n_sym, classify_level(m, level).irrep_mults).first;
    out.push_back(level);
    out.back().irrep_mults = it->second;
  }
  return out;
}

Eigen::MatrixXd character_projector(const LevelRepresentation& rep, const CharacterTable& t,
                                    const IrrepId& irrep) {
  const std::size_t row = t.irrep_index(irrep.label);
  Eigen::MatrixXd proj = Eigen::MatrixXd::Zero(rep.dimension(), rep.dimension());
  for (const auto& g : rep.elements()) {
    const int chi = t.character(row, g);
    if (chi != 0) proj += chi * rep.matrix(g);
  }
  proj *= static_cast<double>(t.irreps[row].dimension) / static_cast<double>(t.group_order());
  return proj;
}

SalcSet salc(const OscillatorModel& m, const LevelDescriptor& level, const IrrepId& irrep) {
  const auto table = character_table(m.n);
  const IrrepId& id = table.irrep(irrep.label);
  SalcSet out{id, {}, 0};

  const auto mults = irrep_multiplicities(level_characters(m, level), table);
  const int copies = mults.at(id.label);
  if (copies == 0) return out;

  const LevelRepresentation rep(m, level);
  const Eigen::MatrixXd proj = character_projector(rep, table, id);
  for (Eigen::Index col = 0; col < proj.cols(); ++col) {
    Eigen::VectorXd v = proj.col(col);
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& q : out.vectors) v -= q.dot(v) * q;
    }
    const double norm = v.norm();
    if (norm > 1e-7) out.vectors.push_back(v / norm);
  }
  out.copies = copies;
  const auto expected = static_cast<std::size_t>(copies * id.dimension);
  if (out.vectors.size() != expected) {
    std::ostringstream os;
    os << "projected space of " << id.label << " has rank " << out.vectors.size()
       << ", expected " << expected;
    throw NumericalIntegrityError(os.str());
  }
  return out;
}

double span_residual(const SalcSet& s, const Eigen::VectorXd& v) {
  Eigen::VectorXd r = v;
  for (const auto& q : s.vectors) r -= q.dot(v) * q;
  return r.norm() / v.norm();
}

std::vector<IrrepId> all_perm_eigenfunction_irreps(const CharacterTable& t) {
  std::vector<IrrepId> out;
  std::copy_if(t.irreps.begin(), t.irreps.end(), std::back_inserter(out),
               [](const IrrepId& g) { return g.dimension == 1; });
  return out;
}

}  // namespace permsym
