#include "permsym/spin.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "permsym/errors.hpp"

namespace permsym {

namespace {

std::size_t spin_dimension(int n) {
  if (n < 1 || n > 20) throw DomainError("spin space: N must be in 1..20");
  return std::size_t{1} << n;
}

// Sign of the permutation sorting `orbitals`; 0 when two entries coincide.
int canonical_sort(std::vector<MonomialSpinOrbital>& orbitals) {
  int sign = 1;
  for (std::size_t i = 1; i < orbitals.size(); ++i) {
    for (std::size_t j = i; j > 0 && orbitals[j] < orbitals[j - 1]; --j) {
      std::swap(orbitals[j], orbitals[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < orbitals.size(); ++i) {
    if (orbitals[i] == orbitals[i - 1]) return 0;
  }
  return sign;
}

std::vector<DeterminantTerm> expand_in_determinants(const OscillatorModel& m,
                                                    const LevelDescriptor& level,
                                                    const Eigen::VectorXd& spatial,
                                                    const SpinProduct& pattern) {
  const int modes = m.degenerate_modes();
  const auto basis = level_basis(modes, level.n_sym);

  Polynomial in_q(modes);
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const double c = spatial(static_cast<Eigen::Index>(b));
    if (c != 0.0) in_q += hermite_product(basis[b]) * (c / hermite_product_scale(basis[b]));
  }
  const Eigen::MatrixXd to_q = std::pow(m.k, 0.25) * m.U.topRows(modes);
  Polynomial in_x = in_q.substitute(to_q);
  const Eigen::MatrixXd to_last = std::pow(m.k_prime, 0.25) * m.U.bottomRows(1);
  in_x = in_x * hermite_poly(level.n_last).substitute(to_last);

  double scale = 0.0;
  for (const auto& [e, c] : in_x.terms()) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) return {};

  std::map<std::vector<MonomialSpinOrbital>, double> dets;
  for (const auto& [e, c] : in_x.terms()) {
    if (std::abs(c) <= 1e-13 * scale) continue;
    std::vector<MonomialSpinOrbital> orbitals(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) orbitals[i] = {e[i], pattern.labels[i]};
    const int sign = canonical_sort(orbitals);
    if (sign != 0) dets[orbitals] += sign * c;
  }

  std::vector<DeterminantTerm> out;
  for (auto& [orbitals, c] : dets) {
    if (std::abs(c) > 1e-9 * scale) out.push_back({orbitals, c});
  }
  return out;
}

}  // namespace

std::string SpinValue::to_string() const {
  if (twice % 2 == 0) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

std::string SpinValue::multiplet_name() const {
  static const char* names[] = {"singlet", "doublet", "triplet", "quadruplet", "quintuplet",
                                "sextuplet", "septuplet"};
  if (twice >= 0 && twice < 7) return names[twice];
  return std::to_string(multiplicity()) + "-plet";
}

SpinProduct SpinProduct::from_index(int n, std::size_t index) {
  if (index >= spin_dimension(n)) throw DomainError("spin product index out of range");
  SpinProduct s;
  s.labels.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const bool beta = (index >> (n - 1 - i)) & 1U;
    s.labels[static_cast<std::size_t>(i)] = beta ? SpinLabel::beta : SpinLabel::alpha;
  }
  return s;
}

SpinProduct SpinProduct::parse(const std::string& text) {
  SpinProduct s;
  for (char ch : text) {
    if (ch == 'a' || ch == 'A') {
      s.labels.push_back(SpinLabel::alpha);
    } else if (ch == 'b' || ch == 'B') {
      s.labels.push_back(SpinLabel::beta);
    } else {
      throw DomainError("spin pattern '" + text + "' must contain only 'a' and 'b'");
    }
  }
  if (s.labels.empty()) throw DomainError("empty spin pattern");
  return s;
}

std::size_t SpinProduct::index() const {
  std::size_t idx = 0;
  for (auto label : labels) idx = (idx << 1) | (label == SpinLabel::beta ? 1U : 0U);
  return idx;
}

int SpinProduct::twice_ms() const {
  int ms = 0;
  for (auto label : labels) ms += label == SpinLabel::alpha ? 1 : -1;
  return ms;
}

std::string SpinProduct::to_string() const {
  std::string out;
  for (auto label : labels) out += label == SpinLabel::alpha ? 'a' : 'b';
  return out;
}

Eigen::MatrixXd spin_permutation_matrix(int n, const Permutation& p) {
  if (p.size() != n) throw SizeMismatchError("spin_permutation_matrix: permutation size differs from N");
  const auto dim = spin_dimension(n);
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto source = SpinProduct::from_index(n, idx);
    const SpinProduct target{permute_positions(p, std::span<const SpinLabel>(source.labels))};
    mat(static_cast<Eigen::Index>(target.index()), static_cast<Eigen::Index>(idx)) = 1.0;
  }
  return mat;
}

Eigen::MatrixXd total_spin_squared(int n) {
  // S^2 = 3N/4 + sum_{i<j} (2 sz_i sz_j + exchange_ij when the spins differ)
  const auto dim = spin_dimension(n);
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    const auto state = SpinProduct::from_index(n, idx);
    double diag = 0.75 * n;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const auto si = state.labels[static_cast<std::size_t>(i)];
        const auto sj = state.labels[static_cast<std::size_t>(j)];
        diag += si == sj ? 0.5 : -0.5;
        if (si != sj) {
          auto flipped = state;
          std::swap(flipped.labels[static_cast<std::size_t>(i)], flipped.labels[static_cast<std::size_t>(j)]);
          s2(static_cast<Eigen::Index>(flipped.index()), static_cast<Eigen::Index>(idx)) += 1.0;
        }
      }
    }
    s2(static_cast<Eigen::Index>(idx), static_cast<Eigen::Index>(idx)) += diag;
  }
  return s2;
}

Eigen::VectorXi twice_sz_diagonal(int n) {
  const auto dim = spin_dimension(n);
  Eigen::VectorXi sz(static_cast<Eigen::Index>(dim));
  for (std::size_t idx = 0; idx < dim; ++idx) {
    sz(static_cast<Eigen::Index>(idx)) = SpinProduct::from_index(n, idx).twice_ms();
  }
  return sz;
}

SpinValue spin_from_s_squared(double s_squared, double tol) {
  // S(S+1) = v  =>  2S = sqrt(4v + 1) - 1
  const double twice = std::sqrt(std::max(0.0, 4.0 * s_squared + 1.0)) - 1.0;
  const double rounded = std::round(twice);
  const double back = rounded / 2.0 * (rounded / 2.0 + 1.0);
  if (std::abs(back - s_squared) >= tol) {
    std::ostringstream os;
    os << "<S^2> = " << s_squared << " is not of the form S(S+1)";
    throw NumericalIntegrityError(os.str());
  }
  return SpinValue{static_cast<int>(rounded)};
}

int MultipletTable::dimension() const {
  int dim = 0;
  for (const auto& [s, count] : counts) dim += count * s.multiplicity();
  return dim;
}

MultipletTable multiplet_table(int n) {
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(total_spin_squared(n));
  std::map<SpinValue, int> eigenspace_dims;
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    ++eigenspace_dims[spin_from_s_squared(solver.eigenvalues()(i))];
  }
  MultipletTable table;
  for (const auto& [s, dim] : eigenspace_dims) {
    if (dim % s.multiplicity() != 0) {
      throw NumericalIntegrityError("S = " + s.to_string() + " eigenspace of dimension " +
                                    std::to_string(dim) + " is not a whole number of multiplets");
    }
    table.counts[s] = dim / s.multiplicity();
  }
  return table;
}

std::map<std::string, int> spin_irrep_multiplicities(int n, const CharacterTable& t) {
  if (t.n != n) throw SizeMismatchError("character table does not match N");
  std::map<std::string, int> mults;
  for (std::size_t g = 0; g < t.irreps.size(); ++g) {
    double sum = 0.0;
    for (std::size_t c = 0; c < t.classes.size(); ++c) {
      const double trace = spin_permutation_matrix(n, class_representative(t.classes[c].type)).trace();
      sum += static_cast<double>(t.classes[c].size) * t.chars[g][c] * trace;
    }
    const double mult = sum / static_cast<double>(t.group_order());
    if (std::abs(mult - std::round(mult)) >= kRoundingGuard) {
      throw NumericalIntegrityError("spin multiplicity of " + t.irreps[g].label + " is not an integer");
    }
    mults[t.irreps[g].label] = static_cast<int>(std::round(mult));
  }
  return mults;
}

std::vector<int> spin_irrep_characters(int n, SpinValue s) {
  // Restrict to M_s = S, project on the S(S+1) eigenspace of S^2 there.
  const auto sz = twice_sz_diagonal(n);
  std::vector<Eigen::Index> block;
  for (Eigen::Index i = 0; i < sz.size(); ++i) {
    if (sz(i) == s.twice) block.push_back(i);
  }
  if (block.empty()) throw DomainError("no spin products with M_s = " + s.to_string());
  const auto b = static_cast<Eigen::Index>(block.size());
  const Eigen::MatrixXd s2_full = total_spin_squared(n);
  Eigen::MatrixXd s2(b, b);
  for (Eigen::Index i = 0; i < b; ++i) {
    for (Eigen::Index j = 0; j < b; ++j) s2(i, j) = s2_full(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s2);
  const double target = s.value() * (s.value() + 1.0);
  Eigen::MatrixXd projector = Eigen::MatrixXd::Zero(b, b);
  for (Eigen::Index k = 0; k < b; ++k) {
    if (std::abs(solver.eigenvalues()(k) - target) < kRoundingGuard) {
      projector += solver.eigenvectors().col(k) * solver.eigenvectors().col(k).transpose();
    }
  }

  std::vector<int> chars;
  for (const auto& cls : conjugacy_classes(n)) {
    const Eigen::MatrixXd full = spin_permutation_matrix(n, class_representative(cls.type));
    Eigen::MatrixXd restricted(b, b);
    for (Eigen::Index i = 0; i < b; ++i) {
      for (Eigen::Index j = 0; j < b; ++j) restricted(i, j) = full(block[static_cast<std::size_t>(i)], block[static_cast<std::size_t>(j)]);
    }
    const double trace = (restricted * projector).trace();
    if (std::abs(trace - std::round(trace)) >= kRoundingGuard) {
      throw NumericalIntegrityError("spin-multiplet character is not an integer");
    }
    chars.push_back(static_cast<int>(std::round(trace)));
  }
  return chars;
}

bool AllowedIrrepMap::allowed(const std::string& label) const {
  auto it = spins.find(label);
  if (it == spins.end()) throw DomainError("irrep '" + label + "' is not in the allowed-irrep map");
  return !it->second.empty();
}

AllowedIrrepMap allowed_spatial_irreps(int n) {
  const auto table = character_table(n);
  const auto sign_row = table.irrep_index(sign_irrep(table).label);
  const auto multiplets = multiplet_table(n);

  AllowedIrrepMap out;
  for (std::size_t g = 0; g < table.irreps.size(); ++g) {
    auto& spins = out.spins[table.irreps[g].label];
    for (const auto& [s, count] : multiplets.counts) {
      const auto spin_chars = spin_irrep_characters(n, s);
      std::int64_t sum = 0;
      for (std::size_t c = 0; c < table.classes.size(); ++c) {
        sum += table.classes[c].size * table.chars[g][c] * spin_chars[c] * table.chars[sign_row][c];
      }
      if (sum % table.group_order() != 0) {
        throw NumericalIntegrityError("sign-irrep multiplicity is not an integer");
      }
      if (sum / table.group_order() > 0) spins.push_back(s);
    }
  }
  return out;
}

AntisymmetrizedFunction antisymmetrize_space_spin(const OscillatorModel& m,
                                                  const LevelDescriptor& level,
                                                  const LevelRepresentation& rep,
                                                  const Eigen::MatrixXd& projector,
                                                  const SpinProduct& pattern, std::size_t seed,
                                                  bool expand) {
  if (static_cast<int>(pattern.labels.size()) != m.n) {
    throw SizeMismatchError("spin pattern length differs from N");
  }
  if (seed >= static_cast<std::size_t>(rep.dimension())) throw DomainError("seed index outside the level basis");

  const auto spin_dim = static_cast<Eigen::Index>(spin_dimension(m.n));
  AntisymmetrizedFunction out;
  out.components = Eigen::VectorXd::Zero(rep.dimension() * spin_dim);

  Eigen::VectorXd spatial = projector.col(static_cast<Eigen::Index>(seed));
  const double seed_norm = spatial.norm();
  if (seed_norm <= kZeroThreshold) return out;
  spatial /= seed_norm;

  const std::span<const SpinLabel> labels(pattern.labels);
  for (const auto& g : rep.elements()) {
    const Eigen::VectorXd space_part = rep.matrix(g) * spatial;
    // The spin part of g acting on a single product is another single product.
    const auto spin_index =
        static_cast<Eigen::Index>(SpinProduct{permute_positions(g, labels)}.index());
    const double sign = parity(g);
    for (Eigen::Index a = 0; a < space_part.size(); ++a) {
      out.components(a * spin_dim + spin_index) += sign * space_part(a);
    }
  }
  out.components /= static_cast<double>(rep.elements().size());
  out.norm = out.components.norm();
  out.nonzero = out.norm > kZeroThreshold;

  if (out.nonzero) {
    const Eigen::MatrixXd s2 = total_spin_squared(m.n);
    double expectation = 0.0;
    for (Eigen::Index a = 0; a < rep.dimension(); ++a) {
      const auto block = out.components.segment(a * spin_dim, spin_dim);
      expectation += block.dot(s2 * block);
    }
    out.spin_squared = expectation / (out.norm * out.norm);
    if (expand) out.determinants = expand_in_determinants(m, level, spatial, pattern);
  }
  return out;
}

AntisymmetrizedFunction antisymmetrize_space_spin(const OscillatorModel& m,
                                                  const LevelDescriptor& level,
                                                  const IrrepId& irrep,
                                                  const SpinProduct& pattern, std::size_t seed) {
  const auto table = character_table(m.n);
  const LevelRepresentation rep(m, level);
  const Eigen::MatrixXd projector = character_projector(rep, table, table.irrep(irrep.label));
  return antisymmetrize_space_spin(m, level, rep, projector, pattern, seed, true);
}

AllowedIrrepMap constructive_allowed_irreps(const OscillatorModel& m, int max_n_sym) {
  const auto table = character_table(m.n);
  const auto spin_dim = spin_dimension(m.n);
  std::map<std::string, std::set<SpinValue>> found;
  std::set<std::string> seen;

  for (int n_sym = 0; n_sym <= max_n_sym; ++n_sym) {
    const auto level = classify_level(m, make_level(m, n_sym, 0));
    const LevelRepresentation rep(m, level);
    for (const auto& [label, mult] : level.irrep_mults) {
      if (mult == 0) continue;
      seen.insert(label);
      auto& spins = found[label];
      const Eigen::MatrixXd projector = character_projector(rep, table, table.irrep(label));
      for (std::size_t seed = 0; seed < static_cast<std::size_t>(rep.dimension()); ++seed) {
        for (std::size_t idx = 0; idx < spin_dim; ++idx) {
          const auto result = antisymmetrize_space_spin(
              m, level, rep, projector, SpinProduct::from_index(m.n, idx), seed, false);
          if (result.nonzero) spins.insert(spin_from_s_squared(result.spin_squared));
        }
      }
    }
  }

  AllowedIrrepMap out;
  for (const auto& irrep : table.irreps) {
    if (!seen.contains(irrep.label)) {
      throw DomainError("irrep " + irrep.label + " does not occur for n_sym <= " +
                        std::to_string(max_n_sym) + "; raise the cutoff");
    }
    const auto& spins = found[irrep.label];
    out.spins[irrep.label] = std::vector<SpinValue>(spins.begin(), spins.end());
  }
  return out;
}

}  // namespace permsym
