#include "permsym/oscillator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "permsym/errors.hpp"

namespace permsym {

namespace {

Eigen::MatrixXd normal_mode_matrix(int n) {
  const double r2 = std::sqrt(2.0);
  const double r3 = std::sqrt(3.0);
  const double r6 = std::sqrt(6.0);
  Eigen::MatrixXd u(n, n);
  if (n == 3) {
    u << 0.0, 1.0 / r2, -1.0 / r2,
         2.0 / r6, -1.0 / r6, -1.0 / r6,
         1.0 / r3, 1.0 / r3, 1.0 / r3;
  } else {
    u << 1.0 / r2, 0.0, 0.0, -1.0 / r2,
         0.0, 1.0 / r2, -1.0 / r2, 0.0,
         0.5, -0.5, -0.5, 0.5,
         0.5, 0.5, 0.5, 0.5;
  }
  return u;
}

void check_pattern(const OscillatorModel& m, const QuantaPattern& q) {
  if (static_cast<int>(q.n.size()) != m.n) {
    throw SizeMismatchError("quanta pattern has " + std::to_string(q.n.size()) +
                            " entries for an N = " + std::to_string(m.n) + " model");
  }
  for (int v : q.n) {
    if (v < 0) throw DomainError("quanta must be non-negative");
  }
}

double factorial(int n) { return std::tgamma(n + 1.0); }

// (alpha/pi)^{1/4} / sqrt(2^n n!) with alpha = sqrt(force constant)
double mode_normalization(int quanta, double force_constant) {
  const double alpha = std::sqrt(force_constant);
  return std::pow(alpha / std::numbers::pi, 0.25) / std::sqrt(std::ldexp(1.0, quanta) * factorial(quanta));
}

struct ActionResult {
  Eigen::MatrixXd matrix;
  double leakage = 0.0;
};

ActionResult compute_action(const OscillatorModel& m, const LevelDescriptor& level,
                            const Permutation& p) {
  if (p.size() != m.n) {
    throw SizeMismatchError("permutation of " + std::to_string(p.size()) +
                            " labels acting on an N = " + std::to_string(m.n) + " model");
  }
  const int modes = m.degenerate_modes();
  const auto basis = level_basis(modes, level.n_sym);
  std::map<std::vector<int>, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], static_cast<Eigen::Index>(i));

  const Eigen::MatrixXd r = normal_mode_action(m, p);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  ActionResult out{Eigen::MatrixXd::Zero(dim, dim), 0.0};
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto& b = basis[static_cast<std::size_t>(col)];
    const double scale_b = hermite_product_scale(b);
    const auto expanded = to_hermite_products(hermite_product(b).substitute(r));
    for (const auto& [pattern, coeff] : expanded) {
      const double value = coeff * hermite_product_scale(pattern) / scale_b;
      auto it = index.find(pattern);
      if (it == index.end()) {
        out.leakage = std::max(out.leakage, std::abs(value));
      } else {
        out.matrix(it->second, col) = value;
      }
    }
  }
  return out;
}

}  // namespace

std::pair<double, double> bound_window(int n) {
  if (n != 3 && n != 4) {
    throw DomainError("oscillator models exist for N = 3 and N = 4 only (got " + std::to_string(n) + ")");
  }
  return {-1.0 / (n - 1), 1.0};
}

OscillatorModel make_model(int n, double xi) {
  const auto [lo, hi] = bound_window(n);
  if (!(xi > lo && xi < hi)) {
    std::ostringstream os;
    os << "coupling xi = " << xi << " has no bound states for N = " << n << "; need " << lo
       << " < xi < " << hi;
    throw UnboundModelError(os.str());
  }
  OscillatorModel m;
  m.n = n;
  m.xi = xi;
  m.k = 1.0 - xi;
  m.k_prime = 1.0 + (n - 1) * xi;
  m.U = normal_mode_matrix(n);
  return m;
}

int QuantaPattern::n_sym() const {
  int s = 0;
  for (std::size_t i = 0; i + 1 < n.size(); ++i) s += n[i];
  return s;
}

int QuantaPattern::n_last() const { return n.empty() ? 0 : n.back(); }

double level_energy(const OscillatorModel& m, int n_sym, int n_last) {
  if (n_sym < 0 || n_last < 0) throw DomainError("quanta must be non-negative");
  return std::sqrt(m.k) * (n_sym + 0.5 * m.degenerate_modes()) +
         std::sqrt(m.k_prime) * (n_last + 0.5);
}

double exact_energy(const OscillatorModel& m, const QuantaPattern& q) {
  check_pattern(m, q);
  return level_energy(m, q.n_sym(), q.n_last());
}

int level_degeneracy(int n, int n_sym) {
  // Number of ways to distribute n_sym quanta over N - 1 modes.
  const int modes = n - 1;
  std::int64_t num = 1;
  std::int64_t den = 1;
  for (int i = 1; i < modes; ++i) {
    num *= n_sym + i;
    den *= i;
  }
  return static_cast<int>(num / den);
}

LevelDescriptor make_level(const OscillatorModel& m, int n_sym, int n_last) {
  LevelDescriptor level;
  level.n_sym = n_sym;
  level.n_last = n_last;
  level.energy = level_energy(m, n_sym, n_last);
  level.degeneracy = level_degeneracy(m.n, n_sym);
  level.parity = (n_sym + n_last) % 2 == 0 ? 1 : -1;
  return level;
}

std::vector<LevelDescriptor> enumerate_levels(const OscillatorModel& m, int max_total_quanta) {
  if (max_total_quanta < 0) throw DomainError("max_total_quanta must be non-negative");
  std::vector<LevelDescriptor> levels;
  for (int total = 0; total <= max_total_quanta; ++total) {
    for (int n_sym = 0; n_sym <= total; ++n_sym) levels.push_back(make_level(m, n_sym, total - n_sym));
  }
  std::stable_sort(levels.begin(), levels.end(), [](const auto& a, const auto& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    return std::pair(a.n_sym, a.n_last) < std::pair(b.n_sym, b.n_last);
  });
  return levels;
}

std::vector<AccidentalDegeneracy> accidental_degeneracies(std::span<const LevelDescriptor> levels,
                                                          double tol) {
  std::vector<AccidentalDegeneracy> out;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    for (std::size_t j = i + 1; j < levels.size(); ++j) {
      const double gap = std::abs(levels[i].energy - levels[j].energy);
      if (gap <= tol) {
        out.push_back({{levels[i].n_sym, levels[i].n_last}, {levels[j].n_sym, levels[j].n_last}, gap});
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> level_basis(int degenerate_modes, int n_sym) {
  if (degenerate_modes < 1 || n_sym < 0) throw DomainError("level_basis: invalid arguments");
  std::vector<std::vector<int>> out;
  std::vector<int> pattern(static_cast<std::size_t>(degenerate_modes), 0);
  // Recursive fill, first index slowest, ascending: lexicographic order.
  auto fill = [&](auto&& self, int pos, int remaining) -> void {
    if (pos == degenerate_modes - 1) {
      pattern[static_cast<std::size_t>(pos)] = remaining;
      out.push_back(pattern);
      return;
    }
    for (int v = 0; v <= remaining; ++v) {
      pattern[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, remaining - v);
    }
  };
  fill(fill, 0, n_sym);
  return out;
}

double hermite_product_scale(std::span<const int> pattern) {
  double s = 1.0;
  for (int n : pattern) s *= std::ldexp(1.0, n) * factorial(n);
  return std::sqrt(s);
}

Eigen::VectorXd level_vector_from_hermite_products(const std::vector<std::vector<int>>& basis,
                                                   const std::map<std::vector<int>, double>& raw) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [pattern, coeff] : raw) {
    auto it = std::find(basis.begin(), basis.end(), pattern);
    if (it == basis.end()) throw DomainError("Hermite product pattern is not in the level basis");
    v(it - basis.begin()) = coeff * hermite_product_scale(pattern);
  }
  return v;
}

Polynomial hermite_in_scaled(int n, double k) {
  Eigen::MatrixXd scale(1, 1);
  scale(0, 0) = std::pow(k, 0.25);
  return hermite_poly(n).substitute(scale);
}

HermiteGaussian eigenfunction(const OscillatorModel& m, const QuantaPattern& q) {
  check_pattern(m, q);
  const int modes = m.degenerate_modes();
  std::vector<int> degenerate(q.n.begin(), q.n.end() - 1);
  const Eigen::MatrixXd scale =
      Eigen::MatrixXd::Identity(modes, modes) * std::pow(m.k, 0.25);

  HermiteGaussian f{hermite_product(degenerate).substitute(scale), q.n_last(), 1.0, m.k, m.k_prime};
  for (int n : degenerate) f.normalization *= mode_normalization(n, m.k);
  f.normalization *= mode_normalization(q.n_last(), m.k_prime);
  return f;
}

double evaluate(const OscillatorModel& m, const HermiteGaussian& f, std::span<const double> x) {
  if (static_cast<int>(x.size()) != m.n) throw SizeMismatchError("evaluate: wrong point dimension");
  const Eigen::VectorXd y = m.U * Eigen::Map<const Eigen::VectorXd>(x.data(), m.n);
  const int modes = m.degenerate_modes();
  std::vector<double> degenerate(y.data(), y.data() + modes);
  const double y_last = y(modes);
  const double last_factor = hermite_in_scaled(f.n_last, f.k_prime).evaluate(std::span(&y_last, 1));
  const double gauss = std::exp(-0.5 * std::sqrt(f.k) * y.head(modes).squaredNorm() -
                                0.5 * std::sqrt(f.k_prime) * y_last * y_last);
  return f.normalization * f.poly.evaluate(degenerate) * last_factor * gauss;
}

Eigen::MatrixXd permutation_matrix(const Permutation& p) {
  Eigen::MatrixXd mat = Eigen::MatrixXd::Zero(p.size(), p.size());
  for (int i = 1; i <= p.size(); ++i) mat(p(i) - 1, i - 1) = 1.0;
  return mat;
}

Eigen::MatrixXd normal_mode_action(const OscillatorModel& m, const Permutation& p) {
  if (p.size() != m.n) throw SizeMismatchError("normal_mode_action: permutation size differs from N");
  const Eigen::MatrixXd full = m.U * permutation_matrix(p).transpose() * m.U.transpose();
  const int modes = m.degenerate_modes();
  return full.topLeftCorner(modes, modes);
}

Eigen::MatrixXd permutation_action_matrix(const OscillatorModel& m, const LevelDescriptor& level,
                                          const Permutation& p) {
  auto result = compute_action(m, level, p);
  if (result.leakage > 1e-8) {
    throw NumericalIntegrityError("permuted level leaks out of its span by " +
                                  std::to_string(result.leakage));
  }
  return std::move(result.matrix);
}

double permutation_leakage(const OscillatorModel& m, const LevelDescriptor& level,
                           const Permutation& p) {
  return compute_action(m, level, p).leakage;
}

}  // namespace permsym
