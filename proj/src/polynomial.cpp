#include "permsym/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "permsym/errors.hpp"

namespace permsym {

Polynomial::Polynomial(int n_vars) : n_vars_(n_vars) {
  if (n_vars < 0) throw DomainError("Polynomial: negative variable count");
}

Polynomial Polynomial::constant(int n_vars, double value) {
  Polynomial p(n_vars);
  p.add_term(Exponents(static_cast<std::size_t>(n_vars), 0), value);
  return p;
}

Polynomial Polynomial::variable(int n_vars, int var, double scale) {
  if (var < 0 || var >= n_vars) throw DomainError("Polynomial::variable: index out of range");
  Polynomial p(n_vars);
  Exponents e(static_cast<std::size_t>(n_vars), 0);
  e[static_cast<std::size_t>(var)] = 1;
  p.add_term(e, scale);
  return p;
}

double Polynomial::coefficient(const Exponents& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0.0 : it->second;
}

int Polynomial::degree() const {
  int deg = -1;
  for (const auto& [e, c] : terms_) {
    if (c != 0.0) deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

void Polynomial::add_term(const Exponents& e, double c) {
  if (static_cast<int>(e.size()) != n_vars_) {
    throw SizeMismatchError("Polynomial::add_term: exponent length differs from variable count");
  }
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.n_vars_ != n_vars_) throw SizeMismatchError("Polynomial: variable counts differ");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.n_vars_ != b.n_vars_) throw SizeMismatchError("Polynomial: variable counts differ");
  Polynomial out(a.n_vars_);
  Polynomial::Exponents e(static_cast<std::size_t>(a.n_vars_));
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw DomainError("Polynomial::pow: negative exponent");
  Polynomial result = constant(n_vars_, 1.0);
  for (int i = 0; i < e; ++i) result = result * *this;
  return result;
}

double Polynomial::evaluate(std::span<const double> point) const {
  if (static_cast<int>(point.size()) != n_vars_) {
    throw SizeMismatchError("Polynomial::evaluate: point dimension differs from variable count");
  }
  double sum = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c;
    for (std::size_t i = 0; i < e.size(); ++i) term *= std::pow(point[i], e[i]);
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::substitute(const Eigen::MatrixXd& a) const {
  if (a.rows() != n_vars_) {
    throw SizeMismatchError("Polynomial::substitute: matrix rows differ from variable count");
  }
  const int out_vars = static_cast<int>(a.cols());
  // powers[i][k] = (sum_j a(i,j) r_j)^k, built lazily
  std::vector<std::vector<Polynomial>> powers(static_cast<std::size_t>(n_vars_));
  for (int i = 0; i < n_vars_; ++i) {
    Polynomial linear(out_vars);
    for (int j = 0; j < out_vars; ++j) {
      if (a(i, j) != 0.0) linear += variable(out_vars, j, a(i, j));
    }
    powers[static_cast<std::size_t>(i)] = {constant(out_vars, 1.0), linear};
  }
  auto power = [&](int i, int k) -> const Polynomial& {
    auto& cache = powers[static_cast<std::size_t>(i)];
    while (static_cast<int>(cache.size()) <= k) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(k)];
  };

  Polynomial out(out_vars);
  for (const auto& [e, c] : terms_) {
    Polynomial term = constant(out_vars, c);
    for (int i = 0; i < n_vars_; ++i) {
      if (e[static_cast<std::size_t>(i)] > 0) term = term * power(i, e[static_cast<std::size_t>(i)]);
    }
    out += term;
  }
  return out;
}

Polynomial Polynomial::pruned(double tol) const {
  Polynomial out(n_vars_);
  for (const auto& [e, c] : terms_) {
    if (std::abs(c) > tol) out.terms_.emplace(e, c);
  }
  return out;
}

std::vector<std::int64_t> hermite_coefficients(int n) {
  if (n < 0) throw DomainError("hermite_coefficients: negative degree");
  // H_{k+1} = 2q H_k - 2k H_{k-1}
  std::vector<std::int64_t> prev{1};
  if (n == 0) return prev;
  std::vector<std::int64_t> cur{0, 2};
  for (int k = 1; k < n; ++k) {
    std::vector<std::int64_t> next(static_cast<std::size_t>(k + 2), 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= 2 * std::int64_t{k} * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Polynomial hermite_poly(int n) {
  Polynomial p(1);
  const auto coeffs = hermite_coefficients(n);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    p.add_term({static_cast<int>(i)}, static_cast<double>(coeffs[i]));
  }
  return p;
}

Polynomial hermite_product(std::span<const int> pattern) {
  const int n_vars = static_cast<int>(pattern.size());
  Polynomial out = Polynomial::constant(n_vars, 1.0);
  for (int i = 0; i < n_vars; ++i) {
    Polynomial factor(n_vars);
    const auto coeffs = hermite_coefficients(pattern[static_cast<std::size_t>(i)]);
    Polynomial::Exponents e(static_cast<std::size_t>(n_vars), 0);
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      e[static_cast<std::size_t>(i)] = static_cast<int>(k);
      factor.add_term(e, static_cast<double>(coeffs[k]));
    }
    out = out * factor;
  }
  return out;
}

namespace {

// q^m = m!/2^m * sum_l H_{m-2l}(q) / (l! (m-2l)!)
std::vector<double> monomial_in_hermite(int m) {
  std::vector<double> c(static_cast<std::size_t>(m + 1), 0.0);
  const double prefactor = std::tgamma(m + 1.0) / std::ldexp(1.0, m);
  for (int l = 0; 2 * l <= m; ++l) {
    c[static_cast<std::size_t>(m - 2 * l)] =
        prefactor / (std::tgamma(l + 1.0) * std::tgamma(m - 2 * l + 1.0));
  }
  return c;
}

}  // namespace

Polynomial::Terms to_hermite_products(const Polynomial& p) {
  const int n_vars = p.n_vars();
  std::map<int, std::vector<double>> cache;
  auto expansion = [&](int m) -> const std::vector<double>& {
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, monomial_in_hermite(m)).first;
    return it->second;
  };

  Polynomial::Terms out;
  for (const auto& [e, c] : p.terms()) {
    // Cartesian product of per-variable expansions.
    Polynomial::Terms partial{{Polynomial::Exponents(static_cast<std::size_t>(n_vars), 0), c}};
    for (int i = 0; i < n_vars; ++i) {
      const auto& coeffs = expansion(e[static_cast<std::size_t>(i)]);
      Polynomial::Terms next;
      for (const auto& [idx, val] : partial) {
        for (std::size_t j = 0; j < coeffs.size(); ++j) {
          if (coeffs[j] == 0.0) continue;
          auto key = idx;
          key[static_cast<std::size_t>(i)] = static_cast<int>(j);
          next[key] += val * coeffs[j];
        }
      }
      partial = std::move(next);
    }
    for (const auto& [idx, val] : partial) out[idx] += val;
  }
  double largest = 0.0;
  for (const auto& [idx, val] : out) largest = std::max(largest, std::abs(val));
  std::erase_if(out, [&](const auto& term) { return std::abs(term.second) <= 1e-13 * largest; });
  return out;
}

}  // namespace permsym
