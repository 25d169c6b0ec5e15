#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace permsym {

/// Sparse multivariate polynomial with real coefficients, keyed by exponent vector.
class Polynomial {
 public:
  using Exponents = std::vector<int>;
  using Terms = std::map<Exponents, double>;

  explicit Polynomial(int n_vars);

  static Polynomial constant(int n_vars, double value);
  /// scale * q_var
  static Polynomial variable(int n_vars, int var, double scale = 1.0);

  [[nodiscard]] int n_vars() const noexcept { return n_vars_; }
  [[nodiscard]] const Terms& terms() const noexcept { return terms_; }
  [[nodiscard]] double coefficient(const Exponents& e) const;
  /// Highest total degree with a nonzero coefficient; -1 for the zero polynomial.
  [[nodiscard]] int degree() const;

  void add_term(const Exponents& e, double c);

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  [[nodiscard]] Polynomial pow(int e) const;
  [[nodiscard]] double evaluate(std::span<const double> point) const;

  /// Linear change of variables q_i -> sum_j a(i, j) * r_j. The result is a
  /// polynomial in a.cols() variables.
  [[nodiscard]] Polynomial substitute(const Eigen::MatrixXd& a) const;

  /// Drops terms with |coefficient| <= tol.
  [[nodiscard]] Polynomial pruned(double tol) const;

 private:
  int n_vars_;
  Terms terms_;
};

/// Integer coefficients of the physicists' Hermite polynomial H_n, lowest power first.
[[nodiscard]] std::vector<std::int64_t> hermite_coefficients(int n);

/// H_n as a one-variable Polynomial.
[[nodiscard]] Polynomial hermite_poly(int n);

/// prod_i H_{pattern[i]}(q_i) expanded in monomials.
[[nodiscard]] Polynomial hermite_product(std::span<const int> pattern);

/// Re-expresses a polynomial in the basis of Hermite products
/// prod_i H_{j_i}(q_i); keys are the index patterns j. Terms that cancel to
/// roundoff (relative to the largest coefficient) are dropped.
[[nodiscard]] Polynomial::Terms to_hermite_products(const Polynomial& p);

}  // namespace permsym
