#pragma once

// Independent reference computations used by the tests. Nothing here calls
// into the library under test.

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Images = std::vector<int>;  // 1-based images

inline std::vector<Images> brute_permutations(int n) {
  Images p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  std::vector<Images> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

inline int inversion_parity(const Images& p) {
  int inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[i] > p[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

inline int fixed_points(const Images& p) {
  int count = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] == static_cast<int>(i) + 1) ++count;
  return count;
}

inline std::vector<int> orbit_lengths(const Images& p) {
  std::vector<bool> seen(p.size(), false);
  std::vector<int> parts;
  for (std::size_t start = 0; start < p.size(); ++start) {
    if (seen[start]) continue;
    int len = 0;
    for (std::size_t i = start; !seen[i]; i = static_cast<std::size_t>(p[i] - 1)) {
      seen[i] = true;
      ++len;
    }
    parts.push_back(len);
  }
  std::sort(parts.rbegin(), parts.rend());
  return parts;
}

/// S_4 characters keyed by cycle type, from explicit representations:
/// trivial, sign, standard (permutation rep minus trivial), standard x sign,
/// and the two-dimensional irrep as what the regular representation leaves over.
inline std::map<std::string, std::map<std::vector<int>, int>> o_table_from_representations() {
  std::map<std::vector<int>, int> trivial, sign, standard, standard_sign, regular;
  for (const auto& p : brute_permutations(4)) {
    const auto type = orbit_lengths(p);
    trivial[type] = 1;
    sign[type] = inversion_parity(p);
    standard[type] = fixed_points(p) - 1;
    standard_sign[type] = (fixed_points(p) - 1) * inversion_parity(p);
    regular[type] = fixed_points(p) == 4 ? 24 : 0;
  }
  std::map<std::vector<int>, int> two_dim;
  for (const auto& [type, r] : regular) {
    const int rest = r - trivial[type] - sign[type] - 3 * standard[type] - 3 * standard_sign[type];
    two_dim[type] = rest / 2;
  }
  return {{"A1", trivial}, {"A2", sign}, {"E", two_dim}, {"T1", standard_sign}, {"T2", standard}};
}

/// Characters of S_3 (A1, A2, E) or S_4 (A1, A2, E, T1, T2) from explicit
/// representations, keyed by cycle type.
inline std::map<std::string, std::map<std::vector<int>, int>> table_from_representations(int n) {
  if (n == 4) return o_table_from_representations();
  std::map<std::vector<int>, int> trivial, sign, standard;
  for (const auto& p : brute_permutations(3)) {
    const auto type = orbit_lengths(p);
    trivial[type] = 1;
    sign[type] = inversion_parity(p);
    standard[type] = fixed_points(p) - 1;
  }
  return {{"A1", trivial}, {"A2", sign}, {"E", standard}};
}

/// Number of degree-d monomials in N variables left fixed by a permutation
/// with the given cycle lengths: coefficient of t^d in prod 1 / (1 - t^len).
inline long fixed_monomials(const std::vector<int>& cycles, int degree) {
  std::vector<long> coeff(static_cast<std::size_t>(degree) + 1, 0);
  coeff[0] = 1;
  for (int len : cycles)
    for (int d = len; d <= degree; ++d) coeff[static_cast<std::size_t>(d)] += coeff[static_cast<std::size_t>(d - len)];
  return coeff[static_cast<std::size_t>(degree)];
}

/// Irrep content of the n_sym-quanta level: the degree-n_sym symmetric power
/// of the standard representation. The permutation representation is
/// standard + trivial, so Sym^d(perm) = sum_{j <= d} Sym^j(standard).
inline std::map<std::string, int> level_content(int n, int n_sym) {
  const auto table = table_from_representations(n);
  const auto perms = brute_permutations(n);
  std::map<std::string, int> out;
  for (const auto& [label, chi] : table) {
    long sum = 0;
    for (const auto& p : perms) {
      const auto type = orbit_lengths(p);
      const long trace = fixed_monomials(type, n_sym) - (n_sym > 0 ? fixed_monomials(type, n_sym - 1) : 0);
      sum += trace * chi.at(type);
    }
    out[label] = static_cast<int>(sum / static_cast<long>(perms.size()));
  }
  return out;
}

struct Quadrature {
  std::vector<double> nodes;
  std::vector<double> weights;  // for the weight function exp(-x^2)
};

inline double hermite_function_without_gaussian(int n, double x);

/// Golub-Welsch nodes polished by Newton steps on the normalized Hermite
/// function, with weights from the Christoffel function.
inline Quadrature gauss_hermite(int points) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(points, points);
  for (int i = 1; i < points; ++i) J(i, i - 1) = J(i - 1, i) = std::sqrt(i / 2.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  Quadrature q;
  for (int i = 0; i < points; ++i) {
    double x = es.eigenvalues()(i);
    for (int step = 0; step < 3; ++step) {
      const double f = hermite_function_without_gaussian(points, x);
      const double df = std::sqrt(2.0 * points) * hermite_function_without_gaussian(points - 1, x);
      x -= f / df;
    }
    double christoffel = 0.0;
    for (int k = 0; k < points; ++k) christoffel += std::pow(hermite_function_without_gaussian(k, x), 2);
    q.nodes.push_back(x);
    q.weights.push_back(1.0 / christoffel);
  }
  return q;
}

/// phi_n(x) * exp(x^2 / 2) for the normalized oscillator eigenfunction phi_n.
inline double hermite_function_without_gaussian(int n, double x) {
  double prev = 0.0;
  double cur = std::pow(M_PI, -0.25);
  for (int k = 0; k < n; ++k) {
    const double next = std::sqrt(2.0 / (k + 1)) * x * cur - std::sqrt(static_cast<double>(k) / (k + 1)) * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

inline double quadrature_x_element(const Quadrature& q, int a, int b) {
  double sum = 0.0;
  for (std::size_t i = 0; i < q.nodes.size(); ++i) {
    const double x = q.nodes[i];
    sum += q.weights[i] * hermite_function_without_gaussian(a, x) * x * hermite_function_without_gaussian(b, x);
  }
  return sum;
}

inline Eigen::MatrixXd kron(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  Eigen::MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

/// Operator acting as `op` on particle `which` of `particles`, identity elsewhere.
inline Eigen::MatrixXd on_particle(const Eigen::MatrixXd& op, int which, int particles) {
  const Eigen::Index d = op.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Identity(1, 1);
  for (int i = 0; i < particles; ++i) out = kron(out, i == which ? op : Eigen::MatrixXd::Identity(d, d));
  return out;
}

/// Hamiltonian of the coupled-oscillator model between antisymmetrized
/// products of spin-orbitals, built in the full first-quantized product
/// space. Spin-orbital s = 2 * orbital + spin; each determinant is given by
/// its ascending spin-orbital list, particle i occupying the i-th entry
/// before antisymmetrization.
inline Eigen::MatrixXd first_quantized_hamiltonian(int particles, int orbitals, double xi,
                                                   const std::vector<std::vector<int>>& determinants) {
  const Quadrature q = gauss_hermite(64);
  const int so = 2 * orbitals;
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(so, so);
  Eigen::MatrixXd x1 = Eigen::MatrixXd::Zero(so, so);
  for (int s = 0; s < so; ++s) {
    h1(s, s) = s / 2 + 0.5;
    for (int t = 0; t < so; ++t)
      if (s % 2 == t % 2) x1(s, t) = quadrature_x_element(q, s / 2, t / 2);
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(std::pow(so, particles));
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  std::vector<Eigen::MatrixXd> x_on(static_cast<std::size_t>(particles));
  for (int i = 0; i < particles; ++i) {
    H += on_particle(h1, i, particles);
    x_on[static_cast<std::size_t>(i)] = on_particle(x1, i, particles);
  }
  for (int i = 0; i < particles; ++i)
    for (int j = i + 1; j < particles; ++j) H += xi * x_on[static_cast<std::size_t>(i)] * x_on[static_cast<std::size_t>(j)];

  const auto perms = brute_permutations(particles);
  const double norm = 1.0 / std::sqrt(static_cast<double>(perms.size()));
  Eigen::MatrixXd D = Eigen::MatrixXd::Zero(dim, static_cast<Eigen::Index>(determinants.size()));
  for (std::size_t c = 0; c < determinants.size(); ++c) {
    for (const auto& p : perms) {
      Eigen::Index index = 0;
      for (int i = 0; i < particles; ++i) index = index * so + determinants[c][static_cast<std::size_t>(p[static_cast<std::size_t>(i)] - 1)];
      D(index, static_cast<Eigen::Index>(c)) += inversion_parity(p) * norm;
    }
  }
  return D.transpose() * H * D;
}

/// Closed-form levels of the model: force constants from diagonalizing the
/// coupling matrix numerically.
inline std::vector<double> force_constants(int n, double xi) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Constant(n, n, xi);
  A.diagonal().setOnes();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  std::vector<double> out;
  for (Eigen::Index i = 0; i < n; ++i) out.push_back(es.eigenvalues()(i));
  return out;
}

}  // namespace oracle
