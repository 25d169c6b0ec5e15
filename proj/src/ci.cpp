#include "permsym/ci.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "permsym/errors.hpp"
#include "permsym/parallel.hpp"

namespace permsym {

namespace {

constexpr int kMaxSpinOrbitals = 64;

// Phase of a_p (or a+_p) acting on `bits`: (-1)^(occupied below p).
int phase(std::uint64_t bits, int p) {
  const std::uint64_t below = (p == 0) ? 0 : (bits & ((std::uint64_t{1} << p) - 1));
  return (std::popcount(below) % 2 == 0) ? 1 : -1;
}

bool same_spin(int p, int q) { return (p & 1) == (q & 1); }

// <pq|v|rs> = xi * <p|x|r> <q|x|s> with spin orthogonality
double two_body(double xi, int p, int q, int r, int s) {
  if (!same_spin(p, r) || !same_spin(q, s)) return 0.0;
  return xi * x_matrix_element(p >> 1, r >> 1) * x_matrix_element(q >> 1, s >> 1);
}

double antisymmetrized(double xi, int p, int q, int r, int s) {
  return two_body(xi, p, q, r, s) - two_body(xi, p, q, s, r);
}

std::vector<int> set_bits(std::uint64_t bits) {
  std::vector<int> out;
  while (bits) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

// S+ = sum_p a+_{p alpha} a_{p beta}, applied to one determinant.
void apply_raising(std::uint64_t bits, double coeff, int n_orbitals,
                   std::map<std::uint64_t, double>& out) {
  for (int p = 0; p < n_orbitals; ++p) {
    const int alpha = 2 * p;
    const int beta = 2 * p + 1;
    if (!((bits >> beta) & 1U) || ((bits >> alpha) & 1U)) continue;
    const std::uint64_t removed = bits & ~(std::uint64_t{1} << beta);
    const int sign = phase(bits, beta) * phase(removed, alpha);
    out[removed | (std::uint64_t{1} << alpha)] += sign * coeff;
  }
}

void apply_lowering(std::uint64_t bits, double coeff, int n_orbitals,
                    std::map<std::uint64_t, double>& out) {
  for (int p = 0; p < n_orbitals; ++p) {
    const int alpha = 2 * p;
    const int beta = 2 * p + 1;
    if (!((bits >> alpha) & 1U) || ((bits >> beta) & 1U)) continue;
    const std::uint64_t removed = bits & ~(std::uint64_t{1} << alpha);
    const int sign = phase(bits, alpha) * phase(removed, beta);
    out[removed | (std::uint64_t{1} << beta)] += sign * coeff;
  }
}

struct BlockKey {
  int twice_ms;
  int parity;
  auto operator<=>(const BlockKey&) const = default;
};

// Replaces the columns of `vecs` spanning a subspace by the Gram-Schmidt
// orthonormalization of the projected canonical unit vectors.
Eigen::MatrixXd canonical_basis_of_span(const Eigen::MatrixXd& vecs) {
  const Eigen::Index dim = vecs.rows();
  const Eigen::Index rank = vecs.cols();
  if (rank == 1) {
    Eigen::VectorXd v = vecs.col(0);
    Eigen::Index pivot = 0;
    v.cwiseAbs().maxCoeff(&pivot);
    if (v(pivot) < 0) v = -v;
    return v;
  }
  Eigen::MatrixXd out(dim, rank);
  Eigen::Index filled = 0;
  for (Eigen::Index k = 0; k < dim && filled < rank; ++k) {
    Eigen::VectorXd v = vecs * vecs.row(k).transpose();  // projection of e_k
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index j = 0; j < filled; ++j) v -= out.col(j).dot(v) * out.col(j);
    }
    const double norm = v.norm();
    if (norm > 1e-6) out.col(filled++) = v / norm;
  }
  if (filled != rank) throw NumericalIntegrityError("degenerate-block orthonormalization lost rank");
  return out;
}

}  // namespace

SpinOrbital SpinOrbital::from_index(int index) {
  if (index < 0) throw DomainError("negative spin-orbital index");
  return {index / 2, (index % 2) ? SpinLabel::beta : SpinLabel::alpha};
}

SlaterDeterminant::SlaterDeterminant(std::vector<int> occupied) : occupied_(std::move(occupied)) {
  for (std::size_t i = 0; i < occupied_.size(); ++i) {
    const int p = occupied_[i];
    if (p < 0 || p >= kMaxSpinOrbitals) throw DomainError("spin-orbital index out of range");
    if (i > 0 && occupied_[i - 1] >= p) {
      throw DomainError("determinant occupation must be strictly increasing");
    }
    bits_ |= std::uint64_t{1} << p;
  }
}

std::pair<SlaterDeterminant, int> SlaterDeterminant::canonicalize(std::vector<int> spin_orbitals) {
  int sign = 1;
  for (std::size_t i = 1; i < spin_orbitals.size(); ++i) {
    for (std::size_t j = i; j > 0 && spin_orbitals[j] < spin_orbitals[j - 1]; --j) {
      std::swap(spin_orbitals[j], spin_orbitals[j - 1]);
      sign = -sign;
    }
  }
  for (std::size_t i = 1; i < spin_orbitals.size(); ++i) {
    if (spin_orbitals[i] == spin_orbitals[i - 1]) {
      throw DomainError("spin-orbital " + std::to_string(spin_orbitals[i]) +
                        " occupied twice; the determinant vanishes");
    }
  }
  return {SlaterDeterminant(std::move(spin_orbitals)), sign};
}

int SlaterDeterminant::twice_ms() const {
  int ms = 0;
  for (int p : occupied_) ms += (p & 1) ? -1 : 1;
  return ms;
}

int SlaterDeterminant::total_quanta() const {
  int q = 0;
  for (int p : occupied_) q += p >> 1;
  return q;
}

std::string SlaterDeterminant::to_string() const {
  std::ostringstream os;
  os << '|';
  for (std::size_t i = 0; i < occupied_.size(); ++i) {
    if (i) os << ' ';
    os << (occupied_[i] >> 1) << ((occupied_[i] & 1) ? 'b' : 'a');
  }
  os << '>';
  return os.str();
}

double x_matrix_element(int a, int b) {
  if (a < 0 || b < 0) throw DomainError("orbital indices must be non-negative");
  if (std::abs(a - b) != 1) return 0.0;
  return std::sqrt(std::max(a, b) / 2.0);
}

double core_energy(int a) {
  if (a < 0) throw DomainError("orbital index must be non-negative");
  return a + 0.5;
}

std::vector<SlaterDeterminant> build_basis(int n, int n_orbitals, std::optional<int> twice_ms) {
  if (n < 1) throw DomainError("build_basis: N must be positive");
  if (n_orbitals < 1 || 2 * n_orbitals > kMaxSpinOrbitals) {
    throw DomainError("build_basis: orbital count must be in 1.." + std::to_string(kMaxSpinOrbitals / 2));
  }
  if (2 * n_orbitals < n) {
    throw InfeasibleBasisError("cannot place " + std::to_string(n) + " electrons in " +
                               std::to_string(2 * n_orbitals) + " spin-orbitals");
  }
  const int spin_orbitals = 2 * n_orbitals;
  std::vector<SlaterDeterminant> out;
  std::vector<int> occ(static_cast<std::size_t>(n));
  std::iota(occ.begin(), occ.end(), 0);
  while (true) {
    SlaterDeterminant det(occ);
    if (!twice_ms || det.twice_ms() == *twice_ms) out.push_back(std::move(det));
    // next combination in lexicographic order
    int i = n - 1;
    while (i >= 0 && occ[static_cast<std::size_t>(i)] == spin_orbitals - n + i) --i;
    if (i < 0) break;
    ++occ[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < n; ++j) occ[static_cast<std::size_t>(j)] = occ[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

double hamiltonian_element(const SlaterDeterminant& bra, const SlaterDeterminant& ket,
                           const OscillatorModel& m) {
  if (bra.size() != ket.size() || bra.size() != m.n) {
    throw SizeMismatchError("hamiltonian_element: determinants must hold N = " + std::to_string(m.n) +
                            " electrons");
  }
  const std::uint64_t b1 = bra.bits();
  const std::uint64_t b2 = ket.bits();
  const int excitation = std::popcount(b1 ^ b2) / 2;
  if (excitation > 2) return 0.0;

  const double xi = m.xi;
  if (excitation == 0) {
    const auto& occ = ket.occupied();
    double e = 0.0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      e += core_energy(occ[i] >> 1);
      for (std::size_t j = i + 1; j < occ.size(); ++j) e += antisymmetrized(xi, occ[i], occ[j], occ[i], occ[j]);
    }
    return e;
  }

  const auto holes = set_bits(b2 & ~b1);      // in ket only
  const auto particles = set_bits(b1 & ~b2);  // in bra only

  if (excitation == 1) {
    const int i = holes[0];
    const int a = particles[0];
    std::uint64_t bits = b2;
    int sign = phase(bits, i);
    bits &= ~(std::uint64_t{1} << i);
    sign *= phase(bits, a);
    // one-body part is diagonal in the orbital basis, so only the two-body sum remains
    double value = 0.0;
    for (int j : set_bits(b1 & b2)) value += antisymmetrized(xi, a, j, i, j);
    return sign * value;
  }

  const int i = holes[0];
  const int j = holes[1];
  const int a = particles[0];
  const int b = particles[1];
  // bra = sign * a+_a a+_b a_j a_i ket
  std::uint64_t bits = b2;
  int sign = phase(bits, i);
  bits &= ~(std::uint64_t{1} << i);
  sign *= phase(bits, j);
  bits &= ~(std::uint64_t{1} << j);
  sign *= phase(bits, b);
  bits |= std::uint64_t{1} << b;
  sign *= phase(bits, a);
  return sign * antisymmetrized(xi, a, b, i, j);
}

Eigen::MatrixXd hamiltonian_matrix(const std::vector<SlaterDeterminant>& basis, const OscillatorModel& m) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  parallel_for(basis.size(), [&](std::size_t row) {
    const auto r = static_cast<Eigen::Index>(row);
    for (Eigen::Index c = r; c < dim; ++c) {
      h(r, c) = hamiltonian_element(basis[row], basis[static_cast<std::size_t>(c)], m);
    }
  });
  h.triangularView<Eigen::StrictlyLower>() = h.transpose().triangularView<Eigen::StrictlyLower>();
  return h;
}

Eigen::MatrixXd spin_squared_matrix(const std::vector<SlaterDeterminant>& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd s2 = Eigen::MatrixXd::Zero(dim, dim);
  if (basis.empty()) return s2;
  std::unordered_map<std::uint64_t, Eigen::Index> index;
  int n_orbitals = 0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto& det = basis[static_cast<std::size_t>(k)];
    index.emplace(det.bits(), k);
    if (!det.occupied().empty()) n_orbitals = std::max(n_orbitals, det.occupied().back() / 2 + 1);
  }
  // S^2 = S- S+ + Sz^2 + Sz
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto& det = basis[static_cast<std::size_t>(k)];
    std::map<std::uint64_t, double> raised;
    apply_raising(det.bits(), 1.0, n_orbitals, raised);
    std::map<std::uint64_t, double> result;
    for (const auto& [bits, c] : raised) apply_lowering(bits, c, n_orbitals, result);
    const double sz = det.twice_ms() / 2.0;
    result[det.bits()] += sz * sz + sz;
    for (const auto& [bits, c] : result) {
      auto it = index.find(bits);
      if (it != index.end()) s2(it->second, k) += c;
    }
  }
  return s2;
}

CIResult ci_solve(const OscillatorModel& m, const std::vector<SlaterDeterminant>& basis) {
  if (basis.empty()) throw DomainError("ci_solve: empty determinant basis");
  CIResult out;
  out.n = m.n;
  out.basis = basis;
  for (const auto& det : basis) {
    if (det.size() != m.n) throw SizeMismatchError("ci_solve: determinant size differs from N");
    out.n_orbitals = std::max(out.n_orbitals, det.occupied().back() / 2 + 1);
  }

  std::map<BlockKey, std::vector<std::size_t>> blocks;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    blocks[{basis[k].twice_ms(), basis[k].parity()}].push_back(k);
  }

  struct Solved {
    double energy;
    BlockKey key;
    Eigen::Index local;
    Eigen::VectorXd vector;
    double s_squared;
  };
  std::vector<Solved> solved;
  const auto dim = static_cast<Eigen::Index>(basis.size());

  for (const auto& [key, members] : blocks) {
    std::vector<SlaterDeterminant> sub;
    sub.reserve(members.size());
    for (auto k : members) sub.push_back(basis[k]);
    const Eigen::MatrixXd h = hamiltonian_matrix(sub, m);
    const Eigen::MatrixXd s2 = spin_squared_matrix(sub);

    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
    if (solver.info() != Eigen::Success) {
      std::ostringstream os;
      os << "eigensolver did not converge on the (2Ms=" << key.twice_ms << ", parity=" << key.parity
         << ") block of dimension " << sub.size();
      throw NumericalIntegrityError(os.str());
    }
    const Eigen::VectorXd& values = solver.eigenvalues();
    Eigen::MatrixXd vectors = solver.eigenvectors();

    // Clusters of (near-)degenerate eigenvalues.
    const Eigen::Index bdim = values.size();
    for (Eigen::Index start = 0; start < bdim;) {
      Eigen::Index end = start + 1;
      while (end < bdim && values(end) - values(end - 1) <= 1e-9 * std::max(1.0, std::abs(values(end)))) ++end;
      const Eigen::Index width = end - start;
      Eigen::MatrixXd cluster = vectors.middleCols(start, width);
      if (width > 1) {
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> spin_solver(cluster.transpose() * s2 * cluster);
        cluster = cluster * spin_solver.eigenvectors();
        // Canonicalize each S sub-block.
        const Eigen::VectorXd& s_values = spin_solver.eigenvalues();
        Eigen::Index s_start = 0;
        while (s_start < width) {
          Eigen::Index s_end = s_start + 1;
          while (s_end < width && s_values(s_end) - s_values(s_start) < 1e-6) ++s_end;
          cluster.middleCols(s_start, s_end - s_start) =
              canonical_basis_of_span(cluster.middleCols(s_start, s_end - s_start));
          s_start = s_end;
        }
      } else {
        cluster = canonical_basis_of_span(cluster);
      }
      for (Eigen::Index c = 0; c < width; ++c) {
        const Eigen::VectorXd v = cluster.col(c);
        Eigen::VectorXd full = Eigen::VectorXd::Zero(dim);
        for (std::size_t j = 0; j < members.size(); ++j) full(static_cast<Eigen::Index>(members[j])) = v(static_cast<Eigen::Index>(j));
        solved.push_back({v.dot(h * v), key, start + c, std::move(full), v.dot(s2 * v)});
      }
      start = end;
    }
  }

  std::stable_sort(solved.begin(), solved.end(), [](const Solved& a, const Solved& b) {
    if (a.energy != b.energy) return a.energy < b.energy;
    if (a.key != b.key) return a.key > b.key;
    return a.local < b.local;
  });

  out.eigenvalues.resize(dim);
  out.eigenvectors.resize(dim, dim);
  out.states.reserve(solved.size());
  for (std::size_t j = 0; j < solved.size(); ++j) {
    const auto& s = solved[j];
    out.eigenvalues(static_cast<Eigen::Index>(j)) = s.energy;
    out.eigenvectors.col(static_cast<Eigen::Index>(j)) = s.vector;
    out.states.push_back({s.energy, s.s_squared, spin_from_s_squared(s.s_squared), s.key.twice_ms, s.key.parity});
  }
  return out;
}

Eigen::VectorXd product_basis_eigenvalues(const OscillatorModel& m, int n_orbitals) {
  const int cap = (m.n == 3) ? 8 : 6;
  if (n_orbitals < 1 || n_orbitals > cap) {
    throw DomainError("product_basis_oracle: M = " + std::to_string(n_orbitals) +
                      " exceeds the dense-diagonalization cap M <= " + std::to_string(cap) +
                      " for N = " + std::to_string(m.n));
  }
  Eigen::Index dim = 1;
  for (int i = 0; i < m.n; ++i) dim *= n_orbitals;

  auto digits = [&](Eigen::Index idx) {
    std::vector<int> d(static_cast<std::size_t>(m.n));
    for (int i = m.n - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = static_cast<int>(idx % n_orbitals);
      idx /= n_orbitals;
    }
    return d;
  };
  auto encode = [&](const std::vector<int>& d) {
    Eigen::Index idx = 0;
    for (int v : d) idx = idx * n_orbitals + v;
    return idx;
  };

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    const auto d = digits(col);
    for (int v : d) h(col, col) += core_energy(v);
    for (int i = 0; i < m.n; ++i) {
      for (int j = i + 1; j < m.n; ++j) {
        for (int di : {-1, 1}) {
          for (int dj : {-1, 1}) {
            auto e = d;
            e[static_cast<std::size_t>(i)] += di;
            e[static_cast<std::size_t>(j)] += dj;
            if (e[static_cast<std::size_t>(i)] < 0 || e[static_cast<std::size_t>(i)] >= n_orbitals ||
                e[static_cast<std::size_t>(j)] < 0 || e[static_cast<std::size_t>(j)] >= n_orbitals) {
              continue;
            }
            h(encode(e), col) += m.xi * x_matrix_element(e[static_cast<std::size_t>(i)], d[static_cast<std::size_t>(i)]) *
                                 x_matrix_element(e[static_cast<std::size_t>(j)], d[static_cast<std::size_t>(j)]);
          }
        }
      }
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalIntegrityError("product-basis eigensolver failed");
  return solver.eigenvalues();
}

std::vector<ProductLevel> product_basis_oracle(const OscillatorModel& m, int n_orbitals, double group_tol) {
  const Eigen::VectorXd values = product_basis_eigenvalues(m, n_orbitals);
  std::vector<ProductLevel> out;
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (!out.empty() && values(i) - values(i - 1) <= group_tol) {
      ++out.back().degeneracy;
    } else {
      out.push_back({values(i), 1});
    }
  }
  return out;
}

}  // namespace permsym
