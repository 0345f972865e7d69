#pragma once

// Quaternion-matrix backend: complex adjoint embedding, cyclic Jacobi on
// complex Hermitian matrices, and the quaternion Hermitian eigensolver and
// SVD built on top of them.
//
// A quaternion q = w + xi + yj + zk is written q = a + b j with complex
// a = w + x i and b = y + z i. A quaternion matrix A = A1 + A2 j maps to
// the 2m x 2n complex matrix [[A1, A2], [-conj(A2), conj(A1)]].

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/quat_matrix.hpp"
#include "dqspectra/scalars.hpp"

namespace dqspectra {

using Complex = std::complex<double>;

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Complex& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

  ComplexMatrix conj_transpose() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  double fro_norm() const noexcept {
    double s = 0.0;
    for (const auto& c : data_) s += std::norm(c);
    return std::sqrt(s);
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

inline ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "complex matrix product");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, "complex matrix difference");
  }
  ComplexMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline ComplexMatrix complex_adjoint(const QuatMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  ComplexMatrix c(2 * m, 2 * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion& q = a(i, j);
      const Complex a1(q.w(), q.x());
      const Complex a2(q.y(), q.z());
      c(i, j) = a1;
      c(i, n + j) = a2;
      c(m + i, j) = -std::conj(a2);
      c(m + i, n + j) = std::conj(a1);
    }
  }
  return c;
}

/// Inverse of the adjoint on its image: reads A1 and A2 from the top blocks.
inline QuatMatrix quaternion_from_adjoint(const ComplexMatrix& c) {
  if (c.rows() % 2 != 0 || c.cols() % 2 != 0) {
    throw Error(ErrorKind::DimensionMismatch, "adjoint must have even dimensions");
  }
  const std::size_t m = c.rows() / 2;
  const std::size_t n = c.cols() / 2;
  QuatMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Complex a1 = c(i, j);
      const Complex a2 = c(i, n + j);
      a(i, j) = Quaternion(a1.real(), a1.imag(), a2.real(), a2.imag());
    }
  return a;
}

struct ComplexEig {
  ComplexMatrix vectors;        // columns are orthonormal eigenvectors
  std::vector<double> values;   // sorted descending
  int sweeps = 0;
};

/// Cyclic Jacobi for a complex Hermitian matrix. Pivots are visited in fixed
/// row-major order, so results are deterministic. Converged when the
/// off-diagonal Frobenius norm is at rounding level; NoConvergence is raised
/// only when `max_sweeps` ends with it still above tol * |H|_F.
inline ComplexEig complex_herm_eig(const ComplexMatrix& h_in, double tol = 1e-10, int max_sweeps = 64) {
  const std::size_t n = h_in.rows();
  if (h_in.cols() != n) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  const double hnorm = h_in.fro_norm();
  if ((h_in - h_in.conj_transpose()).fro_norm() > tol * std::max(1.0, hnorm)) {
    throw Error(ErrorKind::NotHermitian, "complex matrix is not Hermitian");
  }

  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    h(i, i) = h_in(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      h(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));
      h(j, i) = std::conj(h(i, j));
    }
  }
  ComplexMatrix v = ComplexMatrix::identity(n);

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(h(i, j));
    return std::sqrt(s);
  };

  constexpr double kRoundoff = 1e-15;
  const double target = kRoundoff * hnorm;
  int sweep = 0;
  double off = off_norm();
  double prev_off = std::numeric_limits<double>::infinity();
  while (off > target && sweep < max_sweeps) {
    // Rounding floor reached: further sweeps cannot reduce the off-diagonal part.
    if (off >= prev_off && off <= tol * hnorm) break;
    prev_off = off;
    ++sweep;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex b = h(p, q);
        const double babs = std::abs(b);
        if (babs == 0.0) continue;
        const double a_pp = h(p, p).real();
        const double a_qq = h(q, q).real();
        const Complex e = b / babs;
        const double theta = (a_qq - a_pp) / (2.0 * babs);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // J = [[c, s e], [-s conj(e), c]] on the (p, q) plane; H <- J* H J.
        const Complex se = s * e;
        const Complex sec = s * std::conj(e);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hkp = h(k, p);
          const Complex hkq = h(k, q);
          h(k, p) = c * hkp - sec * hkq;
          h(k, q) = se * hkp + c * hkq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex hpk = h(p, k);
          const Complex hqk = h(q, k);
          h(p, k) = c * hpk - se * hqk;
          h(q, k) = sec * hpk + c * hqk;
        }
        h(p, q) = 0.0;
        h(q, p) = 0.0;
        h(p, p) = h(p, p).real();
        h(q, q) = h(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const Complex vkp = v(k, p);
          const Complex vkq = v(k, q);
          v(k, p) = c * vkp - sec * vkq;
          v(k, q) = se * vkp + c * vkq;
        }
      }
    }
    off = off_norm();
  }
  if (off > tol * std::max(hnorm, std::numeric_limits<double>::min())) {
    throw Error(ErrorKind::NoConvergence,
                "Jacobi did not converge in " + std::to_string(max_sweeps) + " sweeps");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return h(a, a).real() > h(b, b).real(); });
  ComplexEig out{ComplexMatrix(n, n), std::vector<double>(n), sweep};
  for (std::size_t c = 0; c < n; ++c) {
    out.values[c] = h(order[c], order[c]).real();
    for (std::size_t k = 0; k < n; ++k) out.vectors(k, c) = v(k, order[c]);
  }
  return out;
}

// ---------------------------------------------------------------------------

struct QuatEig {
  QuatMatrix vectors;           // unitary; A * vectors = vectors * diag(values)
  std::vector<double> values;   // sorted descending
};

namespace detail {

/// Quaternion vector whose adjoint image has first column (v1; v2).
inline QuatVector quaternion_from_adjoint_vector(const ComplexMatrix& vecs, std::size_t col, std::size_t n) {
  QuatVector x(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Complex v1 = vecs(i, col);
    const Complex v2 = vecs(n + i, col);
    // x = v1 - conj(v2) j
    x[i] = Quaternion(v1.real(), v1.imag(), -v2.real(), v2.imag());
  }
  return x;
}

/// Chooses `count` vectors from `candidates`, orthonormalized against `basis`
/// and each other, always taking the candidate with the largest remaining
/// residual (lowest index on ties). Picked vectors are appended to `basis`.
/// Returns false if the best residual falls to `floor` or below first.
inline bool pivoted_fill(std::vector<QuatVector>& basis, std::vector<QuatVector> candidates,
                         std::size_t count, double floor) {
  for (auto& c : candidates) {
    for (const auto& b : basis) {
      const Quaternion coef = inner(b, c);
      for (std::size_t i = 0; i < c.size(); ++i) c[i] = c[i] - b[i] * coef;
    }
  }
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t picked = 0; picked < count; ++picked) {
    std::size_t best = candidates.size();
    double best_norm = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const double nrm = norm(candidates[c]);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best == candidates.size() || best_norm <= floor) return false;
    used[best] = true;
    QuatVector x = candidates[best];
    if (project_out(basis, x) <= 0.0) return false;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const Quaternion coef = inner(x, candidates[c]);
      for (std::size_t i = 0; i < x.size(); ++i) candidates[c][i] = candidates[c][i] - x[i] * coef;
    }
    basis.push_back(std::move(x));
  }
  return true;
}

inline QuatMatrix from_columns(const std::vector<QuatVector>& cols, std::size_t rows) {
  QuatMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m.set_column(j, cols[j]);
  return m;
}

}  // namespace detail

/// Hermitian eigendecomposition of a quaternion matrix through its complex
/// adjoint. The 2n adjoint eigenvalues come in equal pairs; each pair (or a
/// cluster of pairs) yields quaternion eigenvector candidates that are
/// orthonormalized until the cluster's quaternion multiplicity is filled.
/// Eigenvalues are the Rayleigh quotients of the chosen vectors, and each
/// vector is phase-fixed so that its dominant entry is real and positive.
inline QuatEig quat_herm_eig(const QuatMatrix& a, double tol = 1e-10, int max_sweeps = 64) {
  const std::size_t n = a.rows();
  if (!a.is_square()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  if (!is_hermitian(a, tol)) throw Error(ErrorKind::NotHermitian, "quaternion matrix is not Hermitian");
  if (n == 0) return {};

  const ComplexMatrix adj = complex_adjoint(a);
  const ComplexEig ce = complex_herm_eig(adj, tol, max_sweeps);
  const double pair_tol = 1e-9 * std::max(adj.fro_norm(), std::numeric_limits<double>::min());

  // Cluster the 2n sorted adjoint eigenvalues; every cluster must have even size.
  std::vector<std::size_t> starts{0};
  for (std::size_t k = 1; k < 2 * n; ++k) {
    const bool gap = ce.values[k - 1] - ce.values[k] > pair_tol;
    if (gap && (k - starts.back()) % 2 == 0) starts.push_back(k);
  }
  starts.push_back(2 * n);

  std::vector<QuatVector> basis;
  basis.reserve(n);
  for (std::size_t c = 0; c + 1 < starts.size(); ++c) {
    std::vector<QuatVector> candidates;
    for (std::size_t k = starts[c]; k < starts[c + 1]; ++k) {
      candidates.push_back(detail::quaternion_from_adjoint_vector(ce.vectors, k, n));
    }
    const std::size_t want = (starts[c + 1] - starts[c]) / 2;
    if (!detail::pivoted_fill(basis, std::move(candidates), want, 1e-3)) {
      throw Error(ErrorKind::KernelFailure, "eigenvector recovery from the adjoint failed");
    }
  }

  QuatEig out;
  out.values.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Quaternion u = detail::phase_of(basis[j]);
    for (auto& q : basis[j]) q = q * u;
    out.values[j] = inner(basis[j], a * std::span<const Quaternion>(basis[j])).w();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return out.values[x] > out.values[y]; });
  std::vector<double> sorted(n);
  out.vectors = QuatMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    sorted[j] = out.values[order[j]];
    out.vectors.set_column(j, basis[order[j]]);
  }
  out.values = std::move(sorted);
  return out;
}

/// Extends orthonormal columns to a unitary basis of Q^dim using standard
/// basis vectors as candidates (largest residual first).
inline QuatMatrix complete_unitary(std::vector<QuatVector> basis, std::size_t dim) {
  std::vector<QuatVector> candidates;
  for (std::size_t i = 0; i < dim; ++i) {
    QuatVector e(dim);
    e[i] = Quaternion(1.0);
    candidates.push_back(std::move(e));
  }
  const std::size_t missing = dim - basis.size();
  if (!detail::pivoted_fill(basis, std::move(candidates), missing, 1e-8)) {
    throw Error(ErrorKind::CompletionFailure, "quaternion unitary completion failed");
  }
  return detail::from_columns(basis, dim);
}

struct QuatSvd {
  QuatMatrix left;              // p x p unitary (W1)
  std::vector<double> values;   // min(p, q) nonnegative, descending
  QuatMatrix right;             // q x q unitary (W2)
};

/// SVD of a quaternion matrix, W1* G W2 = diag(values). Singular triplets are
/// read from the Hermitian eigendecomposition of [[0, G], [G*, 0]], whose
/// eigenvalues are +-sigma; this avoids squaring small singular values.
/// Values at or below tol * |G|_F get right and left vectors from unitary
/// completion instead of the division G w / sigma.
inline QuatSvd quat_svd(const QuatMatrix& g, double tol = 1e-12, int max_sweeps = 64) {
  const std::size_t p = g.rows();
  const std::size_t q = g.cols();
  const std::size_t t = std::min(p, q);
  QuatSvd out;
  out.values.assign(t, 0.0);
  const double gnorm = g.fro_norm();
  if (t == 0 || gnorm == 0.0) {
    out.left = QuatMatrix::identity(p);
    out.right = QuatMatrix::identity(q);
    return out;
  }

  QuatMatrix k(p + q, p + q);
  k.set_block(0, p, g);
  k.set_block(p, 0, g.conj_transpose());
  const QuatEig ke = quat_herm_eig(k, 1e-10, max_sweeps);

  const double floor = tol * gnorm;
  std::vector<QuatVector> rights;
  std::vector<QuatVector> lefts;
  for (std::size_t i = 0; i < t; ++i) {
    const double sigma = std::max(ke.values[i], 0.0);
    out.values[i] = sigma;
    if (sigma <= floor) continue;
    QuatVector w(q);
    for (std::size_t r = 0; r < q; ++r) w[r] = ke.vectors(p + r, i);
    if (detail::project_out(rights, w) <= 0.0) {
      throw Error(ErrorKind::KernelFailure, "degenerate right singular vector");
    }
    QuatVector u = g * std::span<const Quaternion>(w);
    if (detail::project_out(lefts, u) <= 0.0) {
      throw Error(ErrorKind::KernelFailure, "degenerate left singular vector");
    }
    rights.push_back(std::move(w));
    lefts.push_back(std::move(u));
  }
  out.left = complete_unitary(std::move(lefts), p);
  out.right = complete_unitary(std::move(rights), q);
  return out;
}

}  // namespace dqspectra
