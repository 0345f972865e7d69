#pragma once

// Dense matrices and vectors over dual quaternions, stored by grade: the
// standard part A_st and the infinitesimal part A_I are separate quaternion
// matrices, A = A_st + A_I eps.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/quat_matrix.hpp"
#include "dqspectra/scalars.hpp"

namespace dqspectra {

using DQVector = std::vector<DualQuaternion>;

class DQMatrix {
 public:
  DQMatrix() = default;
  DQMatrix(std::size_t rows, std::size_t cols) : st_(rows, cols), inf_(rows, cols) {}
  DQMatrix(QuatMatrix st, QuatMatrix inf) : st_(std::move(st)), inf_(std::move(inf)) {
    if (st_.rows() != inf_.rows() || st_.cols() != inf_.cols()) {
      throw Error(ErrorKind::DimensionMismatch, "standard and infinitesimal parts differ in shape");
    }
  }
  explicit DQMatrix(QuatMatrix st) : st_(std::move(st)), inf_(st_.rows(), st_.cols()) {}

  static DQMatrix identity(std::size_t n) { return DQMatrix(QuatMatrix::identity(n)); }

  /// Diagonal matrix with dual-number entries.
  static DQMatrix diagonal(std::span<const DualNumber> d) {
    DQMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t rows() const noexcept { return st_.rows(); }
  std::size_t cols() const noexcept { return st_.cols(); }
  bool is_square() const noexcept { return rows() == cols(); }

  const QuatMatrix& st() const noexcept { return st_; }
  const QuatMatrix& inf() const noexcept { return inf_; }
  QuatMatrix& st() noexcept { return st_; }
  QuatMatrix& inf() noexcept { return inf_; }

  DualQuaternion operator()(std::size_t i, std::size_t j) const { return {st_(i, j), inf_(i, j)}; }
  void set(std::size_t i, std::size_t j, const DualQuaternion& q) {
    st_(i, j) = q.st();
    inf_(i, j) = q.inf();
  }

  DQVector column(std::size_t j) const {
    DQVector v(rows());
    for (std::size_t i = 0; i < rows(); ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, std::span<const DualQuaternion> v) {
    for (std::size_t i = 0; i < rows(); ++i) set(i, j, v[i]);
  }

  DQMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    return {st_.block(r0, c0, nr, nc), inf_.block(r0, c0, nr, nc)};
  }
  void set_block(std::size_t r0, std::size_t c0, const DQMatrix& b) {
    st_.set_block(r0, c0, b.st());
    inf_.set_block(r0, c0, b.inf());
  }

  friend bool operator==(const DQMatrix&, const DQMatrix&) = default;

 private:
  QuatMatrix st_;
  QuatMatrix inf_;
};

/// A* = A_st* + A_I* eps.
inline DQMatrix conj_transpose(const DQMatrix& a) {
  return {a.st().conj_transpose(), a.inf().conj_transpose()};
}

inline DQMatrix operator+(const DQMatrix& a, const DQMatrix& b) {
  return {a.st() + b.st(), a.inf() + b.inf()};
}
inline DQMatrix operator-(const DQMatrix& a, const DQMatrix& b) {
  return {a.st() - b.st(), a.inf() - b.inf()};
}
inline DQMatrix operator*(double s, const DQMatrix& a) { return {s * a.st(), s * a.inf()}; }

/// Graded product: (AB)_st = A_st B_st, (AB)_I = A_st B_I + A_I B_st.
inline DQMatrix matmul(const DQMatrix& a, const DQMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "dual quaternion matrix product: inner dimensions differ");
  }
  return {a.st() * b.st(), a.st() * b.inf() + a.inf() * b.st()};
}
inline DQMatrix operator*(const DQMatrix& a, const DQMatrix& b) { return matmul(a, b); }

inline DQVector operator*(const DQMatrix& a, std::span<const DualQuaternion> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::DimensionMismatch, "matrix-vector product");
  DQVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    DualQuaternion s;
    for (std::size_t k = 0; k < a.cols(); ++k) s = s + a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

/// x* y = sum conj(x_i) y_i.
inline DualQuaternion inner(std::span<const DualQuaternion> x, std::span<const DualQuaternion> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "inner product: length mismatch");
  DualQuaternion s;
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i].conj() * y[i];
  return s;
}

inline bool is_appreciable(std::span<const DualQuaternion> x) noexcept {
  return std::any_of(x.begin(), x.end(), [](const DualQuaternion& q) { return q.is_appreciable(); });
}

/// Column j scaled on the right by a dual number (which commutes with everything).
inline void scale_column(DQMatrix& a, std::size_t j, DualNumber d) {
  for (std::size_t i = 0; i < a.rows(); ++i) a.set(i, j, a(i, j) * DualQuaternion(d));
}

struct DualNorm {
  double st = 0.0;
  double inf = 0.0;
};

/// Frobenius norms of the two grades, each over all four quaternion components.
inline DualNorm dual_fro_norm(const DQMatrix& a) noexcept { return {a.st().fro_norm(), a.inf().fro_norm()}; }

/// Hermitian to `tol` relative to max(1, |A_st|_F + |A_I|_F), gradewise.
inline bool is_hermitian(const DQMatrix& a, double tol) {
  if (!a.is_square()) return false;
  const DualNorm n = dual_fro_norm(a);
  const DualNorm d = dual_fro_norm(a - conj_transpose(a));
  const double bound = tol * std::max(1.0, n.st + n.inf);
  return d.st <= bound && d.inf <= bound;
}

inline bool is_unitary(const DQMatrix& a, double tol) {
  if (!a.is_square()) return false;
  const DualNorm r = dual_fro_norm(conj_transpose(a) * a - DQMatrix::identity(a.rows()));
  return r.st <= tol && r.inf <= tol;
}

/// Columns are unit and pairwise orthogonal: |A*A - I| <= tol in both grades.
inline bool is_partially_unitary(const DQMatrix& a, double tol) {
  const DualNorm r = dual_fro_norm(conj_transpose(a) * a - DQMatrix::identity(a.cols()));
  return r.st <= tol && r.inf <= tol;
}

namespace detail {

inline void subtract_projection(DQVector& x, const DQVector& v) {
  const DualQuaternion c = inner(v, x);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = x[i] - v[i] * c;
}

/// Dual norm sqrt(x* x), from the real parts of the inner product.
inline DualNumber dual_norm(const DQVector& x) { return dual_sqrt(inner(x, x).real_part()); }

inline double st_norm(const DQVector& x) noexcept {
  double s = 0.0;
  for (const auto& q : x) s += q.st().norm2();
  return std::sqrt(s);
}

inline void normalize(DQVector& x) {
  const DualQuaternion inv = inverse(DualQuaternion(dual_norm(x)));
  for (auto& q : x) q = q * inv;
}

/// Greedy modified Gram-Schmidt over dual quaternions. Each step takes the
/// remaining candidate with the largest standard-part residual; a candidate
/// whose residual standard norm is <= tol is not appreciable and cannot be
/// normalized. The chosen vector is re-orthogonalized once before use.
inline bool dual_pivoted_fill(std::vector<DQVector>& basis, std::vector<DQVector> candidates,
                              std::size_t count, double tol) {
  for (auto& c : candidates)
    for (const auto& b : basis) subtract_projection(c, b);
  std::vector<bool> used(candidates.size(), false);
  for (std::size_t picked = 0; picked < count; ++picked) {
    std::size_t best = candidates.size();
    double best_norm = -1.0;
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      if (used[c]) continue;
      const double nrm = st_norm(candidates[c]);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best == candidates.size() || best_norm <= tol) return false;
    used[best] = true;
    DQVector x = candidates[best];
    for (const auto& b : basis) subtract_projection(x, b);
    normalize(x);
    for (std::size_t c = 0; c < candidates.size(); ++c)
      if (!used[c]) subtract_projection(candidates[c], x);
    basis.push_back(std::move(x));
  }
  return true;
}

}  // namespace detail

/// Extends a partially unitary m x r matrix to an m x m unitary matrix whose
/// first r columns are the input columns, unchanged. New columns come from
/// the standard basis e_1..e_m by modified Gram-Schmidt over dual quaternions.
inline DQMatrix mgs_complete(const DQMatrix& v1, double tol = 1e-10) {
  const std::size_t m = v1.rows();
  const std::size_t r = v1.cols();
  if (r > m) throw Error(ErrorKind::NotPartiallyUnitary, "more columns than rows");
  if (!is_partially_unitary(v1, tol * std::max<std::size_t>(1, m))) {
    throw Error(ErrorKind::NotPartiallyUnitary, "columns are not orthonormal");
  }
  std::vector<DQVector> basis;
  basis.reserve(m);
  for (std::size_t j = 0; j < r; ++j) basis.push_back(v1.column(j));
  std::vector<DQVector> candidates;
  for (std::size_t i = 0; i < m; ++i) {
    DQVector e(m);
    e[i] = DualQuaternion(Quaternion(1.0));
    candidates.push_back(std::move(e));
  }
  if (!detail::dual_pivoted_fill(basis, std::move(candidates), m - r, std::max(tol, 1e-8))) {
    throw Error(ErrorKind::CompletionFailure, "not enough appreciable candidates");
  }
  DQMatrix out(m, m);
  out.set_block(0, 0, v1);
  for (std::size_t j = r; j < m; ++j) out.set_column(j, basis[j]);
  return out;
}

/// Orthonormalizes the columns of x (in order) by dual modified Gram-Schmidt.
inline DQMatrix orthonormalize_columns(const DQMatrix& x) {
  std::vector<DQVector> basis;
  for (std::size_t j = 0; j < x.cols(); ++j) {
    DQVector c = x.column(j);
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) detail::subtract_projection(c, b);
    if (!is_appreciable(c)) throw Error(ErrorKind::NotAppreciable, "column is not appreciable after projection");
    detail::normalize(c);
    basis.push_back(std::move(c));
  }
  DQMatrix out(x.rows(), x.cols());
  for (std::size_t j = 0; j < basis.size(); ++j) out.set_column(j, basis[j]);
  return out;
}

}  // namespace dqspectra
