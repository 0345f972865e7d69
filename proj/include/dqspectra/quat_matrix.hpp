#pragma once

// Dense quaternion matrices (row-major) and the few vector helpers shared by
// the kernel and the dual-level algorithms.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/scalars.hpp"

namespace dqspectra {

using QuatVector = std::vector<Quaternion>;

class QuatMatrix {
 public:
  QuatMatrix() = default;
  QuatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static QuatMatrix identity(std::size_t n) {
    QuatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Quaternion(1.0);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Quaternion& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
  const Quaternion& operator()(std::size_t i, std::size_t j) const noexcept {
    return data_[i * cols_ + j];
  }

  std::span<const Quaternion> data() const noexcept { return data_; }

  QuatVector column(std::size_t j) const {
    QuatVector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_column(std::size_t j, std::span<const Quaternion> v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  /// Copy of the block starting at (r0, c0) with the given shape.
  QuatMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    QuatMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }
  void set_block(std::size_t r0, std::size_t c0, const QuatMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  QuatMatrix conj_transpose() const {
    QuatMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j).conj();
    return t;
  }

  double fro_norm() const noexcept {
    double s = 0.0;
    for (const auto& q : data_) s += q.norm2();
    return std::sqrt(s);
  }

  friend bool operator==(const QuatMatrix&, const QuatMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> data_;
};

namespace detail {
inline void require_same_shape(const QuatMatrix& a, const QuatMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorKind::DimensionMismatch, std::string(op) + ": shapes differ");
  }
}
}  // namespace detail

inline QuatMatrix operator+(const QuatMatrix& a, const QuatMatrix& b) {
  detail::require_same_shape(a, b, "quaternion matrix sum");
  QuatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
  return c;
}

inline QuatMatrix operator-(const QuatMatrix& a, const QuatMatrix& b) {
  detail::require_same_shape(a, b, "quaternion matrix difference");
  QuatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
  return c;
}

inline QuatMatrix operator*(double s, const QuatMatrix& a) {
  QuatMatrix c(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
  return c;
}

inline QuatMatrix operator*(const QuatMatrix& a, const QuatMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::DimensionMismatch, "quaternion matrix product: inner dimensions differ");
  }
  QuatMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Quaternion aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = c(i, j) + aik * b(k, j);
    }
  }
  return c;
}

inline QuatVector operator*(const QuatMatrix& a, std::span<const Quaternion> x) {
  if (a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "matrix-vector product: length mismatch");
  }
  QuatVector y(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Quaternion s;
    for (std::size_t k = 0; k < a.cols(); ++k) s = s + a(i, k) * x[k];
    y[i] = s;
  }
  return y;
}

/// x* y = sum conj(x_i) y_i.
inline Quaternion inner(std::span<const Quaternion> x, std::span<const Quaternion> y) {
  if (x.size() != y.size()) throw Error(ErrorKind::DimensionMismatch, "inner product: length mismatch");
  Quaternion s;
  for (std::size_t i = 0; i < x.size(); ++i) s = s + x[i].conj() * y[i];
  return s;
}

inline double norm(std::span<const Quaternion> x) noexcept {
  double s = 0.0;
  for (const auto& q : x) s += q.norm2();
  return std::sqrt(s);
}

/// Hermitian to a tolerance relative to max(1, |A|_F).
inline bool is_hermitian(const QuatMatrix& a, double tol) {
  if (!a.is_square()) return false;
  return (a - a.conj_transpose()).fro_norm() <= tol * std::max(1.0, a.fro_norm());
}

namespace detail {

/// Index of the entry of largest magnitude; ties go to the lowest index.
inline std::size_t dominant_index(std::span<const Quaternion> x) noexcept {
  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double m = x[i].norm2();
    if (m > best_mag) {
      best_mag = m;
      best = i;
    }
  }
  return best;
}

/// Unit quaternion u such that x_p * u is real and positive for the dominant
/// entry x_p. Identity when x is zero.
inline Quaternion phase_of(std::span<const Quaternion> x) {
  if (x.empty()) return Quaternion(1.0);
  const Quaternion& xp = x[dominant_index(x)];
  const double a = xp.abs();
  if (a == 0.0) return Quaternion(1.0);
  return (1.0 / a) * xp.conj();
}

/// Orthonormalizes `cand` against `basis` (two projection passes) and returns
/// the residual norm before normalization. `cand` is left normalized when the
/// residual is positive.
inline double project_out(std::vector<QuatVector> const& basis, QuatVector& cand) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) {
      const Quaternion c = inner(b, cand);
      for (std::size_t i = 0; i < cand.size(); ++i) cand[i] = cand[i] - b[i] * c;
    }
  }
  const double nrm = norm(cand);
  if (nrm > 0.0) {
    for (auto& q : cand) q = q * (1.0 / nrm);
  }
  return nrm;
}

}  // namespace detail

}  // namespace dqspectra
