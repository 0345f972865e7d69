#pragma once

// Eigenvalue theory of dual quaternion Hermitian matrices.
//
// eig_hermitian follows the constructive unitary decomposition: diagonalize
// A_st, group its eigenvalues into clusters, remove the off-diagonal blocks
// of the rotated infinitesimal part with an exactly unitary P = I + eps N,
// and finally diagonalize each cluster's Hermitian block C_ii.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/linalg.hpp"
#include "dqspectra/quat_kernel.hpp"
#include "dqspectra/quat_matrix.hpp"
#include "dqspectra/scalars.hpp"

namespace dqspectra {

struct Tolerances {
  double struct_tol = 1e-10;    // Hermitian / structural predicates (relative)
  double residual_tol = 1e-9;   // residual acceptance, scaled by callers
  double zero_tol = 1e-8;       // appreciable vs infinitesimal vs zero (relative)
  double cluster_tol = 1e-8;    // grouping of A_st eigenvalues, times max(1, |A_st|_F)
  double gap_tol = 1e-3;        // minimum gap for the simple-spectrum formulas
  int max_sweeps = 64;          // Jacobi sweep cap
};

/// A run of equal standard-part eigenvalues: value and multiplicity.
struct Cluster {
  double value = 0.0;
  std::size_t multiplicity = 0;
};

struct EigDecomposition {
  DQMatrix U;                          // unitary, columns are eigenvectors
  std::vector<DualNumber> eigenvalues; // cluster-major; descending inside clusters
  std::vector<Cluster> clusters;       // descending standard parts
  double st_norm = 0.0;                // |A_st|_F of the input

  /// Cluster index of every eigenvalue.
  std::vector<std::size_t> cluster_of() const {
    std::vector<std::size_t> id;
    id.reserve(eigenvalues.size());
    for (std::size_t c = 0; c < clusters.size(); ++c) id.insert(id.end(), clusters[c].multiplicity, c);
    return id;
  }
};

struct EigReport {
  double residual_st = 0.0;
  double residual_inf = 0.0;
  double unitarity_st = 0.0;
  double unitarity_inf = 0.0;
};

namespace detail {

inline void require_hermitian(const DQMatrix& a, const Tolerances& cfg) {
  if (!a.is_square()) throw Error(ErrorKind::NotHermitian, "matrix is not square");
  if (!is_hermitian(a, cfg.struct_tol)) throw Error(ErrorKind::NotHermitian, "matrix is not Hermitian");
}

inline QuatEig kernel_eig(const QuatMatrix& a, const Tolerances& cfg) {
  try {
    return quat_herm_eig(a, cfg.struct_tol, cfg.max_sweeps);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotHermitian) throw;
    throw Error(ErrorKind::KernelFailure, e.what());
  }
}

/// Splits descending values into runs whose consecutive gaps are <= tol.
inline std::vector<std::size_t> cluster_starts(std::span<const double> values, double tol) {
  std::vector<std::size_t> starts;
  for (std::size_t k = 0; k < values.size(); ++k) {
    if (k == 0 || values[k - 1] - values[k] > tol) starts.push_back(k);
  }
  starts.push_back(values.size());
  return starts;
}

/// Right-multiplies each column by the unit quaternion that makes the
/// dominant entry of its standard part real and positive.
inline void fix_phases(DQMatrix& u) {
  for (std::size_t j = 0; j < u.cols(); ++j) {
    const QuatVector col = u.st().column(j);
    const Quaternion ph = phase_of(col);
    for (std::size_t i = 0; i < u.rows(); ++i) {
      u.st()(i, j) = u.st()(i, j) * ph;
      u.inf()(i, j) = u.inf()(i, j) * ph;
    }
  }
}

}  // namespace detail

/// Unitary decomposition U* A U = Sigma of a Hermitian dual quaternion matrix.
inline EigDecomposition eig_hermitian(const DQMatrix& a, const Tolerances& cfg = {}) {
  detail::require_hermitian(a, cfg);
  const std::size_t n = a.rows();
  EigDecomposition out;
  out.st_norm = a.st().fro_norm();
  if (n == 0) return out;

  const QuatEig se = detail::kernel_eig(a.st(), cfg);
  const QuatMatrix& u0 = se.vectors;
  const auto starts = detail::cluster_starts(se.values, cfg.cluster_tol * std::max(1.0, out.st_norm));
  const std::size_t nc = starts.size() - 1;

  std::vector<double> lambda(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    double s = 0.0;
    for (std::size_t k = starts[c]; k < starts[c + 1]; ++k) s += se.values[k];
    lambda[c] = s / static_cast<double>(starts[c + 1] - starts[c]);
    out.clusters.push_back({lambda[c], starts[c + 1] - starts[c]});
  }

  // Infinitesimal part in the eigenbasis of A_st: blocks C_ij.
  const QuatMatrix mi = u0.conj_transpose() * a.inf() * u0;

  // N_ij = C_ij / (l_i - l_j) above the block diagonal, -C_ij* / (l_i - l_j) below.
  QuatMatrix nmat(n, n);
  for (std::size_t ci = 0; ci < nc; ++ci) {
    for (std::size_t cj = ci + 1; cj < nc; ++cj) {
      const double inv_gap = 1.0 / (lambda[ci] - lambda[cj]);
      for (std::size_t r = starts[ci]; r < starts[ci + 1]; ++r) {
        for (std::size_t c = starts[cj]; c < starts[cj + 1]; ++c) {
          const Quaternion v = inv_gap * mi(r, c);
          nmat(r, c) = v;
          nmat(c, r) = -v.conj();
        }
      }
    }
  }

  QuatMatrix vblk(n, n);
  out.eigenvalues.reserve(n);
  for (std::size_t c = 0; c < nc; ++c) {
    const std::size_t k0 = starts[c];
    const std::size_t k = starts[c + 1] - k0;
    const QuatEig be = detail::kernel_eig(mi.block(k0, k0, k, k), cfg);
    vblk.set_block(k0, k0, be.vectors);
    for (double v : be.values) out.eigenvalues.emplace_back(lambda[c], v);
  }

  // U = (P S)* V with S = U0*, P = I + eps N: U = U0 V - eps U0 N V.
  const QuatMatrix st = u0 * vblk;
  const QuatMatrix inf = (-1.0) * (u0 * nmat * vblk);
  out.U = DQMatrix(st, inf);
  detail::fix_phases(out.U);
  return out;
}

/// First-order formulas for a simple standard spectrum:
///   l_I,i = x_i* A_I x_i,
///   x_I,i = sum_{j != i} x_j x_j* (A_I - l_I,i) x_i / (l_i - l_j).
inline EigDecomposition eig_simple(const DQMatrix& a, const Tolerances& cfg = {}) {
  detail::require_hermitian(a, cfg);
  const std::size_t n = a.rows();
  EigDecomposition out;
  out.st_norm = a.st().fro_norm();
  if (n == 0) return out;

  const QuatEig se = detail::kernel_eig(a.st(), cfg);
  for (std::size_t k = 1; k < n; ++k) {
    if (se.values[k - 1] - se.values[k] <= cfg.gap_tol) {
      throw Error(ErrorKind::SpectrumNotSimple,
                  "standard eigenvalues " + std::to_string(k - 1) + " and " + std::to_string(k) +
                      " are closer than the gap tolerance");
    }
  }

  std::vector<QuatVector> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = se.vectors.column(i);

  out.U = DQMatrix(se.vectors, QuatMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i) {
    const QuatVector ax = a.inf() * std::span<const Quaternion>(x[i]);
    const double li = inner(x[i], ax).w();
    QuatVector y(n);
    for (std::size_t r = 0; r < n; ++r) y[r] = ax[r] - li * x[i][r];
    QuatVector xi(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      const Quaternion coef = (1.0 / (se.values[i] - se.values[j])) * inner(x[j], y);
      for (std::size_t r = 0; r < n; ++r) xi[r] = xi[r] + x[j][r] * coef;
    }
    out.U.inf().set_column(i, xi);
    out.eigenvalues.emplace_back(se.values[i], li);
    out.clusters.push_back({se.values[i], 1});
  }
  return out;
}

/// (x* x)^{-1} (x* A x).
inline DualQuaternion rayleigh(const DQMatrix& a, std::span<const DualQuaternion> x) {
  if (a.rows() != a.cols() || a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "rayleigh quotient: shape mismatch");
  }
  const DualQuaternion xx = inner(x, x);
  if (!(xx.st().w() > 0.0)) throw Error(ErrorKind::NotAppreciable, "vector is not appreciable");
  return inverse(xx) * inner(x, a * x);
}

struct EigpairCheck {
  double residual_st = 0.0;     // |A_st x_st - x_st l_st|
  double residual_inf = 0.0;    // |A_I x_st + A_st x_I - x_I l_st - x_st l_I|
  double lambda_inf = 0.0;      // x_st* A_I x_st / x_st* x_st
  double lambda_inf_gap = 0.0;  // |lambda_inf - l_I|
  bool ok = false;
};

/// Checks the two graded eigen-equations separately and recomputes the
/// infinitesimal part of the eigenvalue from x_st alone.
inline EigpairCheck verify_eigenpair(const DQMatrix& a, DualNumber lambda, std::span<const DualQuaternion> x,
                                     double tol) {
  if (a.rows() != a.cols() || a.cols() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch, "verify_eigenpair: shape mismatch");
  }
  if (!is_appreciable(x)) throw Error(ErrorKind::NotAppreciable, "eigenvector is not appreciable");
  const std::size_t n = x.size();
  QuatVector xs(n), xi(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = x[i].st();
    xi[i] = x[i].inf();
  }
  const QuatVector as_xs = a.st() * std::span<const Quaternion>(xs);
  const QuatVector ai_xs = a.inf() * std::span<const Quaternion>(xs);
  const QuatVector as_xi = a.st() * std::span<const Quaternion>(xi);
  double r0 = 0.0;
  double r1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    r0 += (as_xs[i] - lambda.st() * xs[i]).norm2();
    r1 += (ai_xs[i] + as_xi[i] - lambda.st() * xi[i] - lambda.inf() * xs[i]).norm2();
  }
  EigpairCheck out;
  out.residual_st = std::sqrt(r0);
  out.residual_inf = std::sqrt(r1);
  out.lambda_inf = inner(xs, ai_xs).w() / inner(xs, xs).w();
  out.lambda_inf_gap = std::abs(out.lambda_inf - lambda.inf());
  out.ok = out.residual_st <= tol && out.residual_inf <= tol && out.lambda_inf_gap <= tol;
  return out;
}

enum class Definiteness { PositiveDefinite, PositiveSemidefinite, Other };

inline const char* to_string(Definiteness d) noexcept {
  switch (d) {
    case Definiteness::PositiveDefinite: return "PositiveDefinite";
    case Definiteness::PositiveSemidefinite: return "PositiveSemidefinite";
    case Definiteness::Other: return "Indefinite/Other";
  }
  return "Indefinite/Other";
}

/// Eigenvalue-based definiteness. Parts with magnitude <= zero_tol are read
/// as exact zeros first; with zero_tol = 0 this is the exact total order.
inline Definiteness classify_definiteness(const EigDecomposition& eig, double zero_tol = 0.0) {
  bool definite = true;
  for (const DualNumber& l : eig.eigenvalues) {
    const double s = std::abs(l.st()) <= zero_tol ? 0.0 : l.st();
    const double i = std::abs(l.inf()) <= zero_tol ? 0.0 : l.inf();
    const DualNumber snapped(detail::unchecked, s, i);
    if (snapped < DualNumber{}) return Definiteness::Other;
    if (!(s > 0.0)) definite = false;
  }
  return definite ? Definiteness::PositiveDefinite : Definiteness::PositiveSemidefinite;
}

/// Eigenvectors from different clusters (distinct standard parts) are orthogonal.
inline bool check_orthogonality(const EigDecomposition& eig, double tol) {
  const auto id = eig.cluster_of();
  const std::size_t n = eig.U.cols();
  if (id.size() != n) return false;
  std::vector<DQVector> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = eig.U.column(j);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (id[i] == id[j]) continue;
      const DualQuaternion ip = inner(cols[i], cols[j]);
      if (ip.st().abs() > tol || ip.inf().abs() > tol) return false;
    }
  }
  return true;
}

/// |U* A U - diag(eigenvalues)| and |U* U - I|, gradewise.
inline EigReport eig_report(const DQMatrix& a, const DQMatrix& u, std::span<const DualNumber> eigenvalues) {
  const DQMatrix uh = conj_transpose(u);
  const DualNumber* d = eigenvalues.data();
  const DualNorm res = dual_fro_norm(uh * a * u - DQMatrix::diagonal({d, eigenvalues.size()}));
  const DualNorm uni = dual_fro_norm(uh * u - DQMatrix::identity(u.cols()));
  return {res.st, res.inf, uni.st, uni.inf};
}

inline EigReport eig_report(const DQMatrix& a, const EigDecomposition& eig) {
  return eig_report(a, eig.U, eig.eigenvalues);
}

/// Dual-number projection of diag(U* A U): what a factor U alone implies.
inline std::vector<DualNumber> implied_eigenvalues(const DQMatrix& a, const DQMatrix& u) {
  const DQMatrix s = conj_transpose(u) * a * u;
  std::vector<DualNumber> d;
  for (std::size_t i = 0; i < s.rows(); ++i) d.push_back(s(i, i).real_part());
  return d;
}

struct OracleResult {
  std::vector<double> hs;
  std::vector<double> deviations;  // max |eig(A_st + h A_I) - (l_st + h l_I)| per h
  double ratio = 0.0;              // deviations[0] / deviations[1]
  bool pass = false;
};

/// Finite-difference check of the infinitesimal eigenvalue parts: the sorted
/// eigenvalues of the quaternion matrix A_st + h A_I must match
/// l_st + h l_I up to O(h^2). Passes when the error decays at least by
/// `min_ratio` between the first two steps, or all errors are <= tol.
inline OracleResult fd_oracle(const DQMatrix& a, std::span<const double> hs, const Tolerances& cfg = {},
                              double min_ratio = 50.0) {
  const EigDecomposition eig = eig_hermitian(a, cfg);
  OracleResult out;
  out.hs.assign(hs.begin(), hs.end());
  for (double h : hs) {
    const QuatEig pe = detail::kernel_eig(a.st() + h * a.inf(), cfg);
    std::vector<double> predicted;
    for (const DualNumber& l : eig.eigenvalues) predicted.push_back(l.st() + h * l.inf());
    std::sort(predicted.begin(), predicted.end(), std::greater<>());
    double dev = 0.0;
    for (std::size_t k = 0; k < predicted.size(); ++k) dev = std::max(dev, std::abs(pe.values[k] - predicted[k]));
    out.deviations.push_back(dev);
  }
  const bool all_small = std::all_of(out.deviations.begin(), out.deviations.end(),
                                     [&](double d) { return d <= cfg.residual_tol; });
  if (out.deviations.size() >= 2) {
    out.ratio = out.deviations[1] > 0.0 ? out.deviations[0] / out.deviations[1]
                                        : std::numeric_limits<double>::infinity();
  }
  out.pass = all_small || (out.deviations.size() >= 2 && out.ratio >= min_ratio);
  return out;
}

}  // namespace dqspectra
