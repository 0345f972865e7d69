#pragma once

// Perfect Hermitian matrices, their square roots, and the singular value
// decomposition of general dual quaternion matrices.
//
// A PSD Hermitian A is perfect (has a PSD Hermitian square root) exactly when
// every eigenvalue with zero standard part also has zero infinitesimal part.
// Sufficiency: the root U diag(sqrt(l)) U* below squares back to A. Necessity:
// if L is such a root with unique eigenvalue form m, then L^2 has eigenvalues
// m^2, and m_st = 0 forces m^2 = 0 because eps^2 = 0.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "dqspectra/error.hpp"
#include "dqspectra/linalg.hpp"
#include "dqspectra/quat_kernel.hpp"
#include "dqspectra/scalars.hpp"
#include "dqspectra/spectral.hpp"

namespace dqspectra {

namespace detail {

/// Eigenvalue form of a PSD Hermitian matrix, checked for perfectness.
/// Returns the decomposition and the zero threshold used.
struct PsdSpectrum {
  EigDecomposition eig;
  double zero = 0.0;
  bool perfect = true;
};

inline PsdSpectrum psd_spectrum(const DQMatrix& a, const Tolerances& cfg) {
  PsdSpectrum out{eig_hermitian(a, cfg), 0.0, true};
  out.zero = cfg.zero_tol * std::max(1.0, out.eig.st_norm);
  if (classify_definiteness(out.eig, out.zero) == Definiteness::Other) {
    throw Error(ErrorKind::NotPSD, "matrix has a negative eigenvalue");
  }
  for (const DualNumber& l : out.eig.eigenvalues) {
    if (std::abs(l.st()) <= out.zero && std::abs(l.inf()) > out.zero) out.perfect = false;
  }
  return out;
}

}  // namespace detail

/// True iff the PSD Hermitian matrix has a PSD Hermitian square root.
inline bool is_perfect(const DQMatrix& a, const Tolerances& cfg = {}) {
  return detail::psd_spectrum(a, cfg).perfect;
}

/// L = U diag(sqrt(l_i) + l_I,i / (2 sqrt(l_i)) eps, ..., 0) U*, with L^2 = A.
inline DQMatrix psd_sqrt(const DQMatrix& a, const Tolerances& cfg = {}) {
  const auto ps = detail::psd_spectrum(a, cfg);
  if (!ps.perfect) {
    throw Error(ErrorKind::NotPerfect,
                "an eigenvalue has zero standard part but nonzero infinitesimal part; no square root exists");
  }
  std::vector<DualNumber> roots;
  for (const DualNumber& l : ps.eig.eigenvalues) {
    roots.push_back(l.st() > ps.zero ? dual_sqrt(l) : DualNumber{});
  }
  const DQMatrix& u = ps.eig.U;
  return u * DQMatrix::diagonal(roots) * conj_transpose(u);
}

struct SvdDecomposition {
  DQMatrix V;                      // m x m unitary (left factor)
  DQMatrix U;                      // n x n unitary (right factor)
  std::vector<DualNumber> sigma;   // min(m, n) singular values, descending
  std::size_t rank_t = 0;          // positive singular values
  std::size_t app_rank_r = 0;      // appreciable positive singular values
};

/// The m x n matrix [[diag(sigma), 0], [0, 0]].
inline DQMatrix singular_matrix(std::size_t m, std::size_t n, std::span<const DualNumber> sigma) {
  DQMatrix s(m, n);
  for (std::size_t i = 0; i < sigma.size() && i < m && i < n; ++i) s.set(i, i, sigma[i]);
  return s;
}

/// V* B U = [[Sigma_t, 0], [0, 0]].
///
/// A = B* B is diagonalized; its eigenvalues with appreciable standard part
/// give Sigma_r = sqrt(Lambda_r) and V1 = B U1 Sigma_r^{-1}. V1 is completed
/// to a unitary V; the remaining block V2* B U2 is purely infinitesimal,
/// G eps, and a quaternion SVD of G supplies the infinitesimal singular values.
inline SvdDecomposition svd(const DQMatrix& b, const Tolerances& cfg = {}) {
  const std::size_t m = b.rows();
  const std::size_t n = b.cols();
  const DualNorm bn = dual_fro_norm(b);
  const double b_scale = bn.st + bn.inf;

  DQMatrix a = conj_transpose(b) * b;
  a = 0.5 * (a + conj_transpose(a));
  const EigDecomposition eig = eig_hermitian(a, cfg);

  const double app_zero = cfg.zero_tol * eig.st_norm;
  std::size_t r = 0;
  while (r < n && eig.eigenvalues[r].st() > app_zero) ++r;
  const DualNorm an = dual_fro_norm(a);
  const double vanish_tol = std::sqrt(cfg.zero_tol) * std::max(1.0, an.st + an.inf);
  for (std::size_t k = r; k < n; ++k) {
    if (std::abs(eig.eigenvalues[k].inf()) > vanish_tol) {
      throw Error(ErrorKind::InternalAssertion,
                  "eigenvalue of B*B with zero standard part has a nonzero infinitesimal part");
    }
  }

  SvdDecomposition out;
  std::vector<DualNumber> sigma_r;
  for (std::size_t k = 0; k < r; ++k) sigma_r.push_back(dual_sqrt(eig.eigenvalues[k]));

  DQMatrix v1 = b * eig.U.block(0, 0, n, r);
  for (std::size_t k = 0; k < r; ++k) scale_column(v1, k, inverse(sigma_r[k]));
  DQMatrix v;
  try {
    v = mgs_complete(v1, 1e-6);
  } catch (const Error& e) {
    throw Error(ErrorKind::KernelFailure, std::string("left factor completion: ") + e.what());
  }

  DQMatrix vhat = v;
  DQMatrix uhat = eig.U;
  std::vector<double> tail;
  if (m > r && n > r) {
    const DQMatrix v2 = v.block(0, r, m, m - r);
    const DQMatrix u2 = eig.U.block(0, r, n, n - r);
    const DQMatrix rest = conj_transpose(v2) * b * u2;
    const QuatSvd gs = quat_svd(rest.inf(), 1e-12, cfg.max_sweeps);
    DQMatrix w1 = DQMatrix::identity(m);
    w1.st().set_block(r, r, gs.left);
    DQMatrix w2 = DQMatrix::identity(n);
    w2.st().set_block(r, r, gs.right);
    vhat = v * w1;
    uhat = eig.U * w2;
    tail = gs.values;
  }

  out.sigma = sigma_r;
  for (double d : tail) out.sigma.emplace_back(0.0, d);
  out.app_rank_r = r;
  out.rank_t = r;
  for (double d : tail)
    if (d > cfg.zero_tol * b_scale) ++out.rank_t;
  out.V = std::move(vhat);
  out.U = std::move(uhat);
  return out;
}

struct Ranks {
  std::size_t rank_t = 0;
  std::size_t app_rank_r = 0;
  std::size_t rank_st = 0;   // rank of B_st from its own quaternion SVD
};

/// Rank and appreciable rank, plus the rank of B_st computed independently.
inline Ranks ranks(const DQMatrix& b, const Tolerances& cfg = {}) {
  const SvdDecomposition s = svd(b, cfg);
  Ranks out{s.rank_t, s.app_rank_r, 0};
  const double st_norm = b.st().fro_norm();
  if (st_norm > 0.0) {
    const QuatSvd q = quat_svd(b.st(), 1e-12, cfg.max_sweeps);
    out.rank_st = static_cast<std::size_t>(
        std::count_if(q.values.begin(), q.values.end(), [&](double v) { return v > cfg.zero_tol * st_norm; }));
  }
  return out;
}

/// Truncated SVD: V diag(mu_1..mu_k, 0, ...) U*.
inline DQMatrix low_rank_approx(const DQMatrix& b, std::size_t k, const Tolerances& cfg = {}) {
  if (k > std::min(b.rows(), b.cols())) {
    throw Error(ErrorKind::BadRank, "k exceeds min(m, n)");
  }
  const SvdDecomposition s = svd(b, cfg);
  std::vector<DualNumber> kept(s.sigma.begin(), s.sigma.begin() + static_cast<std::ptrdiff_t>(k));
  return s.V * singular_matrix(b.rows(), b.cols(), kept) * conj_transpose(s.U);
}

}  // namespace dqspectra
