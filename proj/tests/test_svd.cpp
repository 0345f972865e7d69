#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace dqt;

namespace {

template <class Fn>
void expect_error(ErrorKind kind, Fn&& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(kind);
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

DQMatrix eps_identity(std::size_t n) { return dq(QuatMatrix(n, n), QuatMatrix::identity(n)); }

void expect_svd_ok(const DQMatrix& b, const SvdDecomposition& s) {
  const std::size_t m = b.rows(), n = b.cols();
  const DualNorm bn = dual_fro_norm(b);
  const double dim = static_cast<double>(std::max(m, n));
  const DualNorm res = dual_fro_norm(conj_transpose(s.V) * b * s.U - singular_matrix(m, n, s.sigma));
  EXPECT_LE(std::max(res.st, res.inf), 1e-9 * dim * (1 + bn.st + bn.inf));
  EXPECT_TRUE(is_unitary(s.V, 1e-10 * dim));
  EXPECT_TRUE(is_unitary(s.U, 1e-10 * dim));
  ASSERT_EQ(s.sigma.size(), std::min(m, n));
  for (std::size_t k = 0; k < s.sigma.size(); ++k) {
    EXPECT_GE(s.sigma[k], DualNumber());
    if (k) {
      EXPECT_GE(s.sigma[k - 1], s.sigma[k]);
    }
  }
}

}  // namespace

TEST(PsdSqrt, Examples) {
  const DualNumber d[2] = {{4, 4}, {1, 0}};
  const DQMatrix l = psd_sqrt(DQMatrix::diagonal(d));
  EXPECT_TRUE(near(l(0, 0).real_part(), {2, 1}, 1e-14));
  EXPECT_TRUE(near(l(1, 1).real_part(), {1, 0}, 1e-14));
  EXPECT_LE(dqdist(l(0, 1), {}), 1e-14);

  for (std::size_t n : {1u, 2u, 4u}) {
    expect_error(ErrorKind::NotPerfect, [&] { (void)psd_sqrt(eps_identity(n)); });
  }

  // [[1, eps], [eps, 0]] = B* B for B = [1, eps] is idempotent
  const DQMatrix a = dq(real_matrix({{1, 0}, {0, 0}}), real_matrix({{0, 1}, {1, 0}}));
  EXPECT_LE(max_abs(psd_sqrt(a) - a), 1e-12);
}

TEST(PsdSqrt, RejectsIndefinite) {
  expect_error(ErrorKind::NotPSD, [] { (void)psd_sqrt(dq(real_matrix({{1, 0}, {0, -1}}))); });
  expect_error(ErrorKind::NotPSD, [] { (void)psd_sqrt(dq(QuatMatrix(1, 1), real_matrix({{-1}}))); });
}

TEST(PsdSqrt, RandomGramMatrices) {
  Rng rng(41);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = 1 + rng.bits() % 6;
    const std::size_t m = 1 + rng.bits() % 6;
    const DQMatrix a = random_psd(m, n, rng);
    EXPECT_TRUE(is_perfect(a));
    const DQMatrix l = psd_sqrt(a);
    const DualNorm an = dual_fro_norm(a);
    const DualNorm res = dual_fro_norm(l * l - a);
    EXPECT_LE(std::max(res.st, res.inf), 1e-9 * static_cast<double>(n) * (an.st + an.inf));
    EXPECT_TRUE(is_hermitian(l, 1e-12));
  }
}

TEST(IsPerfect, Examples) {
  EXPECT_FALSE(is_perfect(eps_identity(3)));
  EXPECT_TRUE(is_perfect(DQMatrix(3, 3)));
}

TEST(Svd, PureInfinitesimalScalar) {
  const DQMatrix b = dq(QuatMatrix(1, 1), real_matrix({{1}}));
  const SvdDecomposition s = svd(b);
  ASSERT_EQ(s.sigma.size(), 1u);
  EXPECT_TRUE(near(s.sigma[0], DualNumber::epsilon(), 1e-14));
  EXPECT_EQ(s.rank_t, 1u);
  EXPECT_EQ(s.app_rank_r, 0u);
  expect_svd_ok(b, s);
}

TEST(Svd, Diagonal) {
  const DualNumber d[2] = {{3, 1}, {2, 0}};
  const DQMatrix b = DQMatrix::diagonal(d);
  const SvdDecomposition s = svd(b);
  EXPECT_TRUE(near(s.sigma[0], {3, 1}, 1e-13));
  EXPECT_TRUE(near(s.sigma[1], {2, 0}, 1e-13));
  EXPECT_EQ(s.rank_t, 2u);
  EXPECT_EQ(s.app_rank_r, 2u);
  expect_svd_ok(b, s);
}

TEST(Svd, WideRow) {
  const DQMatrix b = dq(real_matrix({{1, 0}}), real_matrix({{0, 1}}));
  const SvdDecomposition s = svd(b);
  ASSERT_EQ(s.sigma.size(), 1u);
  EXPECT_TRUE(near(s.sigma[0], {1, 0}, 1e-13));
  EXPECT_EQ(s.rank_t, 1u);
  EXPECT_EQ(s.app_rank_r, 1u);
  expect_svd_ok(b, s);
}

TEST(Svd, RandomMixedInstances) {
  Rng rng(42);
  for (int t = 0; t < 90; ++t) {
    const std::size_t m = 1 + rng.bits() % 7;
    const std::size_t n = 1 + rng.bits() % 7;
    DQMatrix b;
    switch (t % 3) {
      case 0: b = random_general(m, n, rng); break;
      case 1: b = random_low_rank(m, n, rng.bits() % (std::min(m, n) + 1), rng); break;
      default: b = random_pure_infinitesimal(m, n, rng); break;
    }
    const SvdDecomposition s = svd(b);
    expect_svd_ok(b, s);
    const Ranks r = ranks(b);
    EXPECT_EQ(r.app_rank_r, r.rank_st);
    EXPECT_LE(r.app_rank_r, r.rank_t);
  }
}

TEST(Ranks, Examples) {
  for (std::size_t n = 1; n <= 5; ++n) {
    const Ranks r = ranks(DQMatrix::identity(n));
    EXPECT_EQ(r.rank_t, n);
    EXPECT_EQ(r.app_rank_r, n);
  }
  const Ranks e = ranks(dq(QuatMatrix(1, 1), real_matrix({{1}})));
  EXPECT_EQ(e.rank_t, 1u);
  EXPECT_EQ(e.app_rank_r, 0u);
  Rng rng(43);
  const DQMatrix p = random_unitary(6, rng).block(0, 0, 6, 3);
  const Ranks pr = ranks(p);
  EXPECT_EQ(pr.rank_t, 3u);
  EXPECT_EQ(pr.app_rank_r, 3u);
}

TEST(LowRankApprox, Examples) {
  Rng rng(44);
  const DQMatrix b = random_general(4, 3, rng);
  EXPECT_LE(max_abs(low_rank_approx(b, 3) - b), 1e-12);
  EXPECT_EQ(max_abs(low_rank_approx(b, 0)), 0.0);
  const DQMatrix d = dq(real_matrix({{3, 0}, {0, 1}}));
  EXPECT_LE(max_abs(low_rank_approx(d, 1) - dq(real_matrix({{3, 0}, {0, 0}}))), 1e-14);
  expect_error(ErrorKind::BadRank, [&] { (void)low_rank_approx(b, 4); });
}
