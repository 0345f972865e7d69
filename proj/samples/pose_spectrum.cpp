// Builds a small matrix of rigid-body poses, forms its Gram matrix and
// prints the dual-number eigenvalues, singular values and ranks.

#include <cstdio>

#include "dqspectra/dqspectra.hpp"

using namespace dqspectra;

int main() {
  Rng rng(2024);
  const DQMatrix poses = random_pose(4, 3, rng);

  const SvdDecomposition s = svd(poses);
  std::printf("singular values of a 4x3 pose matrix:\n");
  for (const DualNumber& d : s.sigma) std::printf("  %.6f %+.6f eps\n", d.st(), d.inf());
  std::printf("rank=%zu appreciable_rank=%zu\n", s.rank_t, s.app_rank_r);

  const DQMatrix gram = conj_transpose(poses) * poses;
  const EigDecomposition e = eig_hermitian(0.5 * (gram + conj_transpose(gram)));
  std::printf("eigenvalues of P* P:\n");
  for (const DualNumber& d : e.eigenvalues) std::printf("  %.6f %+.6f eps\n", d.st(), d.inf());
  std::printf("definiteness: %s\n", to_string(classify_definiteness(e, 1e-8 * e.st_norm)));

  const DQMatrix root = psd_sqrt(0.5 * (gram + conj_transpose(gram)));
  const DualNorm res = dual_fro_norm(root * root - gram);
  std::printf("|L^2 - P* P| = %.3g + %.3g eps\n", res.st, res.inf);
  return 0;
}
