#pragma once

// Seeded generators for test and CLI instances.
//
// Reals come from std::mt19937_64, whose output sequence is fixed by the
// standard, mapped to [-1, 1) as (2 * (x >> 11) * 2^-53 - 1). No standard
// library distribution is used, so a seed gives the same matrices on every
// platform.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>

#include "dqspectra/error.hpp"
#include "dqspectra/linalg.hpp"
#include "dqspectra/scalars.hpp"

namespace dqspectra {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [-1, 1).
  double symmetric() { return 2.0 * uniform() - 1.0; }

  Quaternion quaternion() {
    const double w = symmetric();
    const double x = symmetric();
    const double y = symmetric();
    const double z = symmetric();
    return {w, x, y, z};
  }

  /// Unit quaternion, uniform on S^3 by rejection from the 4-ball.
  Quaternion unit_quaternion() {
    for (;;) {
      const Quaternion q = quaternion();
      const double n2 = q.norm2();
      if (n2 > 1e-4 && n2 <= 1.0) return (1.0 / std::sqrt(n2)) * q;
    }
  }

  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

inline QuatMatrix random_quat_matrix(std::size_t m, std::size_t n, Rng& rng) {
  QuatMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = rng.quaternion();
  return a;
}

inline DQMatrix random_general(std::size_t m, std::size_t n, Rng& rng) {
  QuatMatrix st = random_quat_matrix(m, n, rng);
  QuatMatrix inf = random_quat_matrix(m, n, rng);
  return {std::move(st), std::move(inf)};
}

/// (R + R*) / 2 for a random square R; exactly Hermitian.
inline DQMatrix random_hermitian(std::size_t n, Rng& rng) {
  const DQMatrix r = random_general(n, n, rng);
  return 0.5 * (r + conj_transpose(r));
}

/// B* B for a random m x n B: an n x n PSD (and perfect) Hermitian matrix.
inline DQMatrix random_psd(std::size_t m, std::size_t n, Rng& rng) {
  const DQMatrix b = random_general(m, n, rng);
  DQMatrix a = conj_transpose(b) * b;
  return 0.5 * (a + conj_transpose(a));
}

/// Unit dual quaternion poses q_r + (1/2) t q_r eps with random rotation q_r
/// and random pure-imaginary translation t; every entry e has e e* = 1.
inline DQMatrix random_pose(std::size_t m, std::size_t n, Rng& rng) {
  DQMatrix a(m, n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const Quaternion rot = rng.unit_quaternion();
      const double tx = rng.symmetric();
      const double ty = rng.symmetric();
      const double tz = rng.symmetric();
      const Quaternion t(0.0, tx, ty, tz);
      a.set(i, j, {rot, 0.5 * (t * rot)});
    }
  }
  return a;
}

/// Random unitary matrix: dual Gram-Schmidt on the columns of a random matrix.
inline DQMatrix random_unitary(std::size_t n, Rng& rng) {
  return orthonormalize_columns(random_general(n, n, rng));
}

/// X Y* with random m x k X and n x k Y: B_st has rank at most k.
inline DQMatrix random_low_rank(std::size_t m, std::size_t n, std::size_t k, Rng& rng) {
  return random_general(m, k, rng) * conj_transpose(random_general(n, k, rng));
}

/// A matrix with zero standard part.
inline DQMatrix random_pure_infinitesimal(std::size_t m, std::size_t n, Rng& rng) {
  return {QuatMatrix(m, n), random_quat_matrix(m, n, rng)};
}

}  // namespace dqspectra
