#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>

#include "dqspectra/dqspectra.hpp"

namespace dqt {

using namespace dqspectra;

inline const Quaternion I = Quaternion::i();
inline const Quaternion J = Quaternion::j();
inline const Quaternion K = Quaternion::k();

/// Real square matrix from rows.
inline QuatMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t m = rows.size();
  const std::size_t n = rows.begin()->size();
  QuatMatrix a(m, n);
  std::size_t i = 0;
  for (const auto& r : rows) {
    std::size_t j = 0;
    for (double v : r) a(i, j++) = Quaternion(v);
    ++i;
  }
  return a;
}

inline DQMatrix dq(QuatMatrix st, QuatMatrix inf) { return {std::move(st), std::move(inf)}; }

inline DQMatrix dq(QuatMatrix st) {
  QuatMatrix z(st.rows(), st.cols());
  return {std::move(st), std::move(z)};
}

inline double max_abs(const QuatMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, a(i, j).abs());
  return m;
}

inline double max_abs(const DQMatrix& a) { return std::max(max_abs(a.st()), max_abs(a.inf())); }

inline double qdist(const Quaternion& a, const Quaternion& b) { return (a - b).abs(); }

inline double dqdist(const DualQuaternion& a, const DualQuaternion& b) {
  return std::max(qdist(a.st(), b.st()), qdist(a.inf(), b.inf()));
}

}  // namespace dqt
