#pragma once

// Dual numbers, quaternions and dual quaternions.
//
// All three are immutable value types. Public constructors reject NaN so the
// lexicographic order on dual numbers stays total; arithmetic results are
// built through an unchecked path.

#include <cmath>
#include <compare>
#include <ostream>

#include "dqspectra/error.hpp"

namespace dqspectra {

namespace detail {
struct unchecked_t {
  explicit unchecked_t() = default;
};
inline constexpr unchecked_t unchecked{};

inline double checked(double v) {
  if (std::isnan(v)) throw Error(ErrorKind::InvalidValue, "NaN component");
  return v;
}
}  // namespace detail

// ---------------------------------------------------------------------------
// DualNumber: st + inf * eps with eps^2 = 0.

class DualNumber {
 public:
  constexpr DualNumber() noexcept = default;
  DualNumber(double st, double inf = 0.0)  // NOLINT(google-explicit-constructor)
      : st_(detail::checked(st)), inf_(detail::checked(inf)) {}
  constexpr DualNumber(detail::unchecked_t, double st, double inf) noexcept
      : st_(st), inf_(inf) {}

  static DualNumber epsilon() { return {0.0, 1.0}; }

  constexpr double st() const noexcept { return st_; }
  constexpr double inf() const noexcept { return inf_; }

  constexpr bool is_appreciable() const noexcept { return st_ != 0.0; }

  friend constexpr DualNumber operator+(DualNumber a, DualNumber b) noexcept {
    return {detail::unchecked, a.st_ + b.st_, a.inf_ + b.inf_};
  }
  friend constexpr DualNumber operator-(DualNumber a, DualNumber b) noexcept {
    return {detail::unchecked, a.st_ - b.st_, a.inf_ - b.inf_};
  }
  friend constexpr DualNumber operator-(DualNumber a) noexcept {
    return {detail::unchecked, -a.st_, -a.inf_};
  }
  friend constexpr DualNumber operator*(DualNumber a, DualNumber b) noexcept {
    return {detail::unchecked, a.st_ * b.st_, a.st_ * b.inf_ + a.inf_ * b.st_};
  }

  /// Exact lexicographic order: standard parts first, then infinitesimal parts.
  friend constexpr std::weak_ordering operator<=>(DualNumber a, DualNumber b) noexcept {
    if (a.st_ < b.st_) return std::weak_ordering::less;
    if (b.st_ < a.st_) return std::weak_ordering::greater;
    if (a.inf_ < b.inf_) return std::weak_ordering::less;
    if (b.inf_ < a.inf_) return std::weak_ordering::greater;
    return std::weak_ordering::equivalent;
  }
  friend constexpr bool operator==(DualNumber a, DualNumber b) noexcept {
    return a.st_ == b.st_ && a.inf_ == b.inf_;
  }

 private:
  double st_ = 0.0;
  double inf_ = 0.0;
};

inline std::weak_ordering dual_cmp(DualNumber p, DualNumber q) noexcept { return p <=> q; }

/// 1/q = 1/q_st - q_I/q_st^2 eps. Requires q appreciable.
inline DualNumber inverse(DualNumber q) {
  if (!q.is_appreciable()) {
    throw Error(ErrorKind::NotAppreciable, "dual number with zero standard part");
  }
  const double s = 1.0 / q.st();
  return {detail::unchecked, s, -q.inf() * s * s};
}

inline DualNumber operator/(DualNumber a, DualNumber b) { return a * inverse(b); }

/// Square root of a nonnegative dual number: sqrt(s) + i/(2 sqrt(s)) eps.
/// Zero maps to zero; s = 0 with i != 0 has no dual root.
inline DualNumber dual_sqrt(DualNumber d) {
  if (d < DualNumber{}) throw Error(ErrorKind::NegativeInput, "dual_sqrt of a negative dual number");
  if (d.st() == 0.0) {
    if (d.inf() != 0.0) {
      throw Error(ErrorKind::NoDualRoot, "no dual number squares to a pure infinitesimal");
    }
    return {};
  }
  const double r = std::sqrt(d.st());
  return {detail::unchecked, r, d.inf() / (2.0 * r)};
}

/// Tolerance-aware equality, for use above the scalar layer only.
inline bool near(DualNumber a, DualNumber b, double tol) noexcept {
  return std::abs(a.st() - b.st()) <= tol && std::abs(a.inf() - b.inf()) <= tol;
}

inline std::ostream& operator<<(std::ostream& os, DualNumber d) {
  return os << d.st() << (d.inf() < 0 ? " - " : " + ") << std::abs(d.inf()) << "eps";
}

// ---------------------------------------------------------------------------
// Quaternion: w + x i + y j + z k.

class Quaternion {
 public:
  constexpr Quaternion() noexcept = default;
  Quaternion(double w, double x = 0.0, double y = 0.0, double z = 0.0)  // NOLINT
      : w_(detail::checked(w)), x_(detail::checked(x)), y_(detail::checked(y)), z_(detail::checked(z)) {}
  constexpr Quaternion(detail::unchecked_t, double w, double x, double y, double z) noexcept
      : w_(w), x_(x), y_(y), z_(z) {}

  static Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
  static Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
  static Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr double w() const noexcept { return w_; }
  constexpr double x() const noexcept { return x_; }
  constexpr double y() const noexcept { return y_; }
  constexpr double z() const noexcept { return z_; }

  constexpr double norm2() const noexcept { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }
  double abs() const noexcept { return std::sqrt(norm2()); }
  constexpr bool is_zero() const noexcept {
    return w_ == 0.0 && x_ == 0.0 && y_ == 0.0 && z_ == 0.0;
  }

  constexpr Quaternion conj() const noexcept { return {detail::unchecked, w_, -x_, -y_, -z_}; }

  friend constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) noexcept {
    return {detail::unchecked, a.w_ + b.w_, a.x_ + b.x_, a.y_ + b.y_, a.z_ + b.z_};
  }
  friend constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) noexcept {
    return {detail::unchecked, a.w_ - b.w_, a.x_ - b.x_, a.y_ - b.y_, a.z_ - b.z_};
  }
  friend constexpr Quaternion operator-(const Quaternion& a) noexcept {
    return {detail::unchecked, -a.w_, -a.x_, -a.y_, -a.z_};
  }
  // Hamilton product.
  friend constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) noexcept {
    return {detail::unchecked,
            a.w_ * b.w_ - a.x_ * b.x_ - a.y_ * b.y_ - a.z_ * b.z_,
            a.w_ * b.x_ + a.x_ * b.w_ + a.y_ * b.z_ - a.z_ * b.y_,
            a.w_ * b.y_ - a.x_ * b.z_ + a.y_ * b.w_ + a.z_ * b.x_,
            a.w_ * b.z_ + a.x_ * b.y_ - a.y_ * b.x_ + a.z_ * b.w_};
  }
  friend constexpr Quaternion operator*(double s, const Quaternion& a) noexcept {
    return {detail::unchecked, s * a.w_, s * a.x_, s * a.y_, s * a.z_};
  }
  friend constexpr Quaternion operator*(const Quaternion& a, double s) noexcept { return s * a; }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) noexcept = default;

 private:
  double w_ = 0.0;
  double x_ = 0.0;
  double y_ = 0.0;
  double z_ = 0.0;
};

inline Quaternion quat_mul(const Quaternion& p, const Quaternion& q) noexcept { return p * q; }

inline Quaternion inverse(const Quaternion& q) {
  if (q.is_zero()) throw Error(ErrorKind::ZeroQuaternion, "inverse of the zero quaternion");
  return (1.0 / q.norm2()) * q.conj();
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.w() << ", " << q.x() << "i, " << q.y() << "j, " << q.z() << "k)";
}

// ---------------------------------------------------------------------------
// DualQuaternion: st + inf * eps with quaternion parts.

class DualQuaternion {
 public:
  constexpr DualQuaternion() noexcept = default;
  constexpr DualQuaternion(const Quaternion& st, const Quaternion& inf = {}) noexcept  // NOLINT
      : st_(st), inf_(inf) {}
  DualQuaternion(DualNumber d) noexcept  // NOLINT(google-explicit-constructor)
      : st_(detail::unchecked, d.st(), 0, 0, 0), inf_(detail::unchecked, d.inf(), 0, 0, 0) {}

  constexpr const Quaternion& st() const noexcept { return st_; }
  constexpr const Quaternion& inf() const noexcept { return inf_; }

  constexpr bool is_appreciable() const noexcept { return !st_.is_zero(); }

  constexpr DualQuaternion conj() const noexcept { return {st_.conj(), inf_.conj()}; }

  /// Real parts of both grades. Exact for self-conjugate values.
  DualNumber real_part() const noexcept { return {detail::unchecked, st_.w(), inf_.w()}; }

  friend constexpr DualQuaternion operator+(const DualQuaternion& a, const DualQuaternion& b) noexcept {
    return {a.st_ + b.st_, a.inf_ + b.inf_};
  }
  friend constexpr DualQuaternion operator-(const DualQuaternion& a, const DualQuaternion& b) noexcept {
    return {a.st_ - b.st_, a.inf_ - b.inf_};
  }
  friend constexpr DualQuaternion operator-(const DualQuaternion& a) noexcept {
    return {-a.st_, -a.inf_};
  }
  friend constexpr DualQuaternion operator*(const DualQuaternion& a, const DualQuaternion& b) noexcept {
    return {a.st_ * b.st_, a.st_ * b.inf_ + a.inf_ * b.st_};
  }
  friend constexpr DualQuaternion operator*(double s, const DualQuaternion& a) noexcept {
    return {s * a.st_, s * a.inf_};
  }

  friend constexpr bool operator==(const DualQuaternion&, const DualQuaternion&) noexcept = default;

 private:
  Quaternion st_;
  Quaternion inf_;
};

inline DualQuaternion dq_mul(const DualQuaternion& p, const DualQuaternion& q) noexcept { return p * q; }

/// q^{-1} = q_st^{-1} - q_st^{-1} q_I q_st^{-1} eps. Requires q appreciable.
inline DualQuaternion inverse(const DualQuaternion& q) {
  if (!q.is_appreciable()) {
    throw Error(ErrorKind::NotAppreciable, "dual quaternion with zero standard part");
  }
  const Quaternion s = inverse(q.st());
  return {s, -(s * q.inf() * s)};
}

inline std::ostream& operator<<(std::ostream& os, const DualQuaternion& q) {
  return os << q.st() << " + " << q.inf() << "eps";
}

}  // namespace dqspectra
