#pragma once

#include <cmath>
#include <complex>

namespace kgrhs {

using Complex = std::complex<double>;

// q = z0 + z1 j with complex z0, z1; j z = conj(z) j.
class Quaternion {
 public:
  constexpr Quaternion() = default;
  constexpr Quaternion(Complex z0, Complex z1 = {}) : z0_(z0), z1_(z1) {}
  constexpr Quaternion(double re) : z0_(re), z1_(0.0) {}

  static constexpr Quaternion from_components(double w, double x, double y, double z) {
    return {Complex(w, x), Complex(y, z)};
  }
  static constexpr Quaternion i() { return {Complex(0.0, 1.0), {}}; }
  static constexpr Quaternion j() { return {{}, Complex(1.0, 0.0)}; }
  static constexpr Quaternion k() { return {{}, Complex(0.0, 1.0)}; }

  constexpr Complex z0() const { return z0_; }
  constexpr Complex z1() const { return z1_; }

  double real() const { return z0_.real(); }
  double norm_squared() const { return std::norm(z0_) + std::norm(z1_); }
  double norm() const { return std::hypot(std::abs(z0_), std::abs(z1_)); }
  // Magnitude of the i, j, k part.
  double vector_norm() const { return std::hypot(z0_.imag(), std::abs(z1_)); }
  bool is_complex(double tol = 0.0) const { return std::abs(z1_) <= tol; }

  Quaternion conj() const { return {std::conj(z0_), -z1_}; }

  Quaternion operator-() const { return {-z0_, -z1_}; }
  Quaternion& operator+=(const Quaternion& o) {
    z0_ += o.z0_;
    z1_ += o.z1_;
    return *this;
  }
  Quaternion& operator-=(const Quaternion& o) {
    z0_ -= o.z0_;
    z1_ -= o.z1_;
    return *this;
  }
  Quaternion& operator*=(double s) {
    z0_ *= s;
    z1_ *= s;
    return *this;
  }

  friend Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
  friend Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
  friend Quaternion operator*(Quaternion a, double s) { return a *= s; }
  friend Quaternion operator*(double s, Quaternion a) { return a *= s; }
  friend Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.z0_ * b.z0_ - a.z1_ * std::conj(b.z1_), a.z0_ * b.z1_ + a.z1_ * std::conj(b.z0_)};
  }
  friend bool operator==(const Quaternion& a, const Quaternion& b) {
    return a.z0_ == b.z0_ && a.z1_ == b.z1_;
  }

 private:
  Complex z0_{};
  Complex z1_{};
};

inline Quaternion quat_mul(const Quaternion& a, const Quaternion& b) { return a * b; }

inline Quaternion conj(const Quaternion& q) { return q.conj(); }

inline double norm(const Quaternion& q) { return q.norm(); }

// u q conj(u)
inline Quaternion conjugate_sandwich(const Quaternion& q, const Quaternion& u) {
  return u * q * u.conj();
}

// Real part of conj(a) b, the Euclidean inner product on R^4.
inline double real_inner(const Quaternion& a, const Quaternion& b) {
  return (std::conj(a.z0()) * b.z0() + std::conj(a.z1()) * b.z1()).real();
}

}  // namespace kgrhs
