#pragma once

#include <array>
#include <complex>
#include <cstddef>

#include "kgrhs/quaternion.hpp"

namespace kgrhs {

// Minkowski four-vector with contravariant components, metric (+,-,-,-).
template <typename T>
class BasicFourVector {
 public:
  constexpr BasicFourVector() : c_{} {}
  constexpr BasicFourVector(T t, T x, T y, T z) : c_{t, x, y, z} {}
  constexpr explicit BasicFourVector(const std::array<T, 4>& c) : c_(c) {}

  constexpr T& operator[](std::size_t mu) { return c_[mu]; }
  constexpr const T& operator[](std::size_t mu) const { return c_[mu]; }

  constexpr const T& t() const { return c_[0]; }
  constexpr const T& x() const { return c_[1]; }
  constexpr const T& y() const { return c_[2]; }
  constexpr const T& z() const { return c_[3]; }
  constexpr const std::array<T, 4>& components() const { return c_; }

  BasicFourVector& operator+=(const BasicFourVector& o) {
    for (std::size_t mu = 0; mu < 4; ++mu) c_[mu] += o.c_[mu];
    return *this;
  }
  BasicFourVector& operator-=(const BasicFourVector& o) {
    for (std::size_t mu = 0; mu < 4; ++mu) c_[mu] -= o.c_[mu];
    return *this;
  }
  friend BasicFourVector operator+(BasicFourVector a, const BasicFourVector& b) { return a += b; }
  friend BasicFourVector operator-(BasicFourVector a, const BasicFourVector& b) { return a -= b; }
  friend BasicFourVector operator-(BasicFourVector a) {
    for (std::size_t mu = 0; mu < 4; ++mu) a.c_[mu] = -a.c_[mu];
    return a;
  }
  template <typename S>
  friend BasicFourVector operator*(const S& s, BasicFourVector a) {
    for (std::size_t mu = 0; mu < 4; ++mu) a.c_[mu] = s * a.c_[mu];
    return a;
  }
  friend bool operator==(const BasicFourVector& a, const BasicFourVector& b) { return a.c_ == b.c_; }

 private:
  std::array<T, 4> c_;
};

using FourVector = BasicFourVector<double>;
using ComplexFourVector = BasicFourVector<Complex>;
using QuaternionFourVector = BasicFourVector<Quaternion>;

constexpr double metric(std::size_t mu) { return mu == 0 ? 1.0 : -1.0; }

// a_mu b^mu; factor order is kept for quaternion components.
template <typename T>
T minkowski_dot(const BasicFourVector<T>& a, const BasicFourVector<T>& b) {
  T s = a[0] * b[0];
  for (std::size_t mu = 1; mu < 4; ++mu) s = s - a[mu] * b[mu];
  return s;
}

inline Complex minkowski_dot(const ComplexFourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

inline Complex minkowski_dot(const FourVector& a, const ComplexFourVector& b) {
  return minkowski_dot(b, a);
}

template <typename T>
BasicFourVector<T> lower_index(const BasicFourVector<T>& v) {
  return {v[0], -v[1], -v[2], -v[3]};
}

template <typename T>
BasicFourVector<T> raise_index(const BasicFourVector<T>& v) {
  return lower_index(v);
}

inline ComplexFourVector make_complex(const FourVector& re, const FourVector& im) {
  ComplexFourVector out;
  for (std::size_t mu = 0; mu < 4; ++mu) out[mu] = Complex(re[mu], im[mu]);
  return out;
}

inline ComplexFourVector to_complex(const FourVector& v) { return make_complex(v, FourVector{}); }

inline FourVector real_part(const ComplexFourVector& v) {
  return {v[0].real(), v[1].real(), v[2].real(), v[3].real()};
}

inline FourVector imag_part(const ComplexFourVector& v) {
  return {v[0].imag(), v[1].imag(), v[2].imag(), v[3].imag()};
}

inline ComplexFourVector hermitian_conjugate(const ComplexFourVector& v) {
  return {std::conj(v[0]), std::conj(v[1]), std::conj(v[2]), std::conj(v[3])};
}

// (A0 + A1 j)^mu
inline QuaternionFourVector assemble(const ComplexFourVector& a0, const ComplexFourVector& a1) {
  QuaternionFourVector out;
  for (std::size_t mu = 0; mu < 4; ++mu) out[mu] = Quaternion(a0[mu], a1[mu]);
  return out;
}

struct SymplecticPair {
  ComplexFourVector first;
  ComplexFourVector second;
};

inline SymplecticPair split(const QuaternionFourVector& v) {
  SymplecticPair out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    out.first[mu] = v[mu].z0();
    out.second[mu] = v[mu].z1();
  }
  return out;
}

// Sum of |v^mu|^2 over all components.
inline double euclidean_norm_squared(const ComplexFourVector& v) {
  double s = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) s += std::norm(v[mu]);
  return s;
}

inline double euclidean_norm_squared(const FourVector& v) {
  double s = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) s += v[mu] * v[mu];
  return s;
}

}  // namespace kgrhs
