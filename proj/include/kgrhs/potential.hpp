#pragma once

#include "kgrhs/four_vector.hpp"

namespace kgrhs {

// Field f^mu(x) = amplitude^mu exp(exponent_nu x^nu). A zero exponent is the constant form.
class PotentialField {
 public:
  PotentialField() = default;
  explicit PotentialField(const ComplexFourVector& amplitude, const ComplexFourVector& exponent = {})
      : amplitude_(amplitude), exponent_(exponent) {}

  static PotentialField constant(const FourVector& a) { return PotentialField(to_complex(a)); }
  static PotentialField constant(const ComplexFourVector& a) { return PotentialField(a); }
  static PotentialField exponential(const FourVector& a0, const FourVector& r0) {
    return PotentialField(to_complex(a0), to_complex(r0));
  }

  const ComplexFourVector& amplitude() const { return amplitude_; }
  const ComplexFourVector& exponent() const { return exponent_; }

  bool is_zero() const;
  bool is_constant() const;
  bool is_real() const;

  ComplexFourVector value(const FourVector& x) const;
  // d^nu f^mu, contravariant in both indices.
  Complex derivative(std::size_t nu, std::size_t mu, const FourVector& x) const;
  // d_mu f^mu
  Complex divergence(const FourVector& x) const;

 private:
  ComplexFourVector amplitude_{};
  ComplexFourVector exponent_{};
};

// A and B are real fields; A1 is the j-part of the quaternionic potential.
struct PotentialBundle {
  PotentialField A;
  PotentialField B;
  PotentialField A1;

  static PotentialBundle constant(const FourVector& a, const FourVector& b = {},
                                  const ComplexFourVector& a1 = {}) {
    return {PotentialField::constant(a), PotentialField::constant(b), PotentialField::constant(a1)};
  }

  // Complex part A + i B at x.
  ComplexFourVector complex_part(const FourVector& x) const;
  QuaternionFourVector value(const FourVector& x) const;
  bool is_zero() const { return A.is_zero() && B.is_zero() && A1.is_zero(); }
};

}  // namespace kgrhs
