#include "kgrhs/potential.hpp"

#include <cmath>

namespace kgrhs {

namespace {

bool all_zero(const ComplexFourVector& v) {
  for (std::size_t mu = 0; mu < 4; ++mu)
    if (v[mu] != Complex{}) return false;
  return true;
}

}  // namespace

bool PotentialField::is_zero() const { return all_zero(amplitude_); }

bool PotentialField::is_constant() const { return all_zero(exponent_); }

bool PotentialField::is_real() const {
  for (std::size_t mu = 0; mu < 4; ++mu)
    if (amplitude_[mu].imag() != 0.0 || exponent_[mu].imag() != 0.0) return false;
  return true;
}

ComplexFourVector PotentialField::value(const FourVector& x) const {
  if (is_constant()) return amplitude_;
  const Complex e = std::exp(minkowski_dot(exponent_, x));
  return e * amplitude_;
}

Complex PotentialField::derivative(std::size_t nu, std::size_t mu, const FourVector& x) const {
  if (is_constant()) return {};
  return exponent_[nu] * value(x)[mu];
}

Complex PotentialField::divergence(const FourVector& x) const {
  if (is_constant()) return {};
  return minkowski_dot(exponent_, value(x));
}

ComplexFourVector PotentialBundle::complex_part(const FourVector& x) const {
  const ComplexFourVector a = A.value(x);
  const ComplexFourVector b = B.value(x);
  ComplexFourVector out;
  for (std::size_t mu = 0; mu < 4; ++mu) out[mu] = a[mu] + Complex(0.0, 1.0) * b[mu];
  return out;
}

QuaternionFourVector PotentialBundle::value(const FourVector& x) const {
  return assemble(complex_part(x), A1.value(x));
}

}  // namespace kgrhs
