#include "kgrhs/analytic.hpp"

namespace kgrhs {

namespace {

struct Wave {
  Quaternion value;
  ComplexFourVector Q0, Q1;
  Complex c0, c1;  // Phi0, Phi1
};

Wave wave(const PlaneWaveSolution& s, const FourVector& x) {
  Wave w;
  w.value = s.evaluate(x);
  w.c0 = w.value.z0();
  w.c1 = w.value.z1();
  w.Q0 = s.Q;
  w.Q1 = s.exponent_side == ExponentSide::Left ? s.Q : hermitian_conjugate(s.Q);
  return w;
}

Quaternion d1(const Wave& w, std::size_t mu) { return {w.Q0[mu] * w.c0, w.Q1[mu] * w.c1}; }

Quaternion d2(const Wave& w, std::size_t nu, std::size_t mu) {
  return {w.Q0[nu] * w.Q0[mu] * w.c0, w.Q1[nu] * w.Q1[mu] * w.c1};
}

Quaternion times_i(const PlaneWaveSolution& s, const Quaternion& v) {
  return operator_side(s.case_tag) == OperatorSide::Left ? Quaternion::i() * v : v * Quaternion::i();
}

Quaternion potential_derivative(const PotentialBundle& b, std::size_t nu, std::size_t mu, const FourVector& x) {
  return {b.A.derivative(nu, mu, x) + Complex(0.0, 1.0) * b.B.derivative(nu, mu, x), b.A1.derivative(nu, mu, x)};
}

}  // namespace

Quaternion momentum_apply(const PlaneWaveSolution& s, std::size_t mu, const FourVector& x) {
  const Wave w = wave(s, x);
  const QuaternionFourVector a = s.potential(x);
  return times_i(s, d1(w, mu)) - s.charge * (a[mu] * w.value);
}

Quaternion momentum_apply2(const PlaneWaveSolution& s, std::size_t nu, std::size_t mu, const FourVector& x) {
  const Wave w = wave(s, x);
  const QuaternionFourVector a = s.potential(x);
  const double q = s.charge;
  const Quaternion inner = times_i(s, d1(w, mu)) - q * (a[mu] * w.value);
  const Quaternion d_inner =
      times_i(s, d2(w, nu, mu)) - q * (potential_derivative(s.potentials, nu, mu, x) * w.value) - q * (a[mu] * d1(w, nu));
  return times_i(s, d_inner) - q * (a[nu] * inner);
}

Quaternion kge_apply(const PlaneWaveSolution& s, const FourVector& x) {
  Quaternion sum = momentum_apply2(s, 0, 0, x);
  for (std::size_t mu = 1; mu < 4; ++mu) sum -= momentum_apply2(s, mu, mu, x);
  return sum - (s.mass * s.mass) * s.evaluate(x);
}

}  // namespace kgrhs
