#include "kgrhs/observables.hpp"

#include <algorithm>
#include <cmath>

#include "kgrhs/analytic.hpp"

namespace kgrhs {

namespace {

constexpr Complex kI{0.0, 1.0};

// +1 when the momentum operator and the exponential sit on the same side.
double phi1_weight(const PlaneWaveSolution& s) {
  const bool op_left = operator_side(s.case_tag) == OperatorSide::Left;
  const bool exp_left = s.exponent_side == ExponentSide::Left;
  return op_left == exp_left ? 1.0 : -1.0;
}

double axis_integral(double p, double lo, double hi) {
  if (p == 0.0) return hi - lo;
  return std::exp(-2.0 * p * lo) * -std::expm1(-2.0 * p * (hi - lo)) / (2.0 * p);
}

bool constant_complex_potentials(const PlaneWaveSolution& s) {
  return s.potentials.A.is_constant() && s.potentials.B.is_constant();
}

}  // namespace

FourVector current(const PlaneWaveSolution& s, const FourVector& x) {
  const Quaternion phi = s.evaluate(x);
  const double rho0 = std::norm(phi.z0());
  const double rho1 = std::norm(phi.z1());
  const FourVector A = real_part(s.potentials.A.value(x));
  return -1.0 * ((rho0 + phi1_weight(s) * rho1) * s.K() + (s.charge * (rho0 + rho1)) * A);
}

CurrentSample sample_current(const PlaneWaveSolution& s, const FourVector& x) { return {x, current(s, x), s.case_tag}; }

double current_divergence(const PlaneWaveSolution& s, const FourVector& x) {
  const Quaternion phi = s.evaluate(x);
  const double rho0 = std::norm(phi.z0());
  const double rho1 = std::norm(phi.z1());
  const FourVector P = s.P();
  const FourVector A = real_part(s.potentials.A.value(x));
  const double dA = s.potentials.A.divergence(x).real();
  return -(2.0 * minkowski_dot(P, s.K()) * (rho0 + phi1_weight(s) * rho1) +
           s.charge * (2.0 * minkowski_dot(P, A) + dA) * (rho0 + rho1));
}

FourVector gamma_left(const QuaternionFourVector& potential, double q) {
  FourVector g;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const Quaternion v = Quaternion::i() * potential[mu] - potential[mu].conj() * Quaternion::i();
    g[mu] = q * v.real();
  }
  return g;
}

FourVector gamma_right(const QuaternionFourVector& potential, const Quaternion& phi, double q) {
  const double rho = phi.norm_squared();
  if (rho == 0.0) return {};
  const Quaternion u = conjugate_sandwich(Quaternion::i(), phi);
  FourVector g;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const Quaternion v = potential[mu] * u - u * potential[mu].conj();
    g[mu] = q * v.real() / rho;
  }
  return g;
}

FourVector gamma_right_expanded(const QuaternionFourVector& potential, const Quaternion& phi, double q) {
  const double rho = phi.norm_squared();
  if (rho == 0.0) return {};
  const double diff = std::norm(phi.z0()) - std::norm(phi.z1());
  const Complex pair = phi.z0() * phi.z1();
  FourVector g;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    const Complex a1 = potential[mu].z1();
    const double b = potential[mu].z0().imag();
    const Complex cross = 2.0 * kI * (std::conj(a1) * pair - a1 * std::conj(pair));
    g[mu] = q * (-2.0 * b * diff + cross.real()) / rho;
  }
  return g;
}

FourVector gamma(const PlaneWaveSolution& s, const FourVector& x) {
  switch (s.case_tag) {
    case CaseTag::Usual:
    case CaseTag::Generalized:
      return {};
    case CaseTag::NonHermitian:
    case CaseTag::QuatLeftFirst:
    case CaseTag::QuatLeftSecond:
      return gamma_left(s.potential(x), s.charge);
    case CaseTag::QuatRightFirst:
    case CaseTag::QuatRightSecond:
      return gamma_right(s.potential(x), s.evaluate(x), s.charge);
  }
  return {};
}

FourVector Box::center() const {
  return {t, 0.5 * (lower[0] + upper[0]), 0.5 * (lower[1] + upper[1]), 0.5 * (lower[2] + upper[2])};
}

double Box::volume() const { return (upper[0] - lower[0]) * (upper[1] - lower[1]) * (upper[2] - lower[2]); }

double norm_integral(const PlaneWaveSolution& s, const Box& box) {
  const FourVector P = s.P();
  double integral = (std::norm(s.phi0) + std::norm(s.phi1)) * std::exp(2.0 * P[0] * box.t);
  for (std::size_t i = 0; i < 3; ++i) integral *= axis_integral(P[i + 1], box.lower[i], box.upper[i]);
  return integral;
}

ExpectationSet expectations(const PlaneWaveSolution& s, const Box& box) {
  for (std::size_t i = 0; i < 3; ++i)
    if (!(box.upper[i] > box.lower[i])) throw PreconditionError("box must have positive extent on every axis");

  ExpectationSet out;
  out.box = box;
  const double norm = norm_integral(s, box);
  const auto with_norm = [norm](double c) { return Expectation{c, norm}; };

  if (!is_quaternionic(s.case_tag) && constant_complex_potentials(s)) {
    const FourVector W = s.K() + s.charge * real_part(s.potentials.A.amplitude());
    const FourVector V = s.P() - s.charge * real_part(s.potentials.B.amplitude());
    out.E = with_norm(-W[0]);
    for (std::size_t i = 0; i < 3; ++i) out.p[i] = with_norm(-W[i + 1]);
    out.E2 = with_norm(W[0] * W[0] - V[0] * V[0]);
    double p2 = 0.0;
    for (std::size_t i = 1; i < 4; ++i) p2 += W[i] * W[i] - V[i] * V[i];
    out.p2 = with_norm(p2);
    return out;
  }

  const FourVector x = box.center();
  const Quaternion phi = s.evaluate(x);
  const double rho = phi.norm_squared();
  if (rho == 0.0) return out;
  const FourVector J = current(s, x);
  out.E = with_norm(J[0] / rho);
  for (std::size_t i = 0; i < 3; ++i) out.p[i] = with_norm(J[i + 1] / rho);
  out.E2 = with_norm(real_inner(phi, momentum_apply2(s, 0, 0, x)) / rho);
  double p2 = 0.0;
  for (std::size_t i = 1; i < 4; ++i) p2 += real_inner(phi, momentum_apply2(s, i, i, x));
  out.p2 = with_norm(p2 / rho);
  return out;
}

double conservation_residual(const PlaneWaveSolution& s, const Box& box) {
  const ExpectationSet e = expectations(s, box);
  const double rest = s.mass * s.mass * e.E.norm_integral;
  return std::abs(e.E2.value() - e.p2.value() - rest) / std::max(1.0, rest);
}

}  // namespace kgrhs
