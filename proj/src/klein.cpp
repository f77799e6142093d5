#include "kgrhs/klein.hpp"

#include <algorithm>
#include <cmath>

#include "kgrhs/errors.hpp"

namespace kgrhs {

namespace {

constexpr Complex kI{0.0, 1.0};

// Spatial exponent factor exp((P' - P).x) with P^mu = (0, Re Q, 0, 0).
double exponent_factor(const ScatteringResult& r, const FourVector& x) {
  return std::exp(-(r.Qprime.real() - r.Q.real()) * x[1]);
}

void check_common(const BarrierSpec& spec) {
  if (!(spec.E > 0.0) || !std::isfinite(spec.E)) throw PreconditionError("incident energy must be positive");
  if (!(spec.m >= 0.0)) throw PreconditionError("mass must be non-negative");
  if (spec.unitary_phase && std::abs(spec.unitary_phase->norm() - 1.0) > 1e-12)
    throw NonUnitaryPhase("boundary phase must have unit norm");
  if (spec.quat && spec.quat->a1 != Complex{})
    throw NotSpecified("quaternionic barrier amplitudes are not defined; use the mass-shift and boundary checks");
}

double k_prime_sign(const BarrierSpec& spec) {
  const bool reversed = spec.E - spec.q * spec.V0 < 0.0;
  const bool flip = spec.rule == KleinBranchRule::GroupVelocity ? reversed : !reversed;
  return flip ? -1.0 : 1.0;
}

ScatteringResult solve(const BarrierSpec& spec) {
  check_common(spec);
  const double k2 = spec.E * spec.E - spec.m * spec.m;
  if (!(k2 > 0.0)) throw BelowRest("incident energy does not exceed the rest energy");
  const double K = std::sqrt(k2);
  const double e = spec.E - spec.q * spec.V0;
  const double S = e * e - spec.m * spec.m + spec.q * spec.q * spec.V1 * spec.V1;
  // rounding allowance when a forced branch sits exactly on S = 0
  const double slack = 1e-12 * std::max({1.0, e * e, spec.m * spec.m, spec.q * spec.q * spec.V1 * spec.V1});

  RegionTwoBranch branch = spec.branch;
  if (branch == RegionTwoBranch::Auto) branch = S > 0.0 ? RegionTwoBranch::Oscillating : RegionTwoBranch::Stationary;

  double kp = 0.0;
  double pp = 0.0;
  switch (branch) {
    case RegionTwoBranch::Oscillating:
      if (S < -slack) throw PreconditionError("oscillating branch needs a non-negative region II energy term");
      kp = k_prime_sign(spec) * std::sqrt(std::max(0.0, S));
      break;
    case RegionTwoBranch::Stationary:
      if (S > slack) throw PreconditionError("stationary branch needs a non-positive region II energy term");
      pp = std::sqrt(std::max(0.0, -S));
      break;
    case RegionTwoBranch::Mixed:
      pp = spec.p_prime;
      if (S + pp * pp < 0.0) throw PreconditionError("mixed branch needs S + P'^2 >= 0");
      kp = k_prime_sign(spec) * std::sqrt(S + pp * pp);
      break;
    case RegionTwoBranch::Auto:
      break;
  }

  ScatteringResult r;
  r.phi0 = spec.phi0;
  r.Q = Complex(0.0, K);
  r.Qprime = Complex(pp, kp);
  const Complex denom = r.Q + r.Qprime;
  if (std::abs(denom) <= 1e-12 * std::abs(r.Q)) throw DegenerateDenominator("Q + Q' vanishes");
  r.R = (r.Q - r.Qprime) / denom;
  r.T = 2.0 * r.Q / denom * std::exp(kI * spec.phi0);
  r.regime = kp == 0.0 ? Regime::Evanescent : (kp / K < 0.0 ? Regime::KleinParadox : Regime::Propagating);
  r.transmission_flagged = r.regime == Regime::Evanescent;
  r.refl_coeff = std::norm(r.R);
  r.trans_coeff = transmission_at(r, {});
  r.rt_sum = r.refl_coeff + r.trans_coeff;
  r.correction = rt_sum_correction(r, {});
  r.energy_residual = std::abs(kp * kp - pp * pp - spec.q * spec.q * spec.V1 * spec.V1 - (e * e - spec.m * spec.m));
  return r;
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::Propagating:
      return "Propagating";
    case Regime::Evanescent:
      return "Evanescent";
    case Regime::KleinParadox:
      return "KleinParadox";
  }
  return "unknown";
}

ScatteringResult solve_real_barrier(const BarrierSpec& spec) {
  if (spec.V1 != 0.0) throw PreconditionError("real barrier requires V1 = 0");
  return solve(spec);
}

ScatteringResult solve_complex_barrier(const BarrierSpec& spec) { return solve(spec); }

double transmission_at(const ScatteringResult& r, const FourVector& x) {
  if (r.transmission_flagged) return 0.0;
  const Complex ratio = (r.Qprime - std::conj(r.Qprime)) / (r.Q - std::conj(r.Q));
  return ratio.real() * std::norm(r.T) * exponent_factor(r, x);
}

double rt_sum_correction(const ScatteringResult& r, const FourVector& x) {
  const Complex Q = r.Q;
  const Complex Qp = r.Qprime;
  const Complex Qc = std::conj(Q);
  const Complex Qpc = std::conj(Qp);
  if (Q == Qc) throw DegenerateDenominator("incident exponent is real");
  const double growth = exponent_factor(r, x);
  const Complex numer = Qc * Qc * Qp - Q * Q * Qpc + (2.0 * growth - 1.0) * std::norm(Q) * (Qp - Qpc);
  const Complex denom = std::norm(Q + Qp) * (Q - Qc);
  return (2.0 * numer / denom).real();
}

MassShift quaternionic_mass_shift(const BarrierSpec& spec) {
  if (!spec.quat) throw PreconditionError("quaternionic potential required");
  const double v1 = spec.quat->a0.imag();
  MassShift out;
  out.complex_shift = -spec.q * spec.q * v1 * v1;
  out.quaternionic_shift = spec.q * spec.q * std::norm(spec.quat->a1);
  out.signs_opposite = out.complex_shift * out.quaternionic_shift < 0.0;
  return out;
}

double effective_mass_squared(const BarrierSpec& spec) {
  if (!spec.quat) return spec.m * spec.m - spec.q * spec.q * spec.V1 * spec.V1;
  const MassShift s = quaternionic_mass_shift(spec);
  return spec.m * spec.m + s.complex_shift + s.quaternionic_shift;
}

BoundaryCheck quaternionic_boundary_check(const Quaternion& phi_I, const Quaternion& phi_II, const Quaternion& U,
                                          PhaseSide side) {
  if (std::abs(U.norm() - 1.0) > 1e-12) throw NonUnitaryPhase("boundary phase must have unit norm");
  const Quaternion phased = side == PhaseSide::Right ? phi_II * U : U * phi_II;
  BoundaryCheck out;
  out.residual = (phi_I - phased).norm();
  const double tol = 1e-12 * std::max({1.0, phased.norm(), phi_I.norm()});
  out.complex_valued = phased.is_complex(tol) && phi_I.is_complex(tol);
  return out;
}

ScatteringResult solve_quaternionic_barrier(const BarrierSpec&) {
  throw NotSpecified("quaternionic scattering amplitudes are not defined by the model");
}

}  // namespace kgrhs
