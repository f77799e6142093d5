#pragma once

#include <optional>
#include <string_view>

#include "kgrhs/four_vector.hpp"
#include "kgrhs/quaternion.hpp"

namespace kgrhs {

enum class Regime { Propagating, Evanescent, KleinParadox };

// Auto: oscillating when (E - qV0)^2 - m^2 + q^2 V1^2 > 0, stationary otherwise.
// Mixed: P' given by the caller and K' = sqrt(S + P'^2).
enum class RegionTwoBranch { Auto, Oscillating, Stationary, Mixed };

// GroupVelocity flips K' when E - qV0 < 0 so the transmitted beam leaves the barrier.
enum class KleinBranchRule { GroupVelocity, Opposite };

enum class PhaseSide { Left, Right };

std::string_view to_string(Regime regime);

struct QuaternionicBarrier {
  Complex a0;  // complex part V0 + i V1 of the time component
  Complex a1;  // j part of the time component
};

struct BarrierSpec {
  double V0 = 0.0;
  double V1 = 0.0;
  std::optional<QuaternionicBarrier> quat;
  double E = 0.0;
  double m = 0.0;
  double q = 1.0;
  double phi0 = 0.0;
  std::optional<Quaternion> unitary_phase;
  RegionTwoBranch branch = RegionTwoBranch::Auto;
  KleinBranchRule rule = KleinBranchRule::GroupVelocity;
  double p_prime = 0.0;  // used by the Mixed branch
};

struct ScatteringResult {
  Complex Q, Qprime;
  Complex R, T;
  double refl_coeff = 0.0;
  double trans_coeff = 0.0;
  double rt_sum = 0.0;
  double correction = 0.0;
  Regime regime = Regime::Propagating;
  bool transmission_flagged = false;  // evanescent: flux ratio undefined, reported as zero
  double energy_residual = 0.0;
  double phi0 = 0.0;
};

ScatteringResult solve_real_barrier(const BarrierSpec& spec);
ScatteringResult solve_complex_barrier(const BarrierSpec& spec);

// Transmission coefficient with the exponential factor evaluated at x.
double transmission_at(const ScatteringResult& result, const FourVector& x);
// Additive term c in R + T = 1 + c, evaluated at x.
double rt_sum_correction(const ScatteringResult& result, const FourVector& x);

struct MassShift {
  double complex_shift = 0.0;
  double quaternionic_shift = 0.0;
  bool signs_opposite = false;
};

MassShift quaternionic_mass_shift(const BarrierSpec& spec);
// m^2 - q^2 V1^2 + q^2 |A1|^2
double effective_mass_squared(const BarrierSpec& spec);

struct BoundaryCheck {
  double residual = 0.0;
  bool complex_valued = false;
};

// Right: phi_I = phi_II U. Left: phi_I = U phi_II.
BoundaryCheck quaternionic_boundary_check(const Quaternion& phi_I, const Quaternion& phi_II, const Quaternion& U,
                                          PhaseSide side);

// Quaternionic amplitudes are not defined by the model; always throws NotSpecified.
ScatteringResult solve_quaternionic_barrier(const BarrierSpec& spec);

}  // namespace kgrhs
