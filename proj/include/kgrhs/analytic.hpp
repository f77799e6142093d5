#pragma once

#include "kgrhs/planewave.hpp"

namespace kgrhs {

// Exact action of the case momentum operator Pi^mu = p^mu - q A^mu on a plane-wave
// solution, using the known exponents of the wave and of the potential fields.
Quaternion momentum_apply(const PlaneWaveSolution& solution, std::size_t mu, const FourVector& x);
// Pi^nu Pi^mu Phi
Quaternion momentum_apply2(const PlaneWaveSolution& solution, std::size_t nu, std::size_t mu, const FourVector& x);
// (Pi_mu Pi^mu - m^2) Phi
Quaternion kge_apply(const PlaneWaveSolution& solution, const FourVector& x);

}  // namespace kgrhs
