#pragma once

#include <array>
#include <vector>

#include "kgrhs/planewave.hpp"

namespace kgrhs {

struct StencilSpec {
  double h = 1e-3;
  int order = 2;
  std::array<bool, 4> axes{true, true, true, true};

  void validate() const;
};

// Relative residual of (Pi_mu Pi^mu - m^2) Phi with every derivative taken by central
// differences of sampled values.
double kge_residual_fd(const PlaneWaveSolution& solution, const FourVector& x, const StencilSpec& stencil = {});

struct CurrentEstimate {
  FourVector J;
  double imag_residue = 0.0;
};

CurrentEstimate current_fd_detail(const PlaneWaveSolution& solution, const FourVector& x,
                                  const StencilSpec& stencil = {});
FourVector current_fd(const PlaneWaveSolution& solution, const FourVector& x, const StencilSpec& stencil = {});

// Relative residual of (d_mu + gamma_mu) J^mu with J and its divergence from differences.
double continuity_residual_fd(const PlaneWaveSolution& solution, const FourVector& x, const StencilSpec& stencil = {},
                              bool include_gamma = true);

enum class ResidualKind { KleinGordon, Continuity };

struct ConvergenceStudy {
  double slope = 0.0;
  std::vector<double> h;
  std::vector<double> residuals;
};

// Throws NoisePlateau when every residual sits at the rounding floor.
ConvergenceStudy convergence_study(const PlaneWaveSolution& solution, ResidualKind kind,
                                   const std::vector<double>& h_list, int order = 2, const FourVector& x = {});

}  // namespace kgrhs
