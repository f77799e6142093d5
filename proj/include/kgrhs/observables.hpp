#pragma once

#include <array>

#include "kgrhs/planewave.hpp"

namespace kgrhs {

struct CurrentSample {
  FourVector point;
  FourVector J;
  CaseTag case_tag = CaseTag::Usual;
};

// Closed-form probability current {Phi, (momentum operator)^mu Phi}.
FourVector current(const PlaneWaveSolution& solution, const FourVector& x);
CurrentSample sample_current(const PlaneWaveSolution& solution, const FourVector& x);
// d_mu J^mu of the closed-form current.
double current_divergence(const PlaneWaveSolution& solution, const FourVector& x);

// q (i A^mu - conj(A^mu) i)
FourVector gamma_left(const QuaternionFourVector& potential, double q);
// q (A^mu u - u conj(A^mu)) / |Phi|^2 with u = Phi i conj(Phi)
FourVector gamma_right(const QuaternionFourVector& potential, const Quaternion& phi, double q);
// Component form of gamma_right.
FourVector gamma_right_expanded(const QuaternionFourVector& potential, const Quaternion& phi, double q);
// Zero for the hermitian complex cases.
FourVector gamma(const PlaneWaveSolution& solution, const FourVector& x);

struct Box {
  std::array<double, 3> lower{-0.5, -0.5, -0.5};
  std::array<double, 3> upper{0.5, 0.5, 0.5};
  double t = 0.0;

  FourVector center() const;
  double volume() const;
};

struct Expectation {
  double coefficient = 0.0;
  double norm_integral = 0.0;

  double value() const { return coefficient * norm_integral; }
};

struct ExpectationSet {
  Expectation E;
  std::array<Expectation, 3> p;
  Expectation E2;
  Expectation p2;
  Box box;
};

// Integral of |Phi|^2 over the box at the slice t.
double norm_integral(const PlaneWaveSolution& solution, const Box& box);
ExpectationSet expectations(const PlaneWaveSolution& solution, const Box& box);
double conservation_residual(const PlaneWaveSolution& solution, const Box& box);

}  // namespace kgrhs
