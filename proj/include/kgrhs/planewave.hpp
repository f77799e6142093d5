#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kgrhs/errors.hpp"
#include "kgrhs/four_vector.hpp"
#include "kgrhs/potential.hpp"

namespace kgrhs {

enum class CaseTag {
  Usual,
  Generalized,
  NonHermitian,
  QuatLeftFirst,
  QuatLeftSecond,
  QuatRightFirst,
  QuatRightSecond,
};

// Left: Phi = exp(Q.x)(phi0 + phi1 j). Right: Phi = (phi0 + phi1 j)exp(Q.x).
enum class ExponentSide { Left, Right };

// Side on which i multiplies in the momentum operator.
enum class OperatorSide { Left, Right };

enum class EnergyBranch { Positive, Negative };

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> parse_case(std::string_view name);
bool is_quaternionic(CaseTag tag);
OperatorSide operator_side(CaseTag tag);

struct PlaneWaveSolution {
  CaseTag case_tag = CaseTag::Usual;
  ComplexFourVector Q;
  Complex phi0{1.0, 0.0};
  Complex phi1{};
  ExponentSide exponent_side = ExponentSide::Left;
  PotentialBundle potentials;
  double mass = 0.0;
  double charge = 0.0;

  FourVector P() const { return real_part(Q); }
  FourVector K() const { return imag_part(Q); }
  bool trivial() const;

  // Phi(x) = Phi0(x) + Phi1(x) j
  Quaternion evaluate(const FourVector& x) const;
  QuaternionFourVector potential(const FourVector& x) const { return potentials.value(x); }
  double density(const FourVector& x) const { return evaluate(x).norm_squared(); }
};

// Throws PreconditionError when the case invariants are violated.
void validate(const PlaneWaveSolution& solution);

class ConstraintReport {
 public:
  ConstraintReport() = default;
  explicit ConstraintReport(CaseTag tag, bool trivial = false) : case_tag_(tag), trivial_(trivial) {}

  void add(std::string name, double residual);

  CaseTag case_tag() const { return case_tag_; }
  bool trivial() const { return trivial_; }
  const std::vector<std::pair<std::string, double>>& residuals() const { return residuals_; }
  bool contains(std::string_view name) const;
  // Throws std::out_of_range for unknown names.
  double operator[](std::string_view name) const;
  double max_residual() const;
  bool all_finite() const;

 private:
  CaseTag case_tag_ = CaseTag::Usual;
  bool trivial_ = false;
  std::vector<std::pair<std::string, double>> residuals_;
};

ConstraintReport check_usual(const FourVector& P, const FourVector& K, double m);
ConstraintReport check_generalized(const FourVector& P, const FourVector& K, const PotentialBundle& bundle,
                                   double m, double q, const FourVector& x = {});
ConstraintReport check_nonhermitian(const FourVector& P, const FourVector& K, const PotentialBundle& bundle,
                                    double m, double q, const FourVector& x = {});
ConstraintReport check_quat_left_first(const PlaneWaveSolution& solution, const FourVector& x = {});
ConstraintReport check_quat_left_second(const PlaneWaveSolution& solution, const FourVector& x = {});
ConstraintReport check_quat_right_first(const PlaneWaveSolution& solution, const FourVector& x = {});
ConstraintReport check_quat_right_second(const PlaneWaveSolution& solution, const FourVector& x = {});
// Dispatches on the case tag.
ConstraintReport check(const PlaneWaveSolution& solution, const FourVector& x = {});

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Complex determinant(const Matrix2& m);
double frobenius_norm(const Matrix2& m);
std::array<Complex, 2> apply(const Matrix2& m, const std::array<Complex, 2>& v);
// Null vector of a singular matrix from its larger-norm row, scaled so the largest
// component has modulus one.
std::array<Complex, 2> null_vector(const Matrix2& m);

// M = [[F + conj(G), H], [-conj(H), conj(F) - G]] acting on (phi0, conj(phi1)).
struct LeftMatrix {
  Matrix2 M{};
  Complex F, G, H;

  Matrix2 reassembled() const;
  double reassembly_residual() const;
};

// N = [[U + conj(V), W], [-conj(W) + conj(Z), conj(U) - V]] acting on (phi0, conj(phi1)).
// Z = 2iq(d.A1 + 2 A1.P) vanishes for admissible potentials.
struct RightMatrix {
  Matrix2 N{};
  Complex U, V, W, Z;

  Matrix2 reassembled() const;
  double reassembly_residual() const;
};

LeftMatrix build_left_matrix(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                             double q, const FourVector& x = {});
RightMatrix build_right_matrix(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                               double q, const FourVector& x = {});

PlaneWaveSolution solve_usual(const std::array<double, 3>& spatial_K, double m,
                              EnergyBranch branch = EnergyBranch::Positive, Complex phi0 = 1.0);

// K = alpha0 q A with A.P = 0 and constant A.
PlaneWaveSolution solve_generalized(const FourVector& A, const FourVector& P, double m, double q,
                                    EnergyBranch branch = EnergyBranch::Positive, Complex phi0 = 1.0);

// K = alpha0 q A, P = alpha0 q B with A.B = 0.
PlaneWaveSolution solve_nonhermitian(const FourVector& A, const FourVector& B, double m, double q,
                                     EnergyBranch branch = EnergyBranch::Positive, Complex phi0 = 1.0);

// A1 = a exp(-i q H0.x) with (H0 - 2A).a = 0; H0 defaults to 2A.
PlaneWaveSolution solve_quat_left_first(const FourVector& A, const FourVector& B, const ComplexFourVector& a,
                                        double m, double q, Complex phi0, Complex phi1,
                                        EnergyBranch branch = EnergyBranch::Positive,
                                        const std::optional<FourVector>& H0 = std::nullopt);

// P = 0, A1 = a phi0 phi1 exp(2i K.x), requires A.K = B.K = A.B = A.a = 0.
PlaneWaveSolution solve_quat_right_first(const FourVector& A, const FourVector& B, const ComplexFourVector& a,
                                         const std::array<double, 3>& spatial_K, double m, double q, Complex phi0,
                                         Complex phi1, EnergyBranch branch = EnergyBranch::Positive);

// Determinant: A1 is used as given and alpha0 is a root of det(M).
// Simplest: A1 is a direction, rescaled so that F = 0 and G = H (left) or U = 0 and V = W (right).
enum class SecondSolutionMode { Determinant, Simplest };

PlaneWaveSolution solve_quat_left_second(const FourVector& A, const FourVector& B, const ComplexFourVector& A1,
                                         double m, double q, EnergyBranch branch = EnergyBranch::Positive,
                                         SecondSolutionMode mode = SecondSolutionMode::Determinant);

PlaneWaveSolution solve_quat_right_second(const FourVector& A, const FourVector& B, const ComplexFourVector& A1,
                                          double m, double q, EnergyBranch branch = EnergyBranch::Positive,
                                          SecondSolutionMode mode = SecondSolutionMode::Determinant);

}  // namespace kgrhs
