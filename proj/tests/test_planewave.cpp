#include <gtest/gtest.h>

#include <cmath>

#include "kgrhs/analytic.hpp"
#include "kgrhs/planewave.hpp"
#include "kgrhs/verifier.hpp"
#include "support.hpp"

using namespace kgrhs;
using kgrhs::testing::Rng;

namespace {

PlaneWaveSolution complex_solution(CaseTag tag, const FourVector& P, const FourVector& K, const PotentialBundle& b,
                                   double m, double q) {
  PlaneWaveSolution s;
  s.case_tag = tag;
  s.Q = make_complex(P, K);
  s.potentials = b;
  s.mass = m;
  s.charge = q;
  return s;
}

class AllCases : public ::testing::TestWithParam<CaseTag> {};
class QuaternionicCases : public ::testing::TestWithParam<CaseTag> {};

}  // namespace

TEST(CaseTags, NamesRoundTrip) {
  for (CaseTag tag : kgrhs::testing::kAllCases) EXPECT_EQ(parse_case(to_string(tag)), tag);
  EXPECT_FALSE(parse_case("octonionic").has_value());
  EXPECT_TRUE(is_quaternionic(CaseTag::QuatRightFirst));
  EXPECT_FALSE(is_quaternionic(CaseTag::NonHermitian));
  EXPECT_EQ(operator_side(CaseTag::QuatRightSecond), OperatorSide::Right);
  EXPECT_EQ(operator_side(CaseTag::QuatLeftSecond), OperatorSide::Left);
}

TEST(CheckUsual, RestParticle) {
  const ConstraintReport r = check_usual({}, {1, 0, 0, 0}, 1.0);
  EXPECT_EQ(r["energy_relation"], 0.0);
  EXPECT_EQ(r["orthogonality"], 0.0);
}

TEST(CheckUsual, MovingParticle) {
  EXPECT_NEAR(check_usual({}, {std::sqrt(2.0), 1, 0, 0}, 1.0)["energy_relation"], 0.0, 1e-15);
}

TEST(CheckUsual, SpacelikeGrowthIsDetected) {
  // P.P = -0.25
  EXPECT_DOUBLE_EQ(check_usual({0, 0.5, 0, 0}, {1, 0, 0, 0}, 1.0)["energy_relation"], 0.25);
}

TEST(CheckUsual, RejectsNegativeMass) { EXPECT_THROW(check_usual({}, {}, -1.0), PreconditionError); }

TEST(ConstraintReport, MissingNameThrows) {
  const ConstraintReport r = check_usual({}, {1, 0, 0, 0}, 1.0);
  EXPECT_TRUE(r.contains("orthogonality"));
  EXPECT_FALSE(r.contains("matrix_determinant"));
  EXPECT_THROW(r["matrix_determinant"], std::out_of_range);
  EXPECT_TRUE(r.all_finite());
}

TEST(ConstraintReport, ZeroExponentIsTrivial) {
  PlaneWaveSolution s;
  EXPECT_TRUE(s.trivial());
  EXPECT_TRUE(check(s).trivial());
  EXPECT_FALSE(check(solve_usual({0, 0, 0}, 1.0)).trivial());
}

TEST(SolveUsual, RestEnergy) {
  const PlaneWaveSolution s = solve_usual({0, 0, 0}, 1.0);
  EXPECT_EQ(s.K(), (FourVector{1, 0, 0, 0}));
  EXPECT_EQ(s.P(), FourVector{});
}

TEST(SolveUsual, PythagoreanTriple) {
  const PlaneWaveSolution s = solve_usual({3, 0, 0}, 4.0);
  EXPECT_DOUBLE_EQ(s.K()[0], 5.0);
  EXPECT_DOUBLE_EQ(solve_usual({3, 0, 0}, 4.0, EnergyBranch::Negative).K()[0], -5.0);
  EXPECT_LT(check(s).max_residual(), 1e-12);
}

TEST(SolveUsual, Massless) { EXPECT_DOUBLE_EQ(solve_usual({1, 0, 0}, 0.0).K()[0], 1.0); }

TEST(CheckGeneralized, ZeroPotentialIsUsual) {
  Rng rng(201);
  const FourVector P = rng.vec4(), K = rng.vec4();
  const ConstraintReport g = check_generalized(P, K, PotentialBundle{}, 0.7, 1.3);
  const ConstraintReport u = check_usual(P, K, 0.7);
  EXPECT_EQ(g["energy_relation"], u["energy_relation"]);
  EXPECT_EQ(g["orthogonality"], u["orthogonality"]);
  EXPECT_EQ(g["gauge_divergence"], 0.0);
}

TEST(CheckGeneralized, RejectsImaginaryPotential) {
  EXPECT_THROW(check_generalized({}, {}, PotentialBundle::constant({}, {1, 0, 0, 0}), 1.0, 1.0), PreconditionError);
  EXPECT_THROW(check_generalized({}, {}, PotentialBundle::constant({}, {}, {1.0, 0, 0, 0}), 1.0, 1.0),
               PreconditionError);
}

TEST(CheckGeneralized, ScaledPotentialSolution) {
  // K = a q A with A.P = 0; the energy relation needs P.P = (a + 1)^2 q^2 A.A - m^2.
  const double q = 1.0, m = 1.0, a = 2.0;
  const FourVector A{0, 1, 0, 0};
  const double pp = (a + 1) * (a + 1) * q * q * minkowski_dot(A, A) - m * m;
  const FourVector P{0, 0, std::sqrt(-pp), 0};
  const FourVector K = (a * q) * A;
  const ConstraintReport r = check_generalized(P, K, PotentialBundle::constant(A), m, q);
  EXPECT_NEAR(r["energy_relation"], 0.0, 1e-12);
  EXPECT_EQ(r["orthogonality"], 0.0);
  // The (a - 1)^2 variant leaves a residual of 4 a q^2 |A.A|.
  const FourVector P_alt{0, 0, std::sqrt((a - 1) * (a - 1) + m * m), 0};
  EXPECT_NEAR(check_generalized(P_alt, K, PotentialBundle::constant(A), m, q)["energy_relation"], 4.0 * a, 1e-12);
}

TEST(CheckGeneralized, NonPropagatingBranch) {
  // (K + qA)^2 = 0 with P.P = -m^2.
  const ConstraintReport r = check_generalized({0, 0, 1, 0}, {0, 1, 0, 0}, PotentialBundle::constant({1, 0, 0, 0}), 1.0, 1.0);
  EXPECT_EQ(r["energy_relation"], 0.0);
  EXPECT_EQ(r["orthogonality"], 0.0);
}

TEST(CheckGeneralized, DivergenceOfExponentialField) {
  PotentialBundle b;
  b.A = PotentialField::exponential({1, 0, 0, 0}, {0.5, 0, 0, 0});
  const FourVector x{0.4, 0, 0, 0};
  EXPECT_NEAR(check_generalized({}, {}, b, 1.0, 1.0, x)["gauge_divergence"], 0.5 * std::exp(0.2), 1e-14);
  b.A = PotentialField::exponential({1, 0, 0, 0}, {0, 0.5, 0, 0});
  EXPECT_EQ(check_generalized({}, {}, b, 1.0, 1.0, x)["gauge_divergence"], 0.0);
}

TEST(SolveGeneralized, SolutionIsExact) {
  const FourVector A{0.4, 0.1, 0, 0}, P{0, 0, 0.3, 0};
  const PlaneWaveSolution s = solve_generalized(A, P, 1.0, 1.0);
  EXPECT_LT(check(s).max_residual(), 1e-12);
  const double alpha = s.K()[0] / A[0];
  EXPECT_NEAR(s.K()[1], alpha * A[1], 1e-12);
  EXPECT_NEAR(minkowski_dot(P, P), (alpha + 1) * (alpha + 1) * minkowski_dot(A, A) - 1.0, 1e-12);
  EXPECT_THROW(solve_generalized(A, {0.1, 0, 0, 0}, 1.0, 1.0), PreconditionError);
}

TEST(CheckNonHermitian, HermitianLimit) {
  Rng rng(202);
  for (int n = 0; n < 20; ++n) {
    const FourVector P = rng.vec4(), K = rng.vec4();
    const PotentialBundle b = PotentialBundle::constant(rng.vec4());
    const ConstraintReport nh = check_nonhermitian(P, K, b, 0.8, -1.1);
    const ConstraintReport g = check_generalized(P, K, b, 0.8, -1.1);
    for (const auto& [name, value] : g.residuals()) EXPECT_EQ(nh[name], value) << name;
  }
}

TEST(CheckNonHermitian, PerturbedTimeComponent) {
  const PlaneWaveSolution s = solve_nonhermitian({0.8, 0, 0.1, 0}, {0, 0.2, 0, 0.3}, 1.0, 1.0);
  ASSERT_LT(check(s).max_residual(), 1e-12);
  const double delta = 0.1, q = 1.0;
  const PotentialBundle shifted = PotentialBundle::constant({0.8, 0, 0.1, 0}, {delta, 0.2, 0, 0.3});
  const ConstraintReport r = check_nonhermitian(s.P(), s.K(), shifted, 1.0, q);
  // V = P - qB, so V^2 moves by -2 q delta V0 + q^2 delta^2.
  const double v0 = s.P()[0] - q * 0.0;
  EXPECT_NEAR(r["energy_relation"], std::abs(2.0 * q * delta * v0 - q * q * delta * delta), 1e-12);
}

TEST(SolveNonHermitian, NoRealRootWithoutPotentials) {
  EXPECT_THROW(solve_nonhermitian({}, {}, 1.0, 1.0), NoRealRoot);
  EXPECT_THROW(solve_nonhermitian({0.5, 0, 0, 0}, {0.5, 0, 0, 0}, 1.0, 1.0), PreconditionError);
}

TEST(Validate, ComplexCasesRejectQuaternionicParts) {
  PlaneWaveSolution s = solve_usual({1, 0, 0}, 1.0);
  s.phi1 = 0.5;
  EXPECT_THROW(validate(s), PreconditionError);
  s.phi1 = 0.0;
  s.potentials.A = PotentialField::constant(FourVector{1, 0, 0, 0});
  EXPECT_THROW(validate(s), PreconditionError);
}

TEST(LeftMatrix, DecoupledLimitIsDiagonal) {
  Rng rng(203);
  const FourVector P = rng.vec4(), K = rng.vec4(), A = rng.vec4(), B = rng.vec4();
  const double m = 0.9, q = 1.2;
  const LeftMatrix L = build_left_matrix(P, K, PotentialBundle::constant(A, B), m, q);
  EXPECT_EQ(L.H, Complex(0.0));
  EXPECT_EQ(L.M[0][1], Complex(0.0));
  EXPECT_EQ(L.M[1][0], Complex(0.0));
  const FourVector W = K + q * A, V = P - q * B;
  EXPECT_NEAR(L.M[0][0].real(), minkowski_dot(W, W) - minkowski_dot(V, V) - m * m, 1e-12);
  EXPECT_NEAR(L.M[0][0].imag(), -2.0 * minkowski_dot(W, V), 1e-12);
}

TEST(LeftMatrix, ReassemblyOnRandomInputs) {
  Rng rng(204);
  for (int n = 0; n < 100; ++n) {
    const LeftMatrix L = build_left_matrix(rng.vec4(2), rng.vec4(2), PotentialBundle::constant(rng.vec4(), rng.vec4(), rng.cvec4()),
                                           rng.uniform(0, 2), rng.uniform(-2, 2));
    EXPECT_LT(L.reassembly_residual(), 1e-12);
    EXPECT_EQ(L.M[1][0], -std::conj(L.M[0][1]));
  }
}

TEST(RightMatrix, SharesFirstDiagonalEntry) {
  Rng rng(205);
  for (int n = 0; n < 100; ++n) {
    const FourVector P = rng.vec4(2), K = rng.vec4(2);
    const PotentialBundle b = PotentialBundle::constant(rng.vec4(), rng.vec4(), rng.cvec4());
    const double m = rng.uniform(0, 2), q = rng.uniform(-2, 2);
    const RightMatrix N = build_right_matrix(P, K, b, m, q);
    EXPECT_EQ(N.N[0][0], build_left_matrix(P, K, b, m, q).M[0][0]);
    EXPECT_LT(N.reassembly_residual(), 1e-12);
  }
}

TEST(RightMatrix, OffDiagonalVanishesWithoutA1) {
  const RightMatrix N = build_right_matrix({0.1, 0.2, 0, 0}, {1, 0.3, 0, 0}, PotentialBundle::constant({0.5, 0, 0, 0}), 1.0, 1.0);
  EXPECT_EQ(N.W, Complex(0.0));
  EXPECT_EQ(N.Z, Complex(0.0));
}

TEST(Matrix2, DeterminantAndNullVector) {
  EXPECT_EQ(determinant(Matrix2{{{1.0, 2.0}, {3.0, 4.0}}}), Complex(-2.0));
  // Rank one: second row is i/(1+i) times the first.
  const Complex f = Complex(0, 1) / Complex(1, 1);
  const Matrix2 singular{{{Complex(1, 1), Complex(2, 0)}, {f * Complex(1, 1), f * Complex(2, 0)}}};
  EXPECT_LT(std::abs(determinant(singular)), 1e-15);
  const auto v = null_vector(singular);
  const auto r = apply(singular, v);
  EXPECT_LT(std::hypot(std::abs(r[0]), std::abs(r[1])), 1e-15);
  EXPECT_GT(std::max(std::abs(v[0]), std::abs(v[1])), 0.5);
}

TEST(SolveQuatLeftFirst, HZeroOrthogonality) {
  const FourVector A{0.8, 0, 0.1, 0}, B{0, 0.2, 0, 0.3};
  const PlaneWaveSolution s =
      solve_quat_left_first(A, B, {Complex(0.1, 0.05), 0, 0, 0.02}, 1.0, 1.0, Complex(1, 0.2), Complex(0.5, -0.3));
  const ConstraintReport r = check(s);
  EXPECT_EQ(r["quaternionic_orthogonality"], 0.0);
  EXPECT_LT(r.max_residual(), 1e-9);
  EXPECT_THROW(solve_quat_left_first(A, B, {Complex(0.1), 0, 0, 0}, 1.0, 1.0, 1.0, 1.0, EnergyBranch::Positive,
                                     FourVector{0, 0, 0, 0}),
               PreconditionError);
}

TEST(SolveQuatLeftFirst, MasslessWithQuaternionicPotential) {
  const FourVector A{0.8, 0, 0.1, 0}, B{0, 0.2, 0, 0.3};
  const ComplexFourVector a{Complex(0.7), 0, 0, 0};
  const PlaneWaveSolution s = solve_quat_left_first(A, B, a, 0.0, 1.0, 1.0, Complex(0.5));
  ASSERT_LT(check(s).max_residual(), 1e-9);
  // Dropping the j-part leaves a residual equal to the effective mass q^2 A1.A1*.
  PlaneWaveSolution bare = s;
  bare.potentials.A1 = PotentialField();
  EXPECT_NEAR(check(bare)["energy_relation"], 0.49, 1e-9);
}

TEST(SolveQuatLeftFirst, SpacelikeCouplingCannotReplaceMass) {
  EXPECT_THROW(solve_quat_left_first({0.8, 0, 0.1, 0}, {0, 0.2, 0, 0.3}, {0, Complex(0.3), 0, 0}, 0.0, 1.0, 1.0, 0.5),
               NoRealRoot);
}

TEST(SolveQuatRightFirst, OscillatingCouplingKeepsContinuity) {
  const PlaneWaveSolution s = solve_quat_right_first({0, 0, 0.3, 0}, {0, 0, 0, 0.2}, {0, 0, 0, Complex(0.4, 0)},
                                                     {0.5, 0, 0}, 1.0, 1.0, Complex(0.8, 0.1), Complex(0.6, 0.3));
  const ConstraintReport r = check(s);
  EXPECT_LT(r["continuity_constraint"], 1e-9);
  EXPECT_LT(r["first_solution_energy"], 1e-9);
  EXPECT_LT(r.max_residual(), 1e-9);
}

TEST(SolveQuatRightFirst, QuaternionicTermHasFlippedSign) {
  const FourVector A{0, 0, 0.3, 0}, B{0, 0, 0, 0.2};
  const ComplexFourVector a{0, 0, 0, Complex(0.4, 0)};
  const Complex phi0(0.8, 0.1), phi1(0.6, 0.3);
  const auto k0_sq = [&](const FourVector& pot, const ComplexFourVector& coupling) {
    const double k0 = solve_quat_right_first(pot, B, coupling, {0.5, 0, 0}, 1.0, 1.0, phi0, phi1).K()[0];
    return k0 * k0;
  };
  // Spacelike A and A1 of comparable size shift K0^2 in opposite directions.
  const double from_a = k0_sq(A, {}) - k0_sq({}, {});
  const double from_a1 = k0_sq({}, a) - k0_sq({}, {});
  EXPECT_NEAR(from_a, 0.09, 1e-12);
  EXPECT_NEAR(from_a1, -std::norm(phi0 * phi1) * 0.16, 1e-12);
  EXPECT_LT(from_a * from_a1, 0.0);
}

TEST(SolveQuatLeftSecond, DecoupledLimitIsGeneralized) {
  // With A1 = 0 and B = 0, det M = M11 M22: either a phi0 wave obeying the generalized relation
  // or a pure j wave obeying it with the charge reversed.
  const FourVector A{0.8, 0.1, 0, 0};
  for (EnergyBranch branch : {EnergyBranch::Positive, EnergyBranch::Negative}) {
    const PlaneWaveSolution s = solve_quat_left_second(A, {}, {}, 1.0, 1.0, branch);
    EXPECT_LT(check(s).max_residual(), 1e-9);
    const bool phi0_wave = s.phi1 == Complex(0.0);
    const bool phi1_wave = s.phi0 == Complex(0.0);
    ASSERT_TRUE(phi0_wave || phi1_wave);
    const double q = phi0_wave ? 1.0 : -1.0;
    EXPECT_LT(check_generalized(s.P(), s.K(), PotentialBundle::constant(A), 1.0, q).max_residual(), 1e-9);
  }
}

TEST(SolveQuatLeftSecond, NullVectorOfM) {
  const PlaneWaveSolution s =
      solve_quat_left_second({0.8, 0, 0.1, 0}, {0, 0.2, 0, 0.3}, {Complex(0.1, 0.05), 0, 0, 0.02}, 1.0, 1.0);
  const LeftMatrix L = build_left_matrix(s.P(), s.K(), s.potentials, s.mass, s.charge);
  EXPECT_LT(std::abs(determinant(L.M)), 1e-9);
  const auto r = apply(L.M, {s.phi0, std::conj(s.phi1)});
  EXPECT_LT(std::hypot(std::abs(r[0]), std::abs(r[1])), 1e-9 * frobenius_norm(L.M));
}

TEST(SolveQuatLeftSecond, SimplestSolutionHasFZeroAndGEqualH) {
  const PlaneWaveSolution s = solve_quat_left_second({0.8, 0, 0.1, 0}, {0, 0.2, 0, 0.3}, {Complex(0.1, 0.05), 0, 0, 0.02},
                                                     1.0, 1.0, EnergyBranch::Positive, SecondSolutionMode::Simplest);
  const LeftMatrix L = build_left_matrix(s.P(), s.K(), s.potentials, s.mass, s.charge);
  EXPECT_LT(std::abs(L.F), 1e-9);
  EXPECT_LT(std::abs(L.G - L.H), 1e-9);
  EXPECT_LT(std::abs(determinant(L.M)), 1e-9);
}

TEST(SolveQuatLeftSecond, RequiresOrthogonalPotentials) {
  EXPECT_THROW(solve_quat_left_second({0.6, 0.2, 0, 0}, {0.3, 0.3, 0, 0}, {0.1, 0, 0, 0}, 1.0, 1.0), PreconditionError);
}

TEST(SolveQuatRightSecond, SimplestSolutionHasUZeroAndVEqualW) {
  const PlaneWaveSolution s = solve_quat_right_second({0.6, 0.2, 0, 0}, {0, 0, 0.3, 0}, {0.1, 1, 0, 0}, 1.0, 1.0,
                                                      EnergyBranch::Positive, SecondSolutionMode::Simplest);
  const RightMatrix N = build_right_matrix(s.P(), s.K(), s.potentials, s.mass, s.charge);
  EXPECT_LT(std::abs(N.U), 1e-9);
  EXPECT_LT(std::abs(N.V - N.W), 1e-12 * std::max(1.0, std::abs(N.V)));
  EXPECT_LT(std::abs(determinant(N.N)), 1e-9);
  EXPECT_LT(check(s).max_residual(), 1e-9);
}

TEST(SolveQuatRightSecond, DeterminantModeWhenRootExists) {
  const PlaneWaveSolution s =
      solve_quat_right_second({0.8, 0, 0.1, 0}, {0, 0, 0, 0.9}, {Complex(0.1, 0.05), 0.2, 0, 0}, 1.0, 1.0);
  const ConstraintReport r = check(s);
  EXPECT_LT(r["matrix_determinant"], 1e-9);
  EXPECT_LT(r["null_vector"], 1e-9);
}

TEST(SolveQuatRightSecond, ReportsMissingRoot) {
  EXPECT_THROW(solve_quat_right_second({0.8, 0, 0.1, 0}, {0, 0.2, 0, 0}, {Complex(0.1, 0.05), 0, 0, 0.02}, 1.0, 1.0),
               NoRealRoot);
}

TEST_P(AllCases, AcceptedSolutionsAreExact) {
  Rng rng(300 + static_cast<int>(GetParam()));
  for (int n = 0; n < 6; ++n) {
    const PlaneWaveSolution s = kgrhs::testing::random_solution(GetParam(), rng);
    const ConstraintReport r = check(s);
    EXPECT_TRUE(r.all_finite());
    EXPECT_LT(r.max_residual(), 1e-9);
    for (int k = 0; k < 5; ++k) {
      const FourVector x = rng.point();
      EXPECT_LT(kge_apply(s, x).norm(), 1e-9 * (1.0 + std::pow(kgrhs::testing::exponent_size(s), 2)) * s.evaluate(x).norm());
    }
  }
}

TEST_P(AllCases, FiniteDifferenceResidualIsSmall) {
  Rng rng(400 + static_cast<int>(GetParam()));
  int tested = 0;
  while (tested < 4) {
    const PlaneWaveSolution s = kgrhs::testing::random_solution(GetParam(), rng);
    // Order-2 truncation scales as (h |Q|)^2.
    if (kgrhs::testing::exponent_size(s) > 2.5) continue;
    ++tested;
    for (int k = 0; k < 10; ++k) EXPECT_LT(kge_residual_fd(s, rng.point()), 1e-6);
  }
}

TEST_P(QuaternionicCases, LimitReproducesNonHermitian) {
  Rng rng(500);
  for (int n = 0; n < 20; ++n) {
    const FourVector P = rng.vec4(), K = rng.vec4();
    const PotentialBundle b = PotentialBundle::constant(rng.vec4(), rng.vec4());
    PlaneWaveSolution s = complex_solution(GetParam(), P, K, b, 0.9, 1.1);
    s.exponent_side = GetParam() == CaseTag::QuatLeftSecond || GetParam() == CaseTag::QuatRightSecond
                          ? ExponentSide::Right
                          : ExponentSide::Left;
    const ConstraintReport quat = check(s);
    const ConstraintReport ref = check_nonhermitian(P, K, b, 0.9, 1.1);
    for (const auto& [name, value] : ref.residuals()) EXPECT_NEAR(quat[name], value, 1e-12 * std::max(1.0, value)) << name;
  }
}

const auto kCaseName = [](const auto& info) { return std::string(to_string(info.param)); };

INSTANTIATE_TEST_SUITE_P(Cases, AllCases, ::testing::ValuesIn(kgrhs::testing::kAllCases), kCaseName);
INSTANTIATE_TEST_SUITE_P(Cases, QuaternionicCases,
                         ::testing::Values(CaseTag::QuatLeftFirst, CaseTag::QuatLeftSecond, CaseTag::QuatRightFirst,
                                           CaseTag::QuatRightSecond),
                         kCaseName);
