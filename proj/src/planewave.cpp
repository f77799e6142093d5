#include "kgrhs/planewave.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "kgrhs/observables.hpp"
#include "kgrhs/roots.hpp"

namespace kgrhs {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kAcceptTolerance = 1e-9;

struct CaseName {
  CaseTag tag;
  std::string_view name;
};

constexpr CaseName kCaseNames[] = {
    {CaseTag::Usual, "usual"},
    {CaseTag::Generalized, "generalized"},
    {CaseTag::NonHermitian, "non_hermitian"},
    {CaseTag::QuatLeftFirst, "quat_left_first"},
    {CaseTag::QuatLeftSecond, "quat_left_second"},
    {CaseTag::QuatRightFirst, "quat_right_first"},
    {CaseTag::QuatRightSecond, "quat_right_second"},
};

bool is_zero(const ComplexFourVector& v) {
  for (std::size_t mu = 0; mu < 4; ++mu)
    if (v[mu] != Complex{}) return false;
  return true;
}

double magnitude(const FourVector& v) { return std::sqrt(euclidean_norm_squared(v)); }

double magnitude(const ComplexFourVector& v) { return std::sqrt(euclidean_norm_squared(v)); }

void require_orthogonal(const FourVector& a, const FourVector& b, const char* what) {
  const double tol = 1e-12 * std::max(1.0, magnitude(a) * magnitude(b));
  if (std::abs(minkowski_dot(a, b)) > tol) throw PreconditionError(std::string(what) + " must vanish");
}

void require_orthogonal(const FourVector& a, const ComplexFourVector& b, const char* what) {
  const double tol = 1e-12 * std::max(1.0, magnitude(a) * magnitude(b));
  if (std::abs(minkowski_dot(a, b)) > tol) throw PreconditionError(std::string(what) + " must vanish");
}

// Residuals shared by every case: W = K + qA, V = P - qB.
struct ComplexCaseTerms {
  FourVector W, V;
  double dA = 0.0;
  double dB = 0.0;
};

ComplexCaseTerms complex_terms(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double q,
                               const FourVector& x) {
  ComplexCaseTerms t;
  t.W = K + q * real_part(bundle.A.value(x));
  t.V = P - q * real_part(bundle.B.value(x));
  t.dA = bundle.A.divergence(x).real();
  t.dB = bundle.B.divergence(x).real();
  return t;
}

double a1_square(const PotentialBundle& bundle, const FourVector& x) {
  const ComplexFourVector a1 = bundle.A1.value(x);
  return minkowski_dot(a1, hermitian_conjugate(a1)).real();
}

double continuity_residual(const PlaneWaveSolution& solution, const FourVector& x) {
  const double rho = solution.density(x);
  if (rho == 0.0) return 0.0;
  const FourVector J = current(solution, x);
  const FourVector g = gamma(solution, x);
  return std::abs(current_divergence(solution, x) + minkowski_dot(g, J)) / rho;
}

void require_case(const PlaneWaveSolution& solution, CaseTag tag, ExponentSide side) {
  if (solution.case_tag != tag)
    throw PreconditionError("solution case is " + std::string(to_string(solution.case_tag)) + ", expected " +
                            std::string(to_string(tag)));
  if (solution.exponent_side != side) throw PreconditionError("wrong exponent side for " + std::string(to_string(tag)));
}

double amplitude_sum(const PlaneWaveSolution& s) { return std::norm(s.phi0) + std::norm(s.phi1); }

// Real part of the amplitude-weighted rows, divided by |phi0|^2 + |phi1|^2.
double weighted_real(const Matrix2& m, const PlaneWaveSolution& s) {
  const double sigma = amplitude_sum(s);
  if (sigma == 0.0) return std::abs(m[0][0].real());
  return std::abs(std::norm(s.phi0) * m[0][0].real() + std::norm(s.phi1) * m[1][1].real()) / sigma;
}

double null_vector_residual(const Matrix2& m, const PlaneWaveSolution& s) {
  const double mn = frobenius_norm(m);
  const std::array<Complex, 2> v{s.phi0, std::conj(s.phi1)};
  const double vn = std::max(std::abs(v[0]), std::abs(v[1]));
  if (mn == 0.0 || vn == 0.0) return 0.0;
  const auto r = apply(m, v);
  return std::hypot(std::abs(r[0]), std::abs(r[1])) / (mn * vn);
}

double solution_scale(const PlaneWaveSolution& s) {
  const PotentialBundle& b = s.potentials;
  const double q = std::abs(s.charge);
  const double scale = std::max({1.0, magnitude(s.Q), s.mass, q * magnitude(b.A.amplitude()),
                                 q * magnitude(b.B.amplitude()), q * magnitude(b.A1.amplitude())});
  return scale * scale;
}

PlaneWaveSolution accept(PlaneWaveSolution s) {
  validate(s);
  const ConstraintReport report = check(s);
  const double tol = kAcceptTolerance * solution_scale(s);
  for (const auto& [name, value] : report.residuals()) {
    if (!(value <= tol))
      throw PreconditionError("constructed " + std::string(to_string(s.case_tag)) + " solution violates " + name +
                              " (residual " + std::to_string(value) + ")");
  }
  return s;
}

double select_root(const std::vector<double>& roots, EnergyBranch branch, const char* what) {
  if (roots.empty()) throw NoRealRoot(std::string("no real alpha0 for ") + what);
  return branch == EnergyBranch::Positive ? roots.back() : roots.front();
}

void assign_null_vector(PlaneWaveSolution& s, const Matrix2& m) {
  const auto v = null_vector(m);
  s.phi0 = v[0];
  s.phi1 = std::conj(v[1]);
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  for (const auto& c : kCaseNames)
    if (c.tag == tag) return c.name;
  return "unknown";
}

std::optional<CaseTag> parse_case(std::string_view name) {
  for (const auto& c : kCaseNames)
    if (c.name == name) return c.tag;
  return std::nullopt;
}

bool is_quaternionic(CaseTag tag) {
  return tag == CaseTag::QuatLeftFirst || tag == CaseTag::QuatLeftSecond || tag == CaseTag::QuatRightFirst ||
         tag == CaseTag::QuatRightSecond;
}

OperatorSide operator_side(CaseTag tag) {
  return tag == CaseTag::QuatRightFirst || tag == CaseTag::QuatRightSecond ? OperatorSide::Right
                                                                          : OperatorSide::Left;
}

bool PlaneWaveSolution::trivial() const { return is_zero(Q); }

Quaternion PlaneWaveSolution::evaluate(const FourVector& x) const {
  const Complex e = std::exp(minkowski_dot(Q, x));
  const Complex e1 = exponent_side == ExponentSide::Left ? e : std::conj(e);
  return {phi0 * e, phi1 * e1};
}

void validate(const PlaneWaveSolution& s) {
  if (!(s.mass >= 0.0) || !std::isfinite(s.mass)) throw PreconditionError("mass must be finite and non-negative");
  if (!std::isfinite(s.charge)) throw PreconditionError("charge must be finite");
  for (std::size_t mu = 0; mu < 4; ++mu)
    if (!std::isfinite(s.Q[mu].real()) || !std::isfinite(s.Q[mu].imag()))
      throw PreconditionError("exponent must be finite");
  if (!s.potentials.A.is_real() || !s.potentials.B.is_real())
    throw PreconditionError("potentials A and B must be real fields");
  if (s.case_tag == CaseTag::Usual && !s.potentials.is_zero())
    throw PreconditionError("usual case requires vanishing potentials");
  if (s.case_tag == CaseTag::Generalized && !s.potentials.B.is_zero())
    throw PreconditionError("generalized case requires B = 0");
  if (!is_quaternionic(s.case_tag)) {
    if (s.phi1 != Complex{}) throw PreconditionError("complex cases require phi1 = 0");
    if (!s.potentials.A1.is_zero()) throw PreconditionError("complex cases require A1 = 0");
  }
}

void ConstraintReport::add(std::string name, double residual) { residuals_.emplace_back(std::move(name), residual); }

bool ConstraintReport::contains(std::string_view name) const {
  return std::any_of(residuals_.begin(), residuals_.end(), [&](const auto& r) { return r.first == name; });
}

double ConstraintReport::operator[](std::string_view name) const {
  for (const auto& r : residuals_)
    if (r.first == name) return r.second;
  throw std::out_of_range("no residual named " + std::string(name));
}

double ConstraintReport::max_residual() const {
  double m = 0.0;
  for (const auto& r : residuals_) m = std::max(m, r.second);
  return m;
}

bool ConstraintReport::all_finite() const {
  return std::all_of(residuals_.begin(), residuals_.end(), [](const auto& r) { return std::isfinite(r.second); });
}

ConstraintReport check_usual(const FourVector& P, const FourVector& K, double m) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  ConstraintReport r(CaseTag::Usual, euclidean_norm_squared(P) + euclidean_norm_squared(K) == 0.0);
  r.add("energy_relation", std::abs(minkowski_dot(K, K) - minkowski_dot(P, P) - m * m));
  r.add("orthogonality", std::abs(minkowski_dot(K, P)));
  return r;
}

ConstraintReport check_generalized(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                                   double q, const FourVector& x) {
  if (!bundle.B.is_zero() || !bundle.A1.is_zero())
    throw PreconditionError("generalized case requires B = 0 and A1 = 0");
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  const ComplexCaseTerms t = complex_terms(P, K, bundle, q, x);
  ConstraintReport r(CaseTag::Generalized, euclidean_norm_squared(P) + euclidean_norm_squared(K) == 0.0);
  r.add("energy_relation", std::abs(minkowski_dot(t.W, t.W) - minkowski_dot(P, P) - m * m));
  r.add("orthogonality", std::abs(minkowski_dot(t.W, P)));
  r.add("gauge_divergence", std::abs(t.dA));
  return r;
}

ConstraintReport check_nonhermitian(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                                    double q, const FourVector& x) {
  if (!bundle.A1.is_zero()) throw PreconditionError("non-hermitian case requires A1 = 0");
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  const ComplexCaseTerms t = complex_terms(P, K, bundle, q, x);
  ConstraintReport r(CaseTag::NonHermitian, euclidean_norm_squared(P) + euclidean_norm_squared(K) == 0.0);
  r.add("energy_relation", std::abs(minkowski_dot(t.W, t.W) - minkowski_dot(t.V, t.V) + q * t.dB - m * m));
  r.add("orthogonality", std::abs(minkowski_dot(t.W, t.V)));
  r.add("gauge_divergence", std::abs(t.dA));
  return r;
}

ConstraintReport check_quat_left_first(const PlaneWaveSolution& s, const FourVector& x) {
  require_case(s, CaseTag::QuatLeftFirst, ExponentSide::Left);
  const double q = s.charge;
  const ComplexCaseTerms t = complex_terms(s.P(), s.K(), s.potentials, q, x);
  const ComplexFourVector a1 = s.potentials.A1.value(x);
  const Complex coupling =
      kI * s.potentials.A1.divergence(x) - 2.0 * q * minkowski_dot(s.potentials.A.value(x), a1);

  ConstraintReport r(s.case_tag, s.trivial());
  r.add("energy_relation", std::abs(minkowski_dot(t.W, t.W) - minkowski_dot(t.V, t.V) + q * t.dB -
                                    q * q * a1_square(s.potentials, x) - s.mass * s.mass));
  r.add("orthogonality", std::abs(minkowski_dot(t.W, t.V)));
  r.add("gauge_divergence", std::abs(t.dA));
  r.add("quaternionic_orthogonality", std::abs(coupling));
  r.add("continuity_constraint", continuity_residual(s, x));
  return r;
}

ConstraintReport check_quat_left_second(const PlaneWaveSolution& s, const FourVector& x) {
  require_case(s, CaseTag::QuatLeftSecond, ExponentSide::Right);
  const double q = s.charge;
  const ComplexCaseTerms t = complex_terms(s.P(), s.K(), s.potentials, q, x);
  const LeftMatrix lm = build_left_matrix(s.P(), s.K(), s.potentials, s.mass, q, x);
  const FourVector wm = s.K() - q * real_part(s.potentials.A.value(x));
  const double sigma = std::max(amplitude_sum(s), std::numeric_limits<double>::min());
  const FourVector weighted = std::norm(s.phi0) * t.W - std::norm(s.phi1) * wm;

  ConstraintReport r(s.case_tag, s.trivial());
  r.add("energy_relation", weighted_real(lm.M, s));
  r.add("orthogonality", std::abs(minkowski_dot(weighted, t.V)) / sigma);
  r.add("gauge_divergence", std::abs(t.dA));
  r.add("matrix_determinant", std::abs(determinant(lm.M)));
  r.add("null_vector", null_vector_residual(lm.M, s));
  r.add("continuity_constraint", continuity_residual(s, x));
  return r;
}

ConstraintReport check_quat_right_first(const PlaneWaveSolution& s, const FourVector& x) {
  require_case(s, CaseTag::QuatRightFirst, ExponentSide::Left);
  const double q = s.charge;
  const PotentialBundle& b = s.potentials;
  const ComplexFourVector a0 = b.complex_part(x);
  const ComplexFourVector a1 = b.A1.value(x);
  const Complex d_a0 = b.A.divergence(x) + kI * b.B.divergence(x);
  const Complex d_a1 = b.A1.divergence(x);
  const Complex a1_qbar = minkowski_dot(a1, hermitian_conjugate(s.Q));
  const Complex a_a1 = minkowski_dot(b.A.value(x), a1);

  const Complex energy =
      -minkowski_dot(s.Q, s.Q) + q * q * minkowski_dot(a0, a0) - q * q * a1_square(b, x) - s.mass * s.mass;
  const Complex divergence = d_a0 + 2.0 * minkowski_dot(a0, s.Q);
  // Phi0 component of the wave equation, split as in the non-hermitian case.
  const Complex combined = energy - kI * q * divergence;

  ConstraintReport r(s.case_tag, s.trivial());
  r.add("energy_relation", std::abs(combined.real()));
  r.add("orthogonality", 0.5 * std::abs(combined.imag() + q * d_a0.real()));
  r.add("gauge_divergence", std::abs(d_a0.real()));
  r.add("first_solution_energy", std::abs(energy));
  r.add("first_solution_divergence", std::abs(divergence));
  r.add("quaternionic_divergence", std::abs(d_a1 + 2.0 * a1_qbar - 2.0 * kI * q * a_a1));
  r.add("conjugate_coupling", std::abs(d_a1 + 2.0 * a1_qbar + 2.0 * kI * q * a_a1));
  r.add("continuity_constraint", continuity_residual(s, x));
  return r;
}

ConstraintReport check_quat_right_second(const PlaneWaveSolution& s, const FourVector& x) {
  require_case(s, CaseTag::QuatRightSecond, ExponentSide::Right);
  const double q = s.charge;
  const ComplexCaseTerms t = complex_terms(s.P(), s.K(), s.potentials, q, x);
  const RightMatrix rm = build_right_matrix(s.P(), s.K(), s.potentials, s.mass, q, x);
  const FourVector B = real_part(s.potentials.B.value(x));
  const ComplexFourVector a1 = s.potentials.A1.value(x);
  const double sigma = std::max(amplitude_sum(s), std::numeric_limits<double>::min());
  const Complex pair = s.phi0 * s.phi1;
  FourVector flux = std::norm(s.phi0) * t.V + std::norm(s.phi1) * (s.P() + q * B);
  for (std::size_t mu = 0; mu < 4; ++mu) flux[mu] -= 2.0 * q * (std::conj(a1[mu]) * pair).imag();

  ConstraintReport r(s.case_tag, s.trivial());
  r.add("energy_relation", weighted_real(rm.N, s));
  r.add("orthogonality", std::abs(minkowski_dot(t.W, flux)) / sigma);
  r.add("gauge_divergence", std::abs(t.dA));
  r.add("coupling_admissibility", std::abs(rm.Z));
  r.add("matrix_determinant", std::abs(determinant(rm.N)));
  r.add("null_vector", null_vector_residual(rm.N, s));
  r.add("continuity_constraint", continuity_residual(s, x));
  return r;
}

ConstraintReport check(const PlaneWaveSolution& s, const FourVector& x) {
  switch (s.case_tag) {
    case CaseTag::Usual: {
      ConstraintReport r = check_usual(s.P(), s.K(), s.mass);
      return r;
    }
    case CaseTag::Generalized:
      return check_generalized(s.P(), s.K(), s.potentials, s.mass, s.charge, x);
    case CaseTag::NonHermitian:
      return check_nonhermitian(s.P(), s.K(), s.potentials, s.mass, s.charge, x);
    case CaseTag::QuatLeftFirst:
      return check_quat_left_first(s, x);
    case CaseTag::QuatLeftSecond:
      return check_quat_left_second(s, x);
    case CaseTag::QuatRightFirst:
      return check_quat_right_first(s, x);
    case CaseTag::QuatRightSecond:
      return check_quat_right_second(s, x);
  }
  throw std::logic_error("unhandled case tag");
}

PlaneWaveSolution solve_usual(const std::array<double, 3>& k, double m, EnergyBranch branch, Complex phi0) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  const double k0 = std::sqrt(k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m);
  PlaneWaveSolution s;
  s.case_tag = CaseTag::Usual;
  s.Q = make_complex({}, {branch == EnergyBranch::Positive ? k0 : -k0, k[0], k[1], k[2]});
  s.phi0 = phi0;
  s.mass = m;
  return accept(s);
}

PlaneWaveSolution solve_generalized(const FourVector& A, const FourVector& P, double m, double q, EnergyBranch branch,
                                    Complex phi0) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, P, "A.P");
  const double aa = q * q * minkowski_dot(A, A);
  if (aa == 0.0) throw NoRealRoot("generalized ansatz needs q^2 A.A != 0");
  const double ratio = (minkowski_dot(P, P) + m * m) / aa;
  if (ratio < 0.0) throw NoRealRoot("(alpha0 + 1)^2 would be negative");
  const double alpha = -1.0 + (branch == EnergyBranch::Positive ? 1.0 : -1.0) * std::sqrt(ratio);

  PlaneWaveSolution s;
  s.case_tag = CaseTag::Generalized;
  s.Q = make_complex(P, (alpha * q) * A);
  s.phi0 = phi0;
  s.potentials = PotentialBundle::constant(A);
  s.mass = m;
  s.charge = q;
  return accept(s);
}

PlaneWaveSolution solve_nonhermitian(const FourVector& A, const FourVector& B, double m, double q, EnergyBranch branch,
                                     Complex phi0) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, B, "A.B");
  const double a2 = q * q * minkowski_dot(A, A);
  const double b2 = q * q * minkowski_dot(B, B);
  const auto f = [&](double a) { return (a + 1.0) * (a + 1.0) * a2 - (a - 1.0) * (a - 1.0) * b2 - m * m; };
  const double alpha = select_root(find_real_roots(f), branch, "the non-hermitian energy relation");

  PlaneWaveSolution s;
  s.case_tag = CaseTag::NonHermitian;
  s.Q = make_complex((alpha * q) * B, (alpha * q) * A);
  s.phi0 = phi0;
  s.potentials = PotentialBundle::constant(A, B);
  s.mass = m;
  s.charge = q;
  return accept(s);
}

PlaneWaveSolution solve_quat_left_first(const FourVector& A, const FourVector& B, const ComplexFourVector& a, double m,
                                        double q, Complex phi0, Complex phi1, EnergyBranch branch,
                                        const std::optional<FourVector>& H0) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, B, "A.B");
  const FourVector H = H0.value_or(2.0 * A);
  require_orthogonal(H - 2.0 * A, a, "(H0 - 2A).A1");
  const double a2 = q * q * minkowski_dot(A, A);
  const double b2 = q * q * minkowski_dot(B, B);
  const double s2 = q * q * minkowski_dot(a, hermitian_conjugate(a)).real();
  const auto f = [&](double x) { return (x + 1.0) * (x + 1.0) * a2 - (x - 1.0) * (x - 1.0) * b2 - s2 - m * m; };
  const double alpha = select_root(find_real_roots(f), branch, "the left first energy relation");

  PlaneWaveSolution s;
  s.case_tag = CaseTag::QuatLeftFirst;
  s.exponent_side = ExponentSide::Left;
  s.Q = make_complex((alpha * q) * B, (alpha * q) * A);
  s.phi0 = phi0;
  s.phi1 = phi1;
  s.potentials.A = PotentialField::constant(A);
  s.potentials.B = PotentialField::constant(B);
  s.potentials.A1 = PotentialField(a, make_complex({}, (-q) * H));
  s.mass = m;
  s.charge = q;
  return accept(s);
}

PlaneWaveSolution solve_quat_right_first(const FourVector& A, const FourVector& B, const ComplexFourVector& a,
                                         const std::array<double, 3>& k, double m, double q, Complex phi0,
                                         Complex phi1, EnergyBranch branch) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, B, "A.B");
  require_orthogonal(A, a, "A.A1");
  const Complex pair = phi0 * phi1;
  const ComplexFourVector amp = pair * a;
  const double k0_sq = k[0] * k[0] + k[1] * k[1] + k[2] * k[2] + m * m -
                       q * q * (minkowski_dot(A, A) - minkowski_dot(B, B)) +
                       q * q * minkowski_dot(amp, hermitian_conjugate(amp)).real();
  if (k0_sq < 0.0) throw NoRealRoot("right first energy relation has no real K0");
  const double k0 = (branch == EnergyBranch::Positive ? 1.0 : -1.0) * std::sqrt(k0_sq);
  const FourVector K{k0, k[0], k[1], k[2]};
  require_orthogonal(A, K, "A.K");
  require_orthogonal(B, K, "B.K");

  PlaneWaveSolution s;
  s.case_tag = CaseTag::QuatRightFirst;
  s.exponent_side = ExponentSide::Left;
  s.Q = make_complex({}, K);
  s.phi0 = phi0;
  s.phi1 = phi1;
  s.potentials.A = PotentialField::constant(A);
  s.potentials.B = PotentialField::constant(B);
  s.potentials.A1 = PotentialField(amp, make_complex({}, 2.0 * K));
  s.mass = m;
  s.charge = q;
  return accept(s);
}

PlaneWaveSolution solve_quat_left_second(const FourVector& A, const FourVector& B, const ComplexFourVector& A1,
                                         double m, double q, EnergyBranch branch, SecondSolutionMode mode) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, B, "A.B");
  const double a2 = minkowski_dot(A, A);
  const double b2 = minkowski_dot(B, B);
  const Complex a_d = minkowski_dot(to_complex(A), A1);
  const double d2 = minkowski_dot(A1, hermitian_conjugate(A1)).real();

  const auto bundle_for = [&](const ComplexFourVector& a1) { return PotentialBundle::constant(A, B, a1); };
  double alpha = 0.0;
  ComplexFourVector a1 = A1;
  if (mode == SecondSolutionMode::Determinant) {
    const PotentialBundle bundle = bundle_for(A1);
    const auto det = [&](double x) {
      return determinant(build_left_matrix((x * q) * B, (x * q) * A, bundle, m, q).M).real();
    };
    alpha = select_root(find_real_roots(det), branch, "det M = 0");
  } else {
    if (std::abs(a_d) == 0.0) throw PreconditionError("simplest left second solution needs A.A1 != 0");
    const double ratio = a2 * a2 * d2 / std::norm(a_d);
    const auto F = [&](double x) {
      return q * q * ((x * x + 1.0) * a2 - (x - 1.0) * (x - 1.0) * b2) - q * q * x * x * ratio - m * m;
    };
    alpha = select_root(find_real_roots(F), branch, "F = 0");
    a1 = (-alpha * a2 / a_d) * A1;
  }

  PlaneWaveSolution s;
  s.case_tag = CaseTag::QuatLeftSecond;
  s.exponent_side = ExponentSide::Right;
  s.Q = make_complex((alpha * q) * B, (alpha * q) * A);
  s.potentials = bundle_for(a1);
  s.mass = m;
  s.charge = q;
  assign_null_vector(s, build_left_matrix(s.P(), s.K(), s.potentials, m, q).M);
  return accept(s);
}

PlaneWaveSolution solve_quat_right_second(const FourVector& A, const FourVector& B, const ComplexFourVector& A1,
                                          double m, double q, EnergyBranch branch, SecondSolutionMode mode) {
  if (!(m >= 0.0)) throw PreconditionError("mass must be non-negative");
  require_orthogonal(A, B, "A.B");
  require_orthogonal(B, A1, "A1.B");
  const double a2 = minkowski_dot(A, A);
  const double b2 = minkowski_dot(B, B);
  const Complex a_d = minkowski_dot(to_complex(A), A1);
  const double d2 = minkowski_dot(A1, hermitian_conjugate(A1)).real();

  const auto bundle_for = [&](const ComplexFourVector& a1) { return PotentialBundle::constant(A, B, a1); };
  double alpha = 0.0;
  ComplexFourVector a1 = A1;
  if (mode == SecondSolutionMode::Determinant) {
    const PotentialBundle bundle = bundle_for(A1);
    const auto det = [&](double x) {
      return determinant(build_right_matrix((x * q) * B, (x * q) * A, bundle, m, q).N).real();
    };
    alpha = select_root(find_real_roots(det), branch, "det N = 0");
  } else {
    if (std::abs(a_d) == 0.0) throw PreconditionError("simplest right second solution needs A.A1 != 0");
    const auto U = [&](double x) {
      const double s2 = std::pow(x * b2 / (x + 1.0), 2) * d2 / std::norm(a_d);
      return q * q * ((x + 1.0) * (x + 1.0) * a2 - (x * x + 1.0) * b2 - s2) - m * m;
    };
    alpha = select_root(find_real_roots(U), branch, "U = 0");
    if (alpha == -1.0) throw NoRealRoot("U = 0 root sits on the V = W pole");
    a1 = (-alpha * b2 / ((alpha + 1.0) * a_d)) * A1;
  }

  PlaneWaveSolution s;
  s.case_tag = CaseTag::QuatRightSecond;
  s.exponent_side = ExponentSide::Right;
  s.Q = make_complex((alpha * q) * B, (alpha * q) * A);
  s.potentials = bundle_for(a1);
  s.mass = m;
  s.charge = q;
  assign_null_vector(s, build_right_matrix(s.P(), s.K(), s.potentials, m, q).N);
  return accept(s);
}

}  // namespace kgrhs
