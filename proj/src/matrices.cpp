#include <algorithm>
#include <cmath>

#include "kgrhs/planewave.hpp"

namespace kgrhs {

namespace {

constexpr Complex kI{0.0, 1.0};

struct MatrixTerms {
  FourVector A, B;
  ComplexFourVector A1;
  Complex dA, dB, dA1;
  double aa = 0.0;  // A1_mu conj(A1)^mu
};

MatrixTerms evaluate_terms(const PotentialBundle& bundle, const FourVector& x) {
  MatrixTerms t;
  t.A = real_part(bundle.A.value(x));
  t.B = real_part(bundle.B.value(x));
  t.A1 = bundle.A1.value(x);
  t.dA = bundle.A.divergence(x);
  t.dB = bundle.B.divergence(x);
  t.dA1 = bundle.A1.divergence(x);
  t.aa = minkowski_dot(t.A1, hermitian_conjugate(t.A1)).real();
  return t;
}

double max_entry_difference(const Matrix2& a, const Matrix2& b) {
  double d = 0.0;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) d = std::max(d, std::abs(a[r][c] - b[r][c]));
  return d;
}

// Shared first diagonal entry of M and N.
Complex first_diagonal(const FourVector& w, const FourVector& v, const MatrixTerms& t, double m, double q) {
  return minkowski_dot(w, w) - minkowski_dot(v, v) + q * t.dB.real() - q * q * t.aa - m * m -
         kI * (q * t.dA.real() + 2.0 * minkowski_dot(w, v));
}

}  // namespace

Complex determinant(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

double frobenius_norm(const Matrix2& m) {
  return std::sqrt(std::norm(m[0][0]) + std::norm(m[0][1]) + std::norm(m[1][0]) + std::norm(m[1][1]));
}

std::array<Complex, 2> apply(const Matrix2& m, const std::array<Complex, 2>& v) {
  return {m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1]};
}

std::array<Complex, 2> null_vector(const Matrix2& m) {
  const double n0 = std::norm(m[0][0]) + std::norm(m[0][1]);
  const double n1 = std::norm(m[1][0]) + std::norm(m[1][1]);
  const auto& row = n0 >= n1 ? m[0] : m[1];
  if (std::max(n0, n1) == 0.0) return {Complex(1.0), Complex(0.0)};
  std::array<Complex, 2> v{row[1], -row[0]};
  const double scale = std::max(std::abs(v[0]), std::abs(v[1]));
  v[0] /= scale;
  v[1] /= scale;
  return v;
}

Matrix2 LeftMatrix::reassembled() const {
  return {{{F + std::conj(G), H}, {-std::conj(H), std::conj(F) - G}}};
}

double LeftMatrix::reassembly_residual() const { return max_entry_difference(M, reassembled()); }

Matrix2 RightMatrix::reassembled() const {
  return {{{U + std::conj(V), W}, {-std::conj(W) + std::conj(Z), std::conj(U) - V}}};
}

double RightMatrix::reassembly_residual() const { return max_entry_difference(N, reassembled()); }

LeftMatrix build_left_matrix(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                             double q, const FourVector& x) {
  const MatrixTerms t = evaluate_terms(bundle, x);
  const FourVector wp = K + q * t.A;
  const FourVector wm = K - q * t.A;
  const FourVector v = P - q * t.B;
  const double common = -minkowski_dot(v, v) + q * t.dB.real() - q * q * t.aa - m * m;
  const double dA = t.dA.real();

  LeftMatrix out;
  out.M[0][0] = first_diagonal(wp, v, t, m, q);
  out.M[1][1] = minkowski_dot(wm, wm) + common + kI * (q * dA - 2.0 * minkowski_dot(wm, v));
  out.M[0][1] = q * (kI * t.dA1 - 2.0 * q * minkowski_dot(to_complex(t.A), t.A1));
  out.M[1][0] = -std::conj(out.M[0][1]);

  out.F = minkowski_dot(K, K) + q * q * minkowski_dot(t.A, t.A) + common -
          kI * (q * dA + 2.0 * q * minkowski_dot(t.A, v));
  out.G = 2.0 * (q * minkowski_dot(t.A, K) + kI * minkowski_dot(v, K));
  out.H = q * (kI * t.dA1 - 2.0 * q * minkowski_dot(to_complex(t.A), t.A1));
  return out;
}

RightMatrix build_right_matrix(const FourVector& P, const FourVector& K, const PotentialBundle& bundle, double m,
                               double q, const FourVector& x) {
  const MatrixTerms t = evaluate_terms(bundle, x);
  const ComplexFourVector Q = make_complex(P, K);
  const ComplexFourVector A1c = hermitian_conjugate(t.A1);
  const FourVector w = K + q * t.A;
  const FourVector vm = P - q * t.B;
  const FourVector vp = P + q * t.B;
  const double dA = t.dA.real();
  const double dB = t.dB.real();
  const Complex a_dot_a1 = minkowski_dot(to_complex(t.A), t.A1);
  const Complex a_dot_a1c = minkowski_dot(to_complex(t.A), A1c);

  RightMatrix out;
  out.N[0][0] = first_diagonal(w, vm, t, m, q);
  const Complex e_prime = minkowski_dot(w, w) - minkowski_dot(vp, vp) - q * dB - q * q * t.aa - m * m +
                          kI * (q * dA + 2.0 * minkowski_dot(w, vp));
  out.N[1][1] = std::conj(e_prime);
  out.N[0][1] = q * (kI * t.dA1 + 2.0 * kI * minkowski_dot(t.A1, Q) - 2.0 * q * a_dot_a1);
  out.N[1][0] = q * (-kI * std::conj(t.dA1) - 2.0 * kI * minkowski_dot(A1c, Q) + 2.0 * q * a_dot_a1c);

  out.U = minkowski_dot(w, w) - minkowski_dot(P, P) - q * q * minkowski_dot(t.B, t.B) - q * q * t.aa - m * m +
          2.0 * kI * q * minkowski_dot(w, t.B);
  out.V = q * dB + 2.0 * q * minkowski_dot(P, t.B) + kI * (q * dA + 2.0 * minkowski_dot(w, P));
  out.W = out.N[0][1];
  out.Z = 2.0 * kI * q * (t.dA1 + 2.0 * minkowski_dot(t.A1, P));
  return out;
}

}  // namespace kgrhs
