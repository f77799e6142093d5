#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

#include "kgrhs/errors.hpp"
#include "kgrhs/planewave.hpp"

namespace kgrhs::testing {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : g_(seed) {}

  double uniform(double lo = -1.0, double hi = 1.0) { return std::uniform_real_distribution<double>(lo, hi)(g_); }
  Complex complex(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale)}; }
  bool coin() { return uniform(0.0, 1.0) < 0.5; }

  FourVector vec4(double scale = 1.0) { return {uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale)}; }
  ComplexFourVector cvec4(double scale = 1.0) { return {complex(scale), complex(scale), complex(scale), complex(scale)}; }
  FourVector point() { return vec4(1.0); }

  Quaternion quaternion(double scale = 1.0) {
    return Quaternion::from_components(uniform(-scale, scale), uniform(-scale, scale), uniform(-scale, scale),
                                       uniform(-scale, scale));
  }

  std::mt19937_64& engine() { return g_; }

 private:
  std::mt19937_64 g_;
};

// Plain four-real Hamilton product, written out component by component.
struct Hamilton {
  double w, x, y, z;
};

inline Hamilton hamilton(const Hamilton& a, const Hamilton& b) {
  return {a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z, a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
          a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x, a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
}

inline Hamilton to_hamilton(const Quaternion& q) { return {q.z0().real(), q.z0().imag(), q.z1().real(), q.z1().imag()}; }

inline double distance(const Hamilton& a, const Hamilton& b) {
  return std::sqrt((a.w - b.w) * (a.w - b.w) + (a.x - b.x) * (a.x - b.x) + (a.y - b.y) * (a.y - b.y) +
                   (a.z - b.z) * (a.z - b.z));
}

inline double mdot(const FourVector& a, const FourVector& b) {
  return a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3];
}

// Removes the Minkowski component of v along d.
inline FourVector project_out(const FourVector& v, const FourVector& d) {
  const double dd = mdot(d, d);
  if (std::abs(dd) < 1e-3) throw std::runtime_error("direction too close to the light cone");
  const double c = mdot(v, d) / dd;
  return {v[0] - c * d[0], v[1] - c * d[1], v[2] - c * d[2], v[3] - c * d[3]};
}

inline double exponent_size(const PlaneWaveSolution& s) {
  double n = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) n += std::norm(s.Q[mu]);
  return std::sqrt(n);
}

// Draws valid solutions of the given case until one solves with a moderate exponent.
inline PlaneWaveSolution random_solution(CaseTag tag, Rng& rng, int max_tries = 400) {
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    try {
      const double m = rng.uniform(0.5, 1.5);
      const double q = rng.uniform(0.5, 1.5) * (rng.coin() ? 1.0 : -1.0);
      const EnergyBranch branch = rng.coin() ? EnergyBranch::Positive : EnergyBranch::Negative;
      const FourVector A = rng.vec4(1.0);
      PlaneWaveSolution s;
      switch (tag) {
        case CaseTag::Usual:
          s = solve_usual({rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)}, m, branch, rng.complex());
          break;
        case CaseTag::Generalized:
          s = solve_generalized(A, project_out(rng.vec4(0.6), A), m, q, branch, rng.complex());
          break;
        case CaseTag::NonHermitian:
          s = solve_nonhermitian(A, project_out(rng.vec4(0.6), A), m, q, branch, rng.complex());
          break;
        case CaseTag::QuatLeftFirst:
          s = solve_quat_left_first(A, project_out(rng.vec4(0.5), A), rng.cvec4(0.4), m, q, rng.complex(),
                                    rng.complex(), branch);
          break;
        case CaseTag::QuatRightFirst: {
          // A, B and the spatial wavenumber along mutually orthogonal spatial directions.
          const double th = rng.uniform(0, 3.14159), ph = rng.uniform(0, 6.28318), ps = rng.uniform(0, 6.28318);
          const std::array<double, 3> e1{std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)};
          std::array<double, 3> e2{-std::sin(ph), std::cos(ph), 0.0};
          const std::array<double, 3> e3{e1[1] * e2[2] - e1[2] * e2[1], e1[2] * e2[0] - e1[0] * e2[2],
                                         e1[0] * e2[1] - e1[1] * e2[0]};
          std::array<double, 3> u{}, v{};
          for (std::size_t i = 0; i < 3; ++i) {
            u[i] = std::cos(ps) * e2[i] + std::sin(ps) * e3[i];
            v[i] = -std::sin(ps) * e2[i] + std::cos(ps) * e3[i];
          }
          const double a = rng.uniform(0.2, 1.0), b = rng.uniform(0.1, 0.6), k = rng.uniform(-1.5, 1.5);
          const FourVector Av{0.0, a * e1[0], a * e1[1], a * e1[2]};
          const FourVector Bv{0.0, b * u[0], b * u[1], b * u[2]};
          const double c = rng.uniform(0.1, 0.5), t = rng.uniform(-0.3, 0.3);
          const ComplexFourVector amp{Complex(t, 0.0), Complex(c * u[0], 0.0), Complex(c * u[1], 0.0),
                                      Complex(c * u[2], 0.0)};
          s = solve_quat_right_first(Av, Bv, amp, {k * v[0], k * v[1], k * v[2]}, m, q, rng.complex(),
                                     rng.complex(), branch);
          break;
        }
        case CaseTag::QuatLeftSecond: {
          const FourVector B = project_out(rng.vec4(1.0), A);
          const SecondSolutionMode mode = rng.coin() ? SecondSolutionMode::Determinant : SecondSolutionMode::Simplest;
          s = solve_quat_left_second(A, B, rng.cvec4(0.3), m, q, branch, mode);
          break;
        }
        case CaseTag::QuatRightSecond: {
          const FourVector B = project_out(rng.vec4(1.0), A);
          ComplexFourVector a1 = rng.cvec4(0.5);
          // Remove the B component of the real and imaginary parts separately.
          const FourVector re = project_out(real_part(a1), B), im = project_out(imag_part(a1), B);
          a1 = make_complex(re, im);
          const SecondSolutionMode mode = rng.coin() ? SecondSolutionMode::Determinant : SecondSolutionMode::Simplest;
          s = solve_quat_right_second(A, B, a1, m, q, branch, mode);
          break;
        }
      }
      if (exponent_size(s) > 4.0 || s.trivial()) continue;
      return s;
    } catch (const kgrhs::Error&) {
    } catch (const std::runtime_error&) {
    }
  }
  throw std::runtime_error("no solution drawn for " + std::string(to_string(tag)));
}

inline constexpr std::array<CaseTag, 7> kAllCases{CaseTag::Usual,          CaseTag::Generalized,   CaseTag::NonHermitian,
                                                  CaseTag::QuatLeftFirst,  CaseTag::QuatLeftSecond, CaseTag::QuatRightFirst,
                                                  CaseTag::QuatRightSecond};

}  // namespace kgrhs::testing
