#include "kgrhs/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "kgrhs/observables.hpp"

namespace kgrhs {

namespace {

constexpr double kOverflow = 1e150;

FourVector shifted(const FourVector& x, std::size_t mu, double d) {
  FourVector y = x;
  y[mu] += d;
  return y;
}

void guard(const Quaternion& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || n > kOverflow)
    throw StencilOverflow("wave function sample exceeds floating-point range; shrink the box or rescale");
}

template <typename Sample>
auto first_derivative(const Sample& f, const FourVector& x, std::size_t mu, const StencilSpec& s) {
  const double h = s.h;
  if (s.order == 4) {
    return (f(shifted(x, mu, -2 * h)) * (1.0 / 12.0) + f(shifted(x, mu, h)) * (8.0 / 12.0) -
            f(shifted(x, mu, -h)) * (8.0 / 12.0) - f(shifted(x, mu, 2 * h)) * (1.0 / 12.0)) *
           (1.0 / h);
  }
  return (f(shifted(x, mu, h)) - f(shifted(x, mu, -h))) * (0.5 / h);
}

template <typename Sample>
auto second_derivative(const Sample& f, const FourVector& x, std::size_t mu, const StencilSpec& s) {
  const double h = s.h;
  const auto c = f(x);
  if (s.order == 4) {
    return ((f(shifted(x, mu, h)) + f(shifted(x, mu, -h))) * (16.0 / 12.0) - c * (30.0 / 12.0) -
            (f(shifted(x, mu, 2 * h)) + f(shifted(x, mu, -2 * h))) * (1.0 / 12.0)) *
           (1.0 / (h * h));
  }
  return (f(shifted(x, mu, h)) + f(shifted(x, mu, -h)) - c * 2.0) * (1.0 / (h * h));
}

Quaternion side_i(OperatorSide side, const Quaternion& v) {
  return side == OperatorSide::Left ? Quaternion::i() * v : v * Quaternion::i();
}

}  // namespace

void StencilSpec::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("stencil step must be positive");
  if (order != 2 && order != 4) throw PreconditionError("stencil order must be 2 or 4");
}

double kge_residual_fd(const PlaneWaveSolution& s, const FourVector& x, const StencilSpec& stencil) {
  stencil.validate();
  const OperatorSide side = operator_side(s.case_tag);
  const double q = s.charge;
  const auto phi = [&](const FourVector& y) {
    const Quaternion v = s.evaluate(y);
    guard(v);
    return v;
  };
  const Quaternion centre = phi(x);
  const QuaternionFourVector a = s.potential(x);

  Quaternion box_term;
  Quaternion div_term;
  Quaternion drift_term;
  double scale = s.mass * s.mass * centre.norm();
  for (std::size_t mu = 0; mu < 4; ++mu) {
    if (!stencil.axes[mu]) continue;
    const Quaternion d2 = second_derivative(phi, x, mu, stencil);
    box_term += metric(mu) * d2;
    scale = std::max(scale, d2.norm());

    const auto product = [&](const FourVector& y) { return s.potential(y)[mu] * phi(y); };
    const Quaternion div = side_i(side, first_derivative(product, x, mu, stencil));
    div_term += div;
    scale = std::max(scale, std::abs(q) * div.norm());

    const Quaternion drift = a[mu] * side_i(side, first_derivative(phi, x, mu, stencil));
    drift_term += drift;
    scale = std::max(scale, std::abs(q) * drift.norm());
  }
  const Quaternion a_sq = minkowski_dot(a, a);
  const Quaternion quad = (q * q) * (a_sq * centre);
  scale = std::max(scale, quad.norm());

  const Quaternion residual = -box_term - q * div_term - q * drift_term + quad - (s.mass * s.mass) * centre;
  return residual.norm() / std::max(scale, std::numeric_limits<double>::min());
}

CurrentEstimate current_fd_detail(const PlaneWaveSolution& s, const FourVector& x, const StencilSpec& stencil) {
  stencil.validate();
  const OperatorSide side = operator_side(s.case_tag);
  const auto phi = [&](const FourVector& y) {
    const Quaternion v = s.evaluate(y);
    guard(v);
    return v;
  };
  const Quaternion centre = phi(x);
  const QuaternionFourVector a = s.potential(x);
  CurrentEstimate out;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    Quaternion momentum;
    if (stencil.axes[mu]) momentum = side_i(side, metric(mu) * first_derivative(phi, x, mu, stencil));
    const Quaternion d = momentum - s.charge * (a[mu] * centre);
    const Quaternion forward = centre.conj() * d;
    const Quaternion bracket = 0.5 * (forward + forward.conj());
    out.J[mu] = bracket.real();
    out.imag_residue = std::max(out.imag_residue, bracket.vector_norm());
  }
  return out;
}

FourVector current_fd(const PlaneWaveSolution& s, const FourVector& x, const StencilSpec& stencil) {
  return current_fd_detail(s, x, stencil).J;
}

double continuity_residual_fd(const PlaneWaveSolution& s, const FourVector& x, const StencilSpec& stencil,
                              bool include_gamma) {
  stencil.validate();
  const FourVector J = current_fd(s, x, stencil);
  const FourVector g = gamma(s, x);
  const Quaternion centre = s.evaluate(x);

  double total = 0.0;
  double scale = 0.0;
  double rate = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) {
    if (!stencil.axes[mu]) continue;
    const auto component = [&](const FourVector& y) { return current_fd(s, y, stencil)[mu]; };
    const double div = first_derivative(component, x, mu, stencil);
    total += div;
    scale = std::max(scale, std::abs(div));
    if (include_gamma) {
      const double damping = metric(mu) * g[mu] * J[mu];
      total += damping;
      scale = std::max(scale, std::abs(damping));
    }
    const auto sample = [&](const FourVector& y) { return s.evaluate(y); };
    if (centre.norm() > 0.0) rate = std::max(rate, first_derivative(sample, x, mu, stencil).norm() / centre.norm());
  }
  double j_norm = 0.0;
  for (std::size_t mu = 0; mu < 4; ++mu) j_norm = std::max(j_norm, std::abs(J[mu]));
  scale = std::max({scale, j_norm * rate, std::numeric_limits<double>::min()});
  return std::abs(total) / scale;
}

ConvergenceStudy convergence_study(const PlaneWaveSolution& s, ResidualKind kind, const std::vector<double>& h_list,
                                   int order, const FourVector& x) {
  if (h_list.size() < 3) throw PreconditionError("convergence study needs at least three step sizes");
  for (double h : h_list)
    if (!(h > 0.0)) throw PreconditionError("step sizes must be positive");
  const double ratio = h_list[1] / h_list[0];
  for (std::size_t k = 1; k < h_list.size(); ++k)
    if (std::abs(h_list[k] / h_list[k - 1] - ratio) > 1e-6 * std::abs(ratio) || ratio == 1.0)
      throw PreconditionError("step sizes must be geometrically spaced");

  ConvergenceStudy out;
  out.h = h_list;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double h : h_list) {
    StencilSpec st;
    st.h = h;
    st.order = order;
    const double r = kind == ResidualKind::KleinGordon ? kge_residual_fd(s, x, st) : continuity_residual_fd(s, x, st);
    out.residuals.push_back(r);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() / (h * h);
    if (r > floor) {
      lx.push_back(std::log(h));
      ly.push_back(std::log(r));
    }
  }
  if (lx.size() < 2) throw NoisePlateau("residuals sit at the rounding floor for every step size");

  const double n = static_cast<double>(lx.size());
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < lx.size(); ++k) {
    sx += lx[k];
    sy += ly[k];
    sxx += lx[k] * lx[k];
    sxy += lx[k] * ly[k];
  }
  out.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  return out;
}

}  // namespace kgrhs
