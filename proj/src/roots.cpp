#include "kgrhs/roots.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/roots.hpp>

namespace kgrhs {

namespace {

constexpr double kGridScale = 1e-3;

std::vector<double> sinh_grid(const RootScan& scan) {
  const double s_lo = std::asinh(scan.lower / kGridScale);
  const double s_hi = std::asinh(scan.upper / kGridScale);
  std::vector<double> grid(static_cast<std::size_t>(scan.samples));
  for (int k = 0; k < scan.samples; ++k) {
    const double s = s_lo + (s_hi - s_lo) * k / (scan.samples - 1);
    grid[static_cast<std::size_t>(k)] = kGridScale * std::sinh(s);
  }
  grid.front() = scan.lower;
  grid.back() = scan.upper;
  return grid;
}

}  // namespace

std::vector<double> find_real_roots(const std::function<double(double)>& f, const RootScan& scan) {
  const std::vector<double> grid = sinh_grid(scan);
  std::vector<double> values(grid.size());
  std::transform(grid.begin(), grid.end(), values.begin(), f);

  std::vector<double> roots;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (values[k] == 0.0) {
      roots.push_back(grid[k]);
      continue;
    }
    if (k + 1 == grid.size() || values[k + 1] == 0.0) continue;
    if (!std::isfinite(values[k]) || !std::isfinite(values[k + 1])) continue;
    if (std::signbit(values[k]) == std::signbit(values[k + 1])) continue;

    const auto bracket = boost::math::tools::bisect(
        f, grid[k], grid[k + 1], boost::math::tools::eps_tolerance<double>(std::numeric_limits<double>::digits));
    const double a = bracket.first;
    const double b = bracket.second;
    const double fa = std::abs(f(a));
    const double fb = std::abs(f(b));
    const double root = fa <= fb ? a : b;
    const double scale = std::max({std::abs(values[k]), std::abs(values[k + 1]), 1.0});
    if (std::min(fa, fb) <= 1e-8 * scale) roots.push_back(root);
  }
  return roots;
}

}  // namespace kgrhs
