#pragma once

#include <functional>
#include <vector>

namespace kgrhs {

struct RootScan {
  double lower = -1e6;
  double upper = 1e6;
  int samples = 10000;
};

// Real roots of f located by a sign-change scan on a sinh-spaced grid (dense near
// zero) and refined by bisection. Sign changes across poles are discarded.
std::vector<double> find_real_roots(const std::function<double(double)>& f, const RootScan& scan = {});

}  // namespace kgrhs
