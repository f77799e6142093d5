#pragma once

namespace kgrhs {

// Converts physical inputs into natural units (hbar = c = 1). Positions are
// lengths and x^0 = c t, so they pass through unchanged.
struct Units {
  double hbar = 1.0;
  double c = 1.0;

  double wavenumber(double momentum) const { return momentum / hbar; }
  double energy(double e) const { return e / (hbar * c); }
  double mass(double m) const { return m * c / hbar; }
  // Scalar or vector potential; the charge is kept separate.
  double potential(double v) const { return v / (hbar * c); }

  bool natural() const { return hbar == 1.0 && c == 1.0; }
};

}  // namespace kgrhs
