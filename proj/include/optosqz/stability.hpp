#pragma once

#include <array>
#include <span>

#include "optosqz/model.hpp"

namespace optosqz {

// Monic characteristic polynomial det(lambda I - m), highest power first:
// coeffs[0] = 1, coeffs[1] = -trace(m), ..., coeffs[6] = det(m).
using CharPoly = std::array<double, 7>;

struct StabilityReport {
  bool stable = false;
  double max_re_eigenvalue = 0.0;
  bool routh_stable = false;
  int routh_sign_changes = 0;
  CharPoly char_poly{};
};

// Faddeev-LeVerrier recurrence.
CharPoly characteristic_polynomial(const Matrix6& m);

struct RouthResult {
  bool stable = false;   // all first-column entries strictly positive
  int sign_changes = 0;  // number of right-half-plane roots
  bool perturbed = false;  // a zero pivot was replaced by epsilon
};

// Routh table for a polynomial given highest power first. The leading
// coefficient must be nonzero. A zero pivot is replaced by +1e-30; a row of
// zeros is replaced by the derivative of the auxiliary polynomial. Either
// event marks the polynomial as not strictly Hurwitz.
RouthResult routh_hurwitz(std::span<const double> coeffs);

// Largest real part of the spectrum (real Schur / shifted QR).
double max_real_eigenvalue(const Matrix6& m);

StabilityReport is_stable(const Matrix6& m);
inline StabilityReport is_stable(const DriftMatrix& m) { return is_stable(m.m); }

}  // namespace optosqz
