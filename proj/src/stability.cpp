#include "optosqz/stability.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include <Eigen/Eigenvalues>

namespace optosqz {

CharPoly characteristic_polynomial(const Matrix6& m) {
  constexpr int n = 6;
  CharPoly c{};
  c[0] = 1.0;
  Matrix6 mk = Matrix6::Zero();
  const Matrix6 id = Matrix6::Identity();
  for (int k = 1; k <= n; ++k) {
    mk = m * mk + c[k - 1] * id;
    c[k] = -(m * mk).trace() / k;
  }
  return c;
}

RouthResult routh_hurwitz(std::span<const double> coeffs) {
  constexpr double kZeroPivot = 1e-30;
  const int degree = static_cast<int>(coeffs.size()) - 1;
  RouthResult out;
  if (degree < 1) {
    out.stable = true;
    return out;
  }
  if (coeffs[0] == 0.0) {
    throw ValidationError("routh_hurwitz: leading coefficient is zero");
  }

  const double lead_sign = coeffs[0] > 0.0 ? 1.0 : -1.0;
  const int width = degree / 2 + 1;
  std::vector<double> upper(width, 0.0);
  std::vector<double> lower(width, 0.0);
  for (int i = 0; i <= degree; ++i) {
    (i % 2 == 0 ? upper : lower)[i / 2] = lead_sign * coeffs[i];
  }

  std::vector<double> first_column{upper[0]};
  bool strict = true;
  for (int row = 1; row <= degree; ++row) {
    // Power of s carried by the row `lower` currently represents.
    const int power = degree - row;
    const bool all_zero = std::all_of(lower.begin(), lower.end(),
                                      [](double v) { return v == 0.0; });
    if (all_zero) {
      // Auxiliary polynomial from `upper` (power + 1), replace by derivative.
      strict = false;
      for (int j = 0; j < width; ++j) {
        lower[j] = upper[j] * static_cast<double>(power + 1 - 2 * j);
      }
    }
    if (lower[0] == 0.0) {
      strict = false;
      out.perturbed = true;
      lower[0] = kZeroPivot;
    }
    first_column.push_back(lower[0]);

    std::vector<double> next(width, 0.0);
    for (int j = 0; j + 1 < width; ++j) {
      next[j] = (lower[0] * upper[j + 1] - upper[0] * lower[j + 1]) / lower[0];
    }
    upper = std::move(lower);
    lower = std::move(next);
  }

  for (std::size_t i = 1; i < first_column.size(); ++i) {
    if ((first_column[i] > 0.0) != (first_column[i - 1] > 0.0)) {
      ++out.sign_changes;
    }
  }
  out.stable = strict && out.sign_changes == 0 &&
               std::all_of(first_column.begin(), first_column.end(),
                           [](double v) { return v > 0.0; });
  return out;
}

double max_real_eigenvalue(const Matrix6& m) {
  if (!m.allFinite()) {
    std::ostringstream os;
    os << "max_real_eigenvalue: non-finite matrix\n" << m;
    throw NumericalError(os.str());
  }
  Eigen::EigenSolver<Matrix6> solver(m, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    std::ostringstream os;
    os << "max_real_eigenvalue: QR iteration did not converge\n" << m;
    throw NumericalError(os.str());
  }
  return solver.eigenvalues().real().maxCoeff();
}

StabilityReport is_stable(const Matrix6& m) {
  StabilityReport rep;
  rep.max_re_eigenvalue = max_real_eigenvalue(m);
  rep.stable = rep.max_re_eigenvalue < 0.0;
  rep.char_poly = characteristic_polynomial(m);
  const RouthResult routh = routh_hurwitz(rep.char_poly);
  rep.routh_stable = routh.stable;
  rep.routh_sign_changes = routh.sign_changes;
  return rep;
}

}  // namespace optosqz
