#pragma once

#include <string>
#include <utility>

#include "optosqz/model.hpp"

namespace optosqz {

enum class Mode { A1 = 0, A2 = 1, B = 2 };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode mode);

// V_kl = <R_k R_l + R_l R_k>/2 over [X_a1, Y_a1, X_a2, Y_a2, X_b, Y_b].
// Vacuum variance is 1/2.
struct CovarianceMatrix {
  Matrix6 v;
};

struct LyapunovOptions {
  // Reject the solve when the reciprocal condition estimate of the
  // vectorized operator falls below this.
  double min_rcond = 1e-15;
};

// Steady-state covariance from M V + V M^T + D = 0. Requires a strictly
// stable drift matrix; throws NumericalError otherwise or when the system is
// numerically singular. The result is symmetrized.
CovarianceMatrix solve_lyapunov(const DriftMatrix& m, const DiffusionMatrix& d,
                                const LyapunovOptions& opts = {});

// ||M V + V M^T + D||_inf (max absolute entry).
double lyapunov_residual(const Matrix6& m, const Matrix6& v,
                         const Matrix6& d);

// Smallest eigenvalue of the Hermitian matrix V + i Omega / 2. Physical
// states have this >= 0.
double uncertainty_margin(const CovarianceMatrix& cm);

struct TwoModeCM {
  Matrix4 v12;

  Matrix2 v1() const { return v12.topLeftCorner<2, 2>(); }
  Matrix2 v2() const { return v12.bottomRightCorner<2, 2>(); }
  Matrix2 vc() const { return v12.topRightCorner<2, 2>(); }
};

// Rows/columns of mode_i followed by mode_j.
TwoModeCM reduce_two_mode(const CovarianceMatrix& cm, Mode mode_i,
                          Mode mode_j);

// Values at or below this are reported as exactly zero. Both measures sit on
// a branch point for product states, where rounding in the Lyapunov solve
// otherwise leaks through as ~1e-11 positives.
inline constexpr double kMeasureFloor = 1e-9;

struct NegativityResult {
  double e_n = 0.0;
  double e_n_raw = 0.0;  // -ln(2 eta_minus), may be negative
  double eta_minus = 0.0;
  double sigma = 0.0;
  double det_v12 = 0.0;
};

NegativityResult log_negativity(const TwoModeCM& tm);

enum class SteeringDirection { FirstToSecond, SecondToFirst };

// max{0, 1/2 ln(det V_i / (4 det V12))}
double steering(const TwoModeCM& tm, SteeringDirection dir);
// Same quantity before the max{0, .}.
double steering_raw(const TwoModeCM& tm, SteeringDirection dir);

std::pair<double, double> quadrature_variances(const CovarianceMatrix& cm,
                                               Mode mode);

struct PairMeasures {
  NegativityResult negativity;
  double g_1to2 = 0.0;
  double g_2to1 = 0.0;
  double g_1to2_raw = 0.0;
  double g_2to1_raw = 0.0;
};

PairMeasures analyze_pair(const CovarianceMatrix& cm, Mode mode_i,
                          Mode mode_j);

}  // namespace optosqz
