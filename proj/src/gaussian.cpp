#include "optosqz/gaussian.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "optosqz/stability.hpp"

namespace optosqz {

namespace {

using Matrix36 = Eigen::Matrix<double, 36, 36>;
using Vector36 = Eigen::Matrix<double, 36, 1>;

Matrix2 symplectic_form() {
  Matrix2 o;
  o << 0.0, 1.0, -1.0, 0.0;
  return o;
}

// Column-major vec: vec(M V + V M^T) = (I (x) M + M (x) I) vec(V).
Matrix36 lyapunov_operator(const Matrix6& m) {
  Matrix36 op = Matrix36::Zero();
  for (int j = 0; j < 6; ++j) {
    for (int i = 0; i < 6; ++i) {
      const int row = i + 6 * j;
      for (int k = 0; k < 6; ++k) {
        op(row, k + 6 * j) += m(i, k);
        op(row, i + 6 * k) += m(j, k);
      }
    }
  }
  return op;
}

int block_offset(Mode mode) { return 2 * static_cast<int>(mode); }

}  // namespace

Mode parse_mode(const std::string& name) {
  if (name == "a1") return Mode::A1;
  if (name == "a2") return Mode::A2;
  if (name == "b") return Mode::B;
  throw ValidationError("mode: expected a1|a2|b, got '" + name + "'");
}

std::string mode_name(Mode mode) {
  switch (mode) {
    case Mode::A1:
      return "a1";
    case Mode::A2:
      return "a2";
    case Mode::B:
      return "b";
  }
  return "?";
}

double lyapunov_residual(const Matrix6& m, const Matrix6& v,
                         const Matrix6& d) {
  return (m * v + v * m.transpose() + d).cwiseAbs().maxCoeff();
}

CovarianceMatrix solve_lyapunov(const DriftMatrix& m, const DiffusionMatrix& d,
                                const LyapunovOptions& opts) {
  const double max_re = max_real_eigenvalue(m.m);
  if (!(max_re < 0.0)) {
    std::ostringstream os;
    os << "solve_lyapunov: drift matrix is not strictly stable (max Re "
          "lambda = "
       << max_re << ")";
    throw NumericalError(os.str());
  }

  const Matrix36 op = lyapunov_operator(m.m);
  const Eigen::PartialPivLU<Matrix36> lu(op);
  const double rcond = lu.rcond();
  if (!(rcond >= opts.min_rcond)) {
    std::ostringstream os;
    os << "solve_lyapunov: vectorized system is near-singular (condition "
          "estimate "
       << (rcond > 0.0 ? 1.0 / rcond : INFINITY) << ")";
    throw NumericalError(os.str());
  }

  const Vector36 rhs = -Eigen::Map<const Vector36>(d.d.data());
  Vector36 x = lu.solve(rhs);
  // One step of iterative refinement.
  const Vector36 r = rhs - op * x;
  x += lu.solve(r);

  CovarianceMatrix out;
  out.v = Eigen::Map<const Matrix6>(x.data());
  out.v = 0.5 * (out.v + out.v.transpose()).eval();
  return out;
}

double uncertainty_margin(const CovarianceMatrix& cm) {
  using Matrix6c = Eigen::Matrix<std::complex<double>, 6, 6>;
  Matrix6 omega = Matrix6::Zero();
  for (int k = 0; k < 3; ++k) {
    omega.block<2, 2>(2 * k, 2 * k) = symplectic_form();
  }
  const Matrix6c h = cm.v.cast<std::complex<double>>() +
                     std::complex<double>(0.0, 0.5) *
                         omega.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Matrix6c> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

TwoModeCM reduce_two_mode(const CovarianceMatrix& cm, Mode mode_i,
                          Mode mode_j) {
  if (mode_i == mode_j) {
    throw ValidationError("reduce_two_mode: modes must differ");
  }
  const int idx[4] = {block_offset(mode_i), block_offset(mode_i) + 1,
                      block_offset(mode_j), block_offset(mode_j) + 1};
  TwoModeCM tm;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) tm.v12(r, c) = cm.v(idx[r], idx[c]);
  }
  return tm;
}

NegativityResult log_negativity(const TwoModeCM& tm) {
  const Matrix2 v1 = tm.v1();
  const Matrix2 v2 = tm.v2();
  const Matrix2 vc = tm.vc();
  const double a = v1.determinant();
  const double b = v2.determinant();
  const double c = vc.determinant();

  NegativityResult out;
  out.det_v12 = tm.v12.determinant();
  out.sigma = a + b - 2.0 * c;
  if (!(out.det_v12 > 0.0)) {
    std::ostringstream os;
    os << "log_negativity: det V12 = " << out.det_v12 << " is not positive";
    throw UnphysicalStateError(os.str());
  }

  // Sigma^2 - 4 det V12 expanded in block invariants. Algebraically equal
  // to the direct form but exact for product states, where the direct form
  // cancels to rounding noise under a square root.
  const Matrix2 o = symplectic_form();
  const double t = (v1 * o * vc * o * v2 * o * vc.transpose() * o).trace();
  double radicand = (a - b) * (a - b) + 4.0 * (t - c * (a + b));
  if (radicand < 0.0) {
    if (radicand < -1e-12) {
      std::ostringstream os;
      os << "log_negativity: Sigma^2 - 4 det V12 = " << radicand
         << " is negative";
      throw UnphysicalStateError(os.str());
    }
    radicand = 0.0;
  }

  // eta_minus^2 eta_plus^2 = det V12; the conjugate form avoids cancelling
  // Sigma against the root for strongly entangled states.
  const double eta_plus_sq = 0.5 * (out.sigma + std::sqrt(radicand));
  const double eta_sq = out.det_v12 / eta_plus_sq;
  if (!(eta_sq > 0.0)) {
    throw UnphysicalStateError(
        "log_negativity: symplectic eigenvalue is not positive");
  }
  out.eta_minus = std::sqrt(eta_sq);
  out.e_n_raw = -std::log(2.0 * out.eta_minus);
  out.e_n = out.e_n_raw > kMeasureFloor ? out.e_n_raw : 0.0;
  return out;
}

double steering_raw(const TwoModeCM& tm, SteeringDirection dir) {
  const double det12 = tm.v12.determinant();
  if (!(det12 > 0.0)) {
    std::ostringstream os;
    os << "steering: det V12 = " << det12 << " is not positive";
    throw UnphysicalStateError(os.str());
  }
  const double det_i = dir == SteeringDirection::FirstToSecond
                           ? tm.v1().determinant()
                           : tm.v2().determinant();
  return 0.5 * std::log(det_i / (4.0 * det12));
}

double steering(const TwoModeCM& tm, SteeringDirection dir) {
  const double raw = steering_raw(tm, dir);
  return raw > kMeasureFloor ? raw : 0.0;
}

std::pair<double, double> quadrature_variances(const CovarianceMatrix& cm,
                                               Mode mode) {
  const int k = block_offset(mode);
  return {cm.v(k, k), cm.v(k + 1, k + 1)};
}

PairMeasures analyze_pair(const CovarianceMatrix& cm, Mode mode_i,
                          Mode mode_j) {
  const TwoModeCM tm = reduce_two_mode(cm, mode_i, mode_j);
  PairMeasures out;
  out.negativity = log_negativity(tm);
  out.g_1to2_raw = steering_raw(tm, SteeringDirection::FirstToSecond);
  out.g_2to1_raw = steering_raw(tm, SteeringDirection::SecondToFirst);
  out.g_1to2 = out.g_1to2_raw > kMeasureFloor ? out.g_1to2_raw : 0.0;
  out.g_2to1 = out.g_2to1_raw > kMeasureFloor ? out.g_2to1_raw : 0.0;
  return out;
}

}  // namespace optosqz
