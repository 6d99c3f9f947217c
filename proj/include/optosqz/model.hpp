#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "optosqz/errors.hpp"

namespace optosqz {

using Matrix6 = Eigen::Matrix<double, 6, 6>;
using Matrix4 = Eigen::Matrix<double, 4, 4>;
using Matrix2 = Eigen::Matrix<double, 2, 2>;
using complex = std::complex<double>;

// Model parameters in units of the mechanical frequency (omega_m == 1).
// Defaults are the baseline operating point used throughout the sweeps.
struct SystemParams {
  double omega_m = 1.0;
  double kappa1 = 0.2;
  double kappa2 = 0.2;
  double gamma_m = 1e-5;
  double g = 5e-5;
  double J = 0.5;
  double delta1 = 1.8;
  double delta2 = 1.8;
  double E = 3.0e5;
  double n_a2 = 0.0;  // thermal occupation of the a2 input noise
  double m_th = 0.0;  // thermal occupation of the mechanical bath

  // Throws ValidationError naming the first offending field.
  void validate() const;
};

// Weak squeezed vacuum driving mode a1. theta is kept in [0, 2*pi).
class SqueezedField {
 public:
  SqueezedField() = default;
  SqueezedField(double r, double theta);

  double r() const { return r_; }
  double theta() const { return theta_; }

  static double wrap_phase(double theta);

 private:
  double r_ = 0.0;
  double theta_ = 0.0;
};

struct SqueezedMoments {
  double N = 0.0;   // <a_in^dag a_in> = sinh^2 r
  complex M = 0.0;  // <a_in a_in> = e^{i theta} sinh r cosh r
};

SqueezedMoments squeezed_moments(const SqueezedField& field);

// Which real root of the mean-field cubic to use when the system is
// multistable. Roots are ordered by ascending intracavity power |<a1>|^2,
// so index 0 is the low-power branch.
struct BranchPolicy {
  enum class Kind { Lowest, Highest, Index };
  Kind kind = Kind::Lowest;
  int index = 0;

  // Accepts "lowest", "highest" or "index:<k>".
  static BranchPolicy parse(const std::string& text);
  std::string to_string() const;
};

struct SteadyState {
  complex a1_mean = 0.0;
  complex a2_mean = 0.0;
  complex b_mean = 0.0;
  double delta1_prime = 0.0;
  complex G = 0.0;  // g * <a1>
  int n_roots = 1;
  int selected_branch = 0;
};

// All real solutions x = Delta1' of x = Delta1 - 2 g Re<b>(x), ascending in
// |<a1>|^2 (equivalently descending in x). Each root is Newton-polished on
// the fixed-point residual.
std::vector<double> effective_detuning_roots(const SystemParams& params);

// Closed-form intracavity amplitude for a given effective detuning.
complex cavity_amplitude(const SystemParams& params, double delta1_prime);

SteadyState solve_steady_state(const SystemParams& params,
                               const BranchPolicy& policy = {});

// |x - (Delta1 - 2 g Re<b>(x))|
double fixed_point_residual(const SystemParams& params, double delta1_prime);

// Linearized fluctuation dynamics over [X_a1, Y_a1, X_a2, Y_a2, X_b, Y_b].
struct DriftMatrix {
  Matrix6 m;
};

struct DiffusionMatrix {
  Matrix6 d;
};

DriftMatrix build_drift(const SystemParams& params, const SteadyState& ss);
DiffusionMatrix build_diffusion(const SystemParams& params,
                                const SqueezedField& field);

// Laboratory-unit description of the device. Frequencies in Hz (ordinary,
// not angular), power in W. Exactly one of laser_wavelength_m and
// optical_frequency_hz must be set (> 0); likewise kappa_hz or q_optical.
struct PhysicalParams {
  double optical_frequency_hz = 0.0;
  double laser_wavelength_m = 0.0;
  double kappa_hz = 0.0;
  double q_optical = 0.0;
  double mechanical_frequency_hz = 0.0;
  double q_mechanical = 0.0;
  double input_power_w = 0.0;
  double J_hz = 0.0;
  double g_hz = 0.0;
};

struct UnitConversion {
  SystemParams params;
  // Angular-frequency intermediates in rad/s.
  double omega_optical = 0.0;
  double omega_m = 0.0;
  double kappa = 0.0;
  double gamma_m = 0.0;
  double pump_rate = 0.0;  // sqrt(kappa P / (hbar omega)), in s^-1
};

inline constexpr double kHbar = 1.054571817e-34;       // J s
inline constexpr double kSpeedOfLight = 299792458.0;   // m/s

UnitConversion physical_to_dimensionless(const PhysicalParams& phys);

}  // namespace optosqz
