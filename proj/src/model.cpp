#include "optosqz/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

namespace optosqz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require(bool ok, const char* field, const char* what) {
  if (!ok) {
    std::ostringstream os;
    os << field << ": " << what;
    throw ValidationError(os.str());
  }
}

bool finite(double v) { return std::isfinite(v); }

// Coefficient c in Delta1' = Delta1 - c |<a1>|^2, i.e. 2 g Re<b> / |<a1>|^2.
double detuning_shift_coefficient(const SystemParams& p) {
  const double half_gamma = 0.5 * p.gamma_m;
  return 2.0 * p.g * p.g * p.omega_m /
         (p.omega_m * p.omega_m + half_gamma * half_gamma);
}

// |<a1>|^2 = K / Q(x) with Q(x) = q2 x^2 + q1 x + q0 = |denominator|^2.
struct PowerCurve {
  double K = 0.0;
  double q2 = 0.0;
  double q1 = 0.0;
  double q0 = 0.0;

  explicit PowerCurve(const SystemParams& p) {
    const double A = p.J * p.J + 0.25 * p.kappa1 * p.kappa2;
    const double B = 0.5 * p.delta2 * p.kappa1;
    q2 = p.delta2 * p.delta2 + 0.25 * p.kappa2 * p.kappa2;
    q1 = -2.0 * A * p.delta2 + p.kappa2 * B;
    q0 = A * A + B * B;
    K = p.E * p.E * q2;
  }

  double Q(double x) const { return (q2 * x + q1) * x + q0; }
  double dQ(double x) const { return 2.0 * q2 * x + q1; }
  double power(double x) const { return K / Q(x); }
  double dpower(double x) const {
    const double q = Q(x);
    return -K * dQ(x) / (q * q);
  }
};

// Real roots of the monic cubic x^3 + a x^2 + b x + c.
std::vector<double> real_cubic_roots(double a, double b, double c) {
  const double shift = a / 3.0;
  const double p = b - a * a / 3.0;
  const double q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = q * q / 4.0 + p * p * p / 27.0;

  std::vector<double> roots;
  if (p == 0.0 && q == 0.0) {
    roots.push_back(-shift);
  } else if (disc > 0.0) {
    const double s = std::sqrt(disc);
    // Pick the sign that avoids cancellation, recover the partner from p.
    const double u = std::cbrt(-q / 2.0 + (q <= 0.0 ? s : -s));
    const double v = (u != 0.0) ? -p / (3.0 * u) : 0.0;
    roots.push_back(u + v - shift);
  } else {
    // Three real roots (possibly repeated): trigonometric form, p < 0.
    const double m = 2.0 * std::sqrt(-p / 3.0);
    const double arg =
        std::clamp(3.0 * q / (p * m), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k) {
      roots.push_back(m * std::cos(phi - kTwoPi * k / 3.0) - shift);
    }
  }
  return roots;
}

}  // namespace

void SystemParams::validate() const {
  require(finite(omega_m) && std::abs(omega_m - 1.0) < 1e-12, "omega_m",
          "internal units require omega_m == 1");
  require(finite(kappa1) && kappa1 > 0.0, "kappa1", "must be > 0");
  require(finite(kappa2) && kappa2 > 0.0, "kappa2", "must be > 0");
  require(finite(gamma_m) && gamma_m > 0.0, "gamma_m", "must be > 0");
  require(finite(g) && g >= 0.0, "g", "must be >= 0");
  require(finite(J) && J >= 0.0, "J", "must be >= 0");
  require(finite(delta1), "delta1", "must be finite");
  require(finite(delta2), "delta2", "must be finite");
  require(finite(E) && E >= 0.0, "E", "must be >= 0");
  require(finite(n_a2) && n_a2 >= 0.0, "n_a2", "must be >= 0");
  require(finite(m_th) && m_th >= 0.0, "m_th", "must be >= 0");
}

double SqueezedField::wrap_phase(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

SqueezedField::SqueezedField(double r, double theta) : r_(r) {
  require(std::isfinite(r) && r >= 0.0, "r", "must be >= 0");
  require(std::isfinite(theta), "theta", "must be finite");
  theta_ = wrap_phase(theta);
}

SqueezedMoments squeezed_moments(const SqueezedField& field) {
  const double sh = std::sinh(field.r());
  const double ch = std::cosh(field.r());
  return {sh * sh, std::polar(sh * ch, field.theta())};
}

BranchPolicy BranchPolicy::parse(const std::string& text) {
  if (text == "lowest") return {Kind::Lowest, 0};
  if (text == "highest") return {Kind::Highest, 0};
  constexpr std::string_view prefix = "index:";
  if (text.rfind(prefix, 0) == 0) {
    const std::string digits = text.substr(prefix.size());
    std::size_t used = 0;
    int k = -1;
    try {
      k = std::stoi(digits, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == digits.size() && !digits.empty() && k >= 0) {
      return {Kind::Index, k};
    }
  }
  throw ValidationError("branch: expected lowest|highest|index:<k>, got '" +
                        text + "'");
}

std::string BranchPolicy::to_string() const {
  switch (kind) {
    case Kind::Lowest:
      return "lowest";
    case Kind::Highest:
      return "highest";
    case Kind::Index:
      return "index:" + std::to_string(index);
  }
  return "lowest";
}

complex cavity_amplitude(const SystemParams& p, double delta1_prime) {
  const complex i(0.0, 1.0);
  const complex a2_factor = i * p.delta2 + 0.5 * p.kappa2;
  const complex den =
      p.J * p.J + (i * delta1_prime + 0.5 * p.kappa1) * a2_factor;
  return p.E * a2_factor / den;
}

double fixed_point_residual(const SystemParams& p, double delta1_prime) {
  const double c = detuning_shift_coefficient(p);
  const double power = std::norm(cavity_amplitude(p, delta1_prime));
  return std::abs(delta1_prime - (p.delta1 - c * power));
}

std::vector<double> effective_detuning_roots(const SystemParams& p) {
  p.validate();
  const double c = detuning_shift_coefficient(p);
  if (p.E == 0.0 || c == 0.0) return {p.delta1};

  const PowerCurve curve(p);
  // (x - Delta1) Q(x) + c K = 0, divided through by q2 > 0.
  const double a = (curve.q1 - p.delta1 * curve.q2) / curve.q2;
  const double b = (curve.q0 - p.delta1 * curve.q1) / curve.q2;
  const double d = (c * curve.K - p.delta1 * curve.q0) / curve.q2;

  auto residual = [&](double x) { return x - p.delta1 + c * curve.power(x); };
  auto slope = [&](double x) { return 1.0 + c * curve.dpower(x); };

  std::vector<double> roots;
  for (double x : real_cubic_roots(a, b, d)) {
    double best = x;
    double best_res = std::abs(residual(x));
    for (int it = 0; it < 50 && best_res > 0.0; ++it) {
      const double s = slope(x);
      if (s == 0.0 || !std::isfinite(s)) break;
      const double next = x - residual(x) / s;
      if (!std::isfinite(next)) break;
      const double r = std::abs(residual(next));
      x = next;
      if (r < best_res) {
        best = next;
        best_res = r;
      } else if (it > 5) {
        break;
      }
    }
    roots.push_back(best);
  }

  // Collapse near-coincident roots produced by a double root.
  std::sort(roots.begin(), roots.end(), std::greater<>());
  std::vector<double> unique;
  for (double x : roots) {
    if (unique.empty() ||
        std::abs(unique.back() - x) > 1e-9 * std::max(1.0, std::abs(x))) {
      unique.push_back(x);
    }
  }
  // |<a1>|^2 = (Delta1 - x) / c is decreasing in x: descending x is
  // ascending power.
  return unique;
}

SteadyState solve_steady_state(const SystemParams& p,
                               const BranchPolicy& policy) {
  const std::vector<double> roots = effective_detuning_roots(p);
  const int n = static_cast<int>(roots.size());

  int k = 0;
  switch (policy.kind) {
    case BranchPolicy::Kind::Lowest:
      k = 0;
      break;
    case BranchPolicy::Kind::Highest:
      k = n - 1;
      break;
    case BranchPolicy::Kind::Index:
      if (policy.index >= n) {
        throw ValidationError("branch: index " + std::to_string(policy.index) +
                              " out of range, " + std::to_string(n) +
                              " root(s) available");
      }
      k = policy.index;
      break;
  }

  SteadyState ss;
  ss.n_roots = n;
  ss.selected_branch = k;
  ss.delta1_prime = roots[k];
  if (p.E == 0.0) return ss;

  const complex i(0.0, 1.0);
  ss.a1_mean = cavity_amplitude(p, ss.delta1_prime);
  ss.a2_mean = -i * p.J * ss.a1_mean / (i * p.delta2 + 0.5 * p.kappa2);
  ss.b_mean =
      i * p.g * std::norm(ss.a1_mean) / (i * p.omega_m + 0.5 * p.gamma_m);
  ss.G = p.g * ss.a1_mean;
  return ss;
}

DriftMatrix build_drift(const SystemParams& p, const SteadyState& ss) {
  const double k1 = 0.5 * p.kappa1;
  const double k2 = 0.5 * p.kappa2;
  const double gm = 0.5 * p.gamma_m;
  const double d1 = ss.delta1_prime;
  const double d2 = p.delta2;
  const double gx = ss.G.real();
  const double gy = ss.G.imag();
  const double J = p.J;
  const double wm = p.omega_m;

  DriftMatrix out;
  // clang-format off
  out.m <<
      -k1,      d1,     0.0,  J,    -2 * gy,  0.0,
      -d1,      -k1,    -J,   0.0,  2 * gx,   0.0,
      0.0,      J,      -k2,  d2,   0.0,      0.0,
      -J,       0.0,    -d2,  -k2,  0.0,      0.0,
      0.0,      0.0,    0.0,  0.0,  -gm,      wm,
      2 * gx,   2 * gy, 0.0,  0.0,  -wm,      -gm;
  // clang-format on
  return out;
}

DiffusionMatrix build_diffusion(const SystemParams& p,
                                const SqueezedField& field) {
  const SqueezedMoments mom = squeezed_moments(field);
  const double absM = std::abs(mom.M);
  const double c = std::cos(field.theta());
  const double s = std::sin(field.theta());
  const double h1 = 0.5 * p.kappa1;

  DiffusionMatrix out;
  out.d.setZero();
  out.d(0, 0) = h1 * (2.0 * mom.N + 1.0 + 2.0 * absM * c);
  out.d(1, 1) = h1 * (2.0 * mom.N + 1.0 - 2.0 * absM * c);
  out.d(0, 1) = out.d(1, 0) = h1 * 2.0 * absM * s;
  out.d(2, 2) = out.d(3, 3) = 0.5 * p.kappa2 * (2.0 * p.n_a2 + 1.0);
  out.d(4, 4) = out.d(5, 5) = 0.5 * p.gamma_m * (2.0 * p.m_th + 1.0);
  return out;
}

UnitConversion physical_to_dimensionless(const PhysicalParams& phys) {
  const bool has_freq = phys.optical_frequency_hz != 0.0;
  const bool has_wavelength = phys.laser_wavelength_m != 0.0;
  require(has_freq != has_wavelength, "optical_frequency_hz",
          "give exactly one of optical frequency or laser wavelength");
  const bool has_kappa = phys.kappa_hz != 0.0;
  const bool has_q = phys.q_optical != 0.0;
  require(has_kappa != has_q, "kappa_hz",
          "give exactly one of kappa_hz or q_optical");

  require(!has_freq || phys.optical_frequency_hz > 0.0,
          "optical_frequency_hz", "must be > 0");
  require(!has_wavelength || phys.laser_wavelength_m > 0.0,
          "laser_wavelength_m", "must be > 0");
  require(!has_kappa || phys.kappa_hz > 0.0, "kappa_hz", "must be > 0");
  require(!has_q || phys.q_optical > 0.0, "q_optical", "must be > 0");
  require(phys.mechanical_frequency_hz > 0.0, "mechanical_frequency_hz",
          "must be > 0");
  require(phys.q_mechanical > 0.0, "q_mechanical", "must be > 0");
  require(phys.input_power_w > 0.0, "input_power_w", "must be > 0");
  require(phys.J_hz >= 0.0, "J_hz", "must be >= 0");
  require(phys.g_hz >= 0.0, "g_hz", "must be >= 0");

  UnitConversion out;
  const double nu = has_freq ? phys.optical_frequency_hz
                             : kSpeedOfLight / phys.laser_wavelength_m;
  out.omega_optical = kTwoPi * nu;
  out.omega_m = kTwoPi * phys.mechanical_frequency_hz;
  out.kappa = has_kappa ? kTwoPi * phys.kappa_hz
                        : out.omega_optical / phys.q_optical;
  out.gamma_m = out.omega_m / phys.q_mechanical;
  out.pump_rate = std::sqrt(out.kappa * phys.input_power_w /
                            (kHbar * out.omega_optical));

  SystemParams& sp = out.params;
  sp.omega_m = 1.0;
  sp.kappa1 = sp.kappa2 = out.kappa / out.omega_m;
  sp.gamma_m = out.gamma_m / out.omega_m;
  sp.g = kTwoPi * phys.g_hz / out.omega_m;
  sp.J = kTwoPi * phys.J_hz / out.omega_m;
  sp.E = out.pump_rate / out.omega_m;
  return out;
}

}  // namespace optosqz
