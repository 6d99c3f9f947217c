// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "optosqz/gaussian.hpp"
#include "optosqz/report.hpp"
#include "optosqz/stability.hpp"
#include "optosqz/sweep.hpp"
#include "oracles.hpp"

using namespace optosqz;

namespace {

constexpr double kPi = std::numbers::pi;

// Tolerances.
constexpr double kP1Target = 0.3544;
constexpr double kP1Tol = 0.01;
constexpr double kP1MaxSeconds = 1.0;
constexpr double kP2Target = 0.3207;
constexpr double kP2Tol = 0.01;
constexpr double kP2EMin = 3.0e5;
constexpr double kP2EMax = 3.4e5;
constexpr int kP2Samples = 401;
constexpr int kP3Stride = 5;  // 101 -> 21 per axis
constexpr double kP7ElementTol = 1e-8;
constexpr double kP7ResidualTol = 1e-10;
constexpr int kP7Sets = 5;
constexpr double kP7MinMargin = 1e-3;
constexpr double kP8Tol = 1e-12;
constexpr int kP8Samples = 100;
constexpr int kP9Random = 1000;
constexpr double kP9Band = 1e-9;
constexpr double kP11MaxSeconds = 120.0;

int failures = 0;

void report(const char* id, bool ok, const std::string& detail) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", id, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void info(const std::string& text) {
  std::printf("     info: %s\n", text.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int hardware_jobs() {
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double en_a1_b(const SystemParams& p, const SqueezedField& f) {
  const PointRecord rec = evaluate_point(p, f, {Measure::EnA1B});
  return rec.stable ? rec.values[0] : NAN;
}

std::string csv_of(const SweepResult& res) {
  std::ostringstream os;
  write_csv(res, os);
  return os.str();
}

std::size_t column(const SweepResult& res, Measure m) {
  return static_cast<std::size_t>(
      std::find(res.columns.begin(), res.columns.end(), m) -
      res.columns.begin());
}

void p1() {
  const auto t0 = std::chrono::steady_clock::now();
  const double en = en_a1_b(SystemParams{}, SqueezedField());
  const double dt = seconds_since(t0);
  report("P1",
         std::abs(en - kP1Target) <= kP1Tol && dt < kP1MaxSeconds,
         fmt("E_N(a1,b) = %.6f (target %.4f +/- %.2f), %.3f s", en, kP1Target,
             kP1Tol, dt));
}

void p2() {
  SystemParams p;
  double best_gap = INFINITY, best_e = NAN, best_en = NAN;
  double lo = INFINITY, hi = -INFINITY;
  for (int k = 0; k < kP2Samples; ++k) {
    p.E = kP2EMin + (kP2EMax - kP2EMin) * k / (kP2Samples - 1);
    const double en = en_a1_b(p, SqueezedField());
    if (std::isnan(en)) continue;
    lo = std::min(lo, en);
    hi = std::max(hi, en);
    if (std::abs(en - kP2Target) < best_gap) {
      best_gap = std::abs(en - kP2Target);
      best_e = p.E;
      best_en = en;
    }
  }
  report("P2", best_gap <= kP2Tol,
         fmt("r=0: E_N over E in [%.1e, %.1e] spans [%.4f, %.4f]; closest "
             "%.4f at E=%.4g (target %.4f +/- %.2f)",
             kP2EMin, kP2EMax, lo, hi, best_en, best_e, kP2Target, kP2Tol));
  p.E = 3.2e5;
  info(fmt("r=0.1, theta=0, E=3.2e5 gives E_N(a1,b) = %.4f",
           en_a1_b(p, SqueezedField(0.1, 0.0))));
}

void p3() {
  SweepSpec s = preset("fig2a");
  for (Axis& a : s.axes) a.count = (a.count - 1) / kP3Stride + 1;
  const SweepResult res = run_sweep(s, hardware_jobs());
  const std::size_t ga = column(res, Measure::GA1ToB);
  const std::size_t gb = column(res, Measure::GBToA1);
  std::size_t stable = 0, a_pos = 0, b_pos = 0;
  double max_gb = 0.0;
  for (const PointRecord& row : res.rows) {
    if (!row.stable) continue;
    ++stable;
    if (!(row.values[ga] == 0.0)) ++a_pos;
    if (row.values[gb] > 0.0) ++b_pos;
    max_gb = std::max(max_gb, row.values[gb]);
  }
  report("P3", stable > 0 && a_pos == 0 && b_pos > 0,
         fmt("%zu/%zu stable points; G(a1->b) nonzero at %zu; G(b->a1) > 0 "
             "at %zu (max %.4f)",
             stable, res.rows.size(), a_pos, b_pos, max_gb));
}

// E-axis scan of EN_a1_b for each r in the fig3a list.
struct Fig3aCurves {
  std::vector<double> e;
  std::vector<std::vector<double>> en;  // [r index][E index], NaN if unstable
};

Fig3aCurves fig3a_curves() {
  const SweepSpec s = preset("fig3a");
  const SweepResult res = run_sweep(s, hardware_jobs());
  Fig3aCurves out;
  out.e = s.axes[1].points();
  const std::size_t ne = out.e.size();
  const std::size_t col = column(res, Measure::EnA1B);
  out.en.assign(s.axes[0].values.size(), std::vector<double>(ne, NAN));
  for (std::size_t i = 0; i < out.en.size(); ++i) {
    for (std::size_t j = 0; j < ne; ++j) {
      const PointRecord& row = res.rows[i * ne + j];
      if (row.stable) out.en[i][j] = row.values[col];
    }
  }
  return out;
}

std::size_t argmax(const std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (!std::isnan(v[k]) && (std::isnan(v[best]) || v[k] > v[best])) best = k;
  }
  return best;
}

void p4(const Fig3aCurves& c) {
  std::size_t checked = 0, violations = 0;
  for (std::size_t j = 0; j < c.e.size(); ++j) {
    if (std::isnan(c.en[0][j])) continue;
    ++checked;
    if (!(c.en[0][j] >= c.en[1][j] && c.en[1][j] >= c.en[2][j])) ++violations;
  }
  const std::size_t peak = argmax(c.en[0]);
  const bool strict = c.en[0][peak] > c.en[1][peak] &&
                      c.en[1][peak] > c.en[2][peak];
  report("P4", checked > 0 && violations == 0 && strict,
         fmt("%zu stable E values, %zu ordering violations; at E=%.4g: "
             "%.4f > %.4f > %.4f",
             checked, violations, c.e[peak], c.en[0][peak], c.en[1][peak],
             c.en[2][peak]));
}

void p5(const Fig3aCurves& c) {
  const std::size_t peak = argmax(c.en[0]);
  SystemParams p;
  p.E = c.e[peak];
  const double vac = c.en[0][peak];
  const double thetas[] = {0.0, kPi / 2, 2 * kPi / 3, kPi};
  double en[4];
  for (int k = 0; k < 4; ++k) en[k] = en_a1_b(p, SqueezedField(0.1, thetas[k]));
  const bool ok = en[0] < en[1] && en[1] < en[2] && en[2] < en[3] &&
                  en[3] > vac;
  report("P5", ok,
         fmt("E=%.4g, r=0.1: theta 0,pi/2,2pi/3,pi -> %.4f, %.4f, %.4f, "
             "%.4f; vacuum %.4f",
             p.E, en[0], en[1], en[2], en[3], vac));
}

void p6() {
  const SweepResult res = run_sweep(preset("a1a2"), hardware_jobs());
  const std::size_t g12 = column(res, Measure::GA1ToA2);
  const std::size_t g21 = column(res, Measure::GA2ToA1);
  const std::size_t en = column(res, Measure::EnA1A2);
  std::size_t stable = 0, steer = 0, entangled = 0;
  for (const PointRecord& row : res.rows) {
    if (!row.stable) continue;
    ++stable;
    if (!(row.values[g12] == 0.0 && row.values[g21] == 0.0)) ++steer;
    if (row.values[en] > 0.0) ++entangled;
  }
  report("P6", stable > 0 && steer == 0,
         fmt("%zu/%zu stable points; steerable at %zu; E_N(a1,a2) > 0 at %zu",
             stable, res.rows.size(), steer, entangled));
}

void p7() {
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> uk(0.1, 0.4), ud(1.0, 2.5),
      uJ(0.2, 1.0), uE(0.0, 3e5), ur(0.0, 0.3), ut(0.0, 2 * kPi),
      um(0.0, 5.0);
  double worst_elem = 0.0, worst_res = 0.0;
  int sets = 0, draws = 0;
  while (sets < kP7Sets && draws < 100000) {
    ++draws;
    SystemParams p;
    p.kappa1 = uk(rng);
    p.kappa2 = uk(rng);
    p.delta1 = ud(rng);
    p.delta2 = ud(rng);
    p.J = uJ(rng);
    p.E = uE(rng);
    p.m_th = um(rng);
    const SqueezedField f(ur(rng), ut(rng));
    const SteadyState ss = solve_steady_state(p);
    const DriftMatrix m = build_drift(p, ss);
    if (!(max_real_eigenvalue(m.m) < -kP7MinMargin)) continue;
    const DiffusionMatrix d = build_diffusion(p, f);
    const CovarianceMatrix cm = solve_lyapunov(m, d);
    const Matrix6 ref = oracle::rk4_steady_covariance(m.m, d.d, 1e-14);
    worst_elem = std::max(worst_elem, (cm.v - ref).cwiseAbs().maxCoeff());
    worst_res = std::max(worst_res, lyapunov_residual(m.m, cm.v, d.d) /
                                        std::max(1.0, d.d.cwiseAbs().maxCoeff()));
    ++sets;
  }

  // Residual over every stable point of the fig2a grid.
  const SweepSpec s = preset("fig2a");
  std::size_t grid_points = 0;
  for (double delta : s.axes[0].points()) {
    for (double e : s.axes[1].points()) {
      SystemParams p;
      p.delta1 = p.delta2 = delta;
      p.E = e;
      const DriftMatrix m = build_drift(p, solve_steady_state(p));
      if (!(max_real_eigenvalue(m.m) < -kMarginalBand)) continue;
      const DiffusionMatrix d = build_diffusion(p, SqueezedField());
      const CovarianceMatrix cm = solve_lyapunov(m, d);
      worst_res = std::max(worst_res, lyapunov_residual(m.m, cm.v, d.d) /
                                          std::max(1.0, d.d.cwiseAbs().maxCoeff()));
      ++grid_points;
    }
  }
  report("P7",
         sets == kP7Sets && worst_elem <= kP7ElementTol &&
             worst_res <= kP7ResidualTol,
         fmt("%d RK4 sets, max |V - V_rk4| = %.2e (tol %.0e); max scaled "
             "residual %.2e over %zu solves (tol %.0e)",
             sets, worst_elem, kP7ElementTol, worst_res,
             grid_points + static_cast<std::size_t>(sets), kP7ResidualTol));
}

void p8() {
  double worst_tmsv = 0.0;
  for (double s : {0.1, 0.5, 1.0}) {
    const TwoModeCM tm{oracle::tmsv(s)};
    worst_tmsv = std::max(worst_tmsv, std::abs(log_negativity(tm).e_n - 2 * s));
    for (auto dir : {SteeringDirection::FirstToSecond,
                     SteeringDirection::SecondToFirst}) {
      worst_tmsv = std::max(worst_tmsv, std::abs(steering(tm, dir) -
                                                 std::log(std::cosh(2 * s))));
    }
  }

  SystemParams vac;
  vac.E = 0.0;
  const CovarianceMatrix cm = solve_lyapunov(
      build_drift(vac, solve_steady_state(vac)), build_diffusion(vac, SqueezedField()));
  double worst_vac = 0.0;
  for (auto [i, j] : {std::pair{Mode::A1, Mode::B}, std::pair{Mode::A1, Mode::A2},
                      std::pair{Mode::A2, Mode::B}}) {
    const PairMeasures pm = analyze_pair(cm, i, j);
    worst_vac = std::max({worst_vac, std::abs(pm.negativity.e_n),
                          std::abs(pm.g_1to2), std::abs(pm.g_2to1)});
  }

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> ur(0.0, 1.0), ut(0.0, 2 * kPi);
  const SystemParams p;
  const double expected = 0.25 * p.kappa1 * p.kappa1;
  double worst_det = 0.0;
  for (int k = 0; k < kP8Samples; ++k) {
    const Matrix6 d = build_diffusion(p, SqueezedField(ur(rng), ut(rng))).d;
    worst_det = std::max(
        worst_det, std::abs(d.topLeftCorner<2, 2>().determinant() - expected));
  }
  report("P8",
         worst_tmsv <= kP8Tol && worst_vac == 0.0 && worst_det <= kP8Tol,
         fmt("TMSV max error %.2e; vacuum max measure %.2e; det D1 max error "
             "%.2e (tol %.0e)",
             worst_tmsv, worst_vac, worst_det, kP8Tol));
}

void p9() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> shift(0.0, 3.0);
  std::size_t compared = 0, disagree = 0, excluded = 0;
  auto check = [&](const Matrix6& m) {
    const StabilityReport rep = is_stable(m);
    if (std::abs(rep.max_re_eigenvalue) < kP9Band) {
      ++excluded;
      return;
    }
    ++compared;
    if (rep.routh_stable != (rep.max_re_eigenvalue < 0)) ++disagree;
  };
  for (int k = 0; k < kP9Random; ++k) {
    check(oracle::random_matrix(rng, -1.0, 1.0) -
          shift(rng) * Matrix6::Identity());
  }
  const std::size_t random_compared = compared;
  const SweepSpec s = preset("fig2a");
  for (double delta : s.axes[0].points()) {
    for (double e : s.axes[1].points()) {
      SystemParams p;
      p.delta1 = p.delta2 = delta;
      p.E = e;
      check(build_drift(p, solve_steady_state(p)).m);
    }
  }
  report("P9", disagree == 0,
         fmt("%zu random + %zu fig2a drift matrices compared, %zu "
             "disagreements, %zu excluded (|max Re| < %.0e)",
             random_compared, compared - random_compared, disagree, excluded,
             kP9Band));
}

void p10() {
  const std::vector<Measure> all = {Measure::EnA1B,   Measure::GBToA1,
                                    Measure::GA1ToB,  Measure::EnA1A2,
                                    Measure::GA1ToA2, Measure::GA2ToA1};
  std::size_t points = 0, steering_points = 0, violations = 0;
  std::string first;
  for (const std::string& name : preset_names()) {
    SweepSpec s = preset(name);
    s.measures = all;
    const SweepResult res = run_sweep(s, hardware_jobs());
    for (const PointRecord& row : res.rows) {
      if (!row.stable) continue;
      ++points;
      const double* v = row.values.data();
      for (int pair = 0; pair < 2; ++pair) {
        const double en = v[3 * pair];
        const bool steer = v[3 * pair + 1] > 0.0 || v[3 * pair + 2] > 0.0;
        if (!steer) continue;
        ++steering_points;
        if (!(en > 0.0)) {
          ++violations;
          if (first.empty()) first = name;
        }
      }
    }
  }
  report("P10", violations == 0 && steering_points > 0,
         fmt("%zu stable points over %zu presets; %zu steerable pairs; %zu "
             "without E_N > 0%s%s",
             points, preset_names().size(), steering_points, violations,
             first.empty() ? "" : ", first in ", first.c_str()));
}

void p11() {
  const SweepSpec s = preset("fig5b");
  auto t0 = std::chrono::steady_clock::now();
  const SweepResult res = run_sweep(s, 1);
  const std::string one = csv_of(res);
  const double t1 = seconds_since(t0);
  t0 = std::chrono::steady_clock::now();
  const std::string eight = csv_of(run_sweep(s, 8));
  const double t8 = seconds_since(t0);
  report("P11", one == eight && t1 < kP11MaxSeconds && t8 < kP11MaxSeconds,
         fmt("fig5b %zu bytes, identical=%s; jobs=1 %.2f s, jobs=8 %.2f s "
             "(limit %.0f s)",
             one.size(), one == eight ? "yes" : "no", t1, t8, kP11MaxSeconds));

  // theta grid is symmetric about pi, so index k pairs with n - 1 - k.
  const std::size_t n = s.axes[1].points().size();
  double worst = 0.0;
  for (std::size_t i = 0; i < res.rows.size() / n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const PointRecord& a = res.rows[i * n + k];
      const PointRecord& b = res.rows[i * n + (n - 1 - k)];
      if (a.stable && b.stable) {
        worst = std::max(worst, std::abs(a.values[0] - b.values[0]));
      }
    }
  }
  info(fmt("fig5b max |E_N(r,theta) - E_N(r,2pi-theta)| = %.3e", worst));
}

void guarded(const char* id, const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report(id, false, std::string("exception: ") + e.what());
  }
}

}  // namespace

int main() {
  guarded("P1", p1);
  guarded("P2", p2);
  guarded("P3", p3);
  Fig3aCurves curves;
  try {
    curves = fig3a_curves();
    guarded("P4", [&] { p4(curves); });
    guarded("P5", [&] { p5(curves); });
  } catch (const std::exception& e) {
    report("P4", false, std::string("exception: ") + e.what());
    report("P5", false, std::string("exception: ") + e.what());
  }
  guarded("P6", p6);
  guarded("P7", p7);
  guarded("P8", p8);
  guarded("P9", p9);
  guarded("P10", p10);
  guarded("P11", p11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
