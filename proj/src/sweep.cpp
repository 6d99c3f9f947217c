#include "optosqz/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <thread>
#include <utility>

#include "optosqz/stability.hpp"

namespace optosqz {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPi = std::numbers::pi;

const std::vector<std::pair<SweepParam, std::string>>& param_table() {
  static const std::vector<std::pair<SweepParam, std::string>> table = {
      {SweepParam::Kappa1, "kappa1"},
      {SweepParam::Kappa2, "kappa2"},
      {SweepParam::Kappa, "kappa"},
      {SweepParam::GammaM, "gamma_m"},
      {SweepParam::G, "g"},
      {SweepParam::J, "J"},
      {SweepParam::Delta1, "Delta1"},
      {SweepParam::Delta2, "Delta2"},
      {SweepParam::Delta, "Delta"},
      {SweepParam::E, "E"},
      {SweepParam::NA2, "n_a2"},
      {SweepParam::MTh, "m_th"},
      {SweepParam::R, "r"},
      {SweepParam::Theta, "theta"},
      {SweepParam::KappaRatio, "kappa2/kappa1"},
      {SweepParam::DeltaRatio, "Delta2/Delta1"},
  };
  return table;
}

const std::vector<std::pair<Measure, std::string>>& measure_table() {
  static const std::vector<std::pair<Measure, std::string>> table = {
      {Measure::EnA1B, "EN_a1_b"},       {Measure::GBToA1, "G_b_to_a1"},
      {Measure::GA1ToB, "G_a1_to_b"},    {Measure::EnA1A2, "EN_a1_a2"},
      {Measure::GA1ToA2, "G_a1_to_a2"},  {Measure::GA2ToA1, "G_a2_to_a1"},
      {Measure::VarXA1, "var_X_a1"},     {Measure::VarYA1, "var_Y_a1"},
      {Measure::D11, "D11"},             {Measure::D22, "D22"},
      {Measure::MaxReEig, "max_re_eig"},
  };
  return table;
}

template <typename Table>
std::vector<std::string> names_of(const Table& table) {
  std::vector<std::string> out;
  for (const auto& [key, name] : table) out.push_back(name);
  return out;
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) {
    if (!out.empty()) out += ", ";
    out += n;
  }
  return out;
}

bool is_ratio(SweepParam p) {
  return p == SweepParam::KappaRatio || p == SweepParam::DeltaRatio;
}

void set_plain(SweepParam p, double v, SystemParams& sp, double& r,
               double& theta) {
  switch (p) {
    case SweepParam::Kappa1: sp.kappa1 = v; break;
    case SweepParam::Kappa2: sp.kappa2 = v; break;
    case SweepParam::Kappa: sp.kappa1 = sp.kappa2 = v; break;
    case SweepParam::GammaM: sp.gamma_m = v; break;
    case SweepParam::G: sp.g = v; break;
    case SweepParam::J: sp.J = v; break;
    case SweepParam::Delta1: sp.delta1 = v; break;
    case SweepParam::Delta2: sp.delta2 = v; break;
    case SweepParam::Delta: sp.delta1 = sp.delta2 = v; break;
    case SweepParam::E: sp.E = v; break;
    case SweepParam::NA2: sp.n_a2 = v; break;
    case SweepParam::MTh: sp.m_th = v; break;
    case SweepParam::R: r = v; break;
    case SweepParam::Theta: theta = v; break;
    case SweepParam::KappaRatio: sp.kappa2 = v * sp.kappa1; break;
    case SweepParam::DeltaRatio: sp.delta2 = v * sp.delta1; break;
  }
}

struct Pairs {
  std::optional<PairMeasures> a1_b;
  std::optional<PairMeasures> a1_a2;
};

bool needs(const std::vector<Measure>& ms, std::initializer_list<Measure> any) {
  return std::any_of(ms.begin(), ms.end(), [&](Measure m) {
    return std::find(any.begin(), any.end(), m) != any.end();
  });
}

}  // namespace

SweepParam parse_sweep_param(const std::string& name) {
  for (const auto& [p, n] : param_table()) {
    if (n == name) return p;
  }
  throw ValidationError("unknown sweep parameter '" + name +
                        "'; valid: " + join(sweep_param_names()));
}

std::string sweep_param_name(SweepParam p) {
  for (const auto& [q, n] : param_table()) {
    if (q == p) return n;
  }
  return "?";
}

const std::vector<std::string>& sweep_param_names() {
  static const std::vector<std::string> names = names_of(param_table());
  return names;
}

Measure parse_measure(const std::string& name) {
  for (const auto& [m, n] : measure_table()) {
    if (n == name) return m;
  }
  throw ValidationError("unknown measure '" + name +
                        "'; valid: " + join(measure_names()));
}

std::string measure_name(Measure m) {
  for (const auto& [q, n] : measure_table()) {
    if (q == m) return n;
  }
  return "?";
}

const std::vector<std::string>& measure_names() {
  static const std::vector<std::string> names = names_of(measure_table());
  return names;
}

void Axis::validate() const {
  const std::string n = name();
  if (scale == AxisScale::List) {
    if (values.size() < 2) {
      throw ValidationError("axis " + n + ": list needs at least 2 values");
    }
    for (double v : values) {
      if (!std::isfinite(v)) {
        throw ValidationError("axis " + n + ": non-finite value");
      }
    }
    return;
  }
  if (count < 2) throw ValidationError("axis " + n + ": count must be >= 2");
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw ValidationError("axis " + n + ": need finite min < max");
  }
  if (scale == AxisScale::Log && !(min > 0.0)) {
    throw ValidationError("axis " + n + ": log scale needs min > 0");
  }
}

std::vector<double> Axis::points() const {
  if (scale == AxisScale::List) return values;
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    const double t = static_cast<double>(k) / (count - 1);
    if (scale == AxisScale::Linear) {
      out[k] = min + (max - min) * t;
    } else {
      out[k] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
    }
  }
  out.front() = min;
  out.back() = max;
  return out;
}

void SweepSpec::validate() const {
  base.validate();
  if (axes.empty() || axes.size() > 2) {
    throw ValidationError("sweep.axes: need 1 or 2 axes");
  }
  for (const Axis& a : axes) a.validate();
  if (axes.size() == 2 && axes[0].param == axes[1].param) {
    throw ValidationError("sweep.axes: duplicate axis " + axes[0].name());
  }
  if (measures.empty()) {
    throw ValidationError("sweep.measures: need at least one measure");
  }
}

std::size_t SweepSpec::size() const {
  std::size_t n = 1;
  for (const Axis& a : axes) n *= a.points().size();
  return n;
}

void apply_axes(const std::vector<Axis>& axes, const std::vector<double>& at,
                SystemParams& params, double& r, double& theta) {
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (!is_ratio(axes[k].param)) {
      set_plain(axes[k].param, at[k], params, r, theta);
    }
  }
  for (std::size_t k = 0; k < axes.size(); ++k) {
    if (is_ratio(axes[k].param)) {
      set_plain(axes[k].param, at[k], params, r, theta);
    }
  }
}

PointRecord evaluate_point(const SystemParams& params,
                           const SqueezedField& field,
                           const std::vector<Measure>& measures,
                           const BranchPolicy& branch) {
  params.validate();
  std::vector<Measure> columns;
  for (Measure m : measures) {
    if (m != Measure::MaxReEig) columns.push_back(m);
  }

  PointRecord rec;
  rec.values.assign(columns.size(), kNaN);

  const SteadyState ss = solve_steady_state(params, branch);
  rec.n_roots = ss.n_roots;
  const DriftMatrix drift = build_drift(params, ss);
  rec.max_re_eig = max_real_eigenvalue(drift.m);
  rec.stable = rec.max_re_eig < -kMarginalBand;
  if (!rec.stable) return rec;

  const DiffusionMatrix diff = build_diffusion(params, field);
  try {
    const CovarianceMatrix cm = solve_lyapunov(drift, diff);
    Pairs pairs;
    if (needs(columns, {Measure::EnA1B, Measure::GBToA1, Measure::GA1ToB})) {
      pairs.a1_b = analyze_pair(cm, Mode::A1, Mode::B);
    }
    if (needs(columns,
              {Measure::EnA1A2, Measure::GA1ToA2, Measure::GA2ToA1})) {
      pairs.a1_a2 = analyze_pair(cm, Mode::A1, Mode::A2);
    }
    const auto [var_x, var_y] = quadrature_variances(cm, Mode::A1);

    for (std::size_t k = 0; k < columns.size(); ++k) {
      double& out = rec.values[k];
      switch (columns[k]) {
        case Measure::EnA1B: out = pairs.a1_b->negativity.e_n; break;
        case Measure::GBToA1: out = pairs.a1_b->g_2to1; break;
        case Measure::GA1ToB: out = pairs.a1_b->g_1to2; break;
        case Measure::EnA1A2: out = pairs.a1_a2->negativity.e_n; break;
        case Measure::GA1ToA2: out = pairs.a1_a2->g_1to2; break;
        case Measure::GA2ToA1: out = pairs.a1_a2->g_2to1; break;
        case Measure::VarXA1: out = var_x; break;
        case Measure::VarYA1: out = var_y; break;
        case Measure::D11: out = diff.d(0, 0); break;
        case Measure::D22: out = diff.d(1, 1); break;
        case Measure::MaxReEig: break;
      }
    }
  } catch (const NumericalError& err) {
    rec.anomaly = true;
    rec.anomaly_message = err.what();
    std::fill(rec.values.begin(), rec.values.end(), kNaN);
  }
  return rec;
}

SweepResult run_sweep(const SweepSpec& spec, int jobs,
                      const ProgressFn& progress) {
  spec.validate();

  SweepResult result;
  for (const Axis& a : spec.axes) result.axis_names.push_back(a.name());
  for (Measure m : spec.measures) {
    if (m != Measure::MaxReEig) result.columns.push_back(m);
  }

  std::vector<std::vector<double>> grids;
  for (const Axis& a : spec.axes) grids.push_back(a.points());
  std::size_t total = 1;
  for (const auto& g : grids) total *= g.size();
  result.rows.resize(total);

  auto coords_of = [&](std::size_t flat) {
    std::vector<double> at(grids.size());
    for (std::size_t k = grids.size(); k-- > 0;) {
      at[k] = grids[k][flat % grids[k].size()];
      flat /= grids[k].size();
    }
    return at;
  };

  auto eval = [&](std::size_t flat) {
    std::vector<double> at = coords_of(flat);
    SystemParams sp = spec.base;
    double r = spec.field.r();
    double theta = spec.field.theta();
    apply_axes(spec.axes, at, sp, r, theta);
    PointRecord rec =
        evaluate_point(sp, SqueezedField(r, theta), spec.measures, spec.branch);
    rec.coords = std::move(at);
    result.rows[flat] = std::move(rec);
  };

  if (jobs <= 0) {
    jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  jobs = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(jobs), total));

  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::atomic<bool> failed{false};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&]() {
    while (!failed.load()) {
      const std::size_t i = next.fetch_add(1);
      if (i >= total) break;
      try {
        eval(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        failed = true;
        break;
      }
      const std::size_t d = done.fetch_add(1) + 1;
      if (progress && jobs == 1) progress(d, total);
    }
  };

  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
    // Progress from the calling thread keeps the callback single-threaded.
    if (progress) {
      while (done.load() < total && !failed.load()) {
        progress(done.load(), total);
        std::this_thread::sleep_for(std::chrono::milliseconds(200));
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  if (progress && jobs != 1) progress(total, total);
  return result;
}

}  // namespace optosqz
