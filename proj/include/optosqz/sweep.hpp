#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "optosqz/gaussian.hpp"
#include "optosqz/model.hpp"

namespace optosqz {

// Closed set of parameters a sweep axis may drive. Delta and Kappa set both
// optical modes; the ratio parameters are resolved against the (possibly
// swept) Delta1 / kappa1 after all plain axes are applied.
enum class SweepParam {
  Kappa1,
  Kappa2,
  Kappa,
  GammaM,
  G,
  J,
  Delta1,
  Delta2,
  Delta,
  E,
  NA2,
  MTh,
  R,
  Theta,
  KappaRatio,  // kappa2 / kappa1
  DeltaRatio,  // Delta2 / Delta1
};

SweepParam parse_sweep_param(const std::string& name);
std::string sweep_param_name(SweepParam p);
const std::vector<std::string>& sweep_param_names();

enum class Measure {
  EnA1B,     // E_N(a1, b)
  GBToA1,    // steering b -> a1
  GA1ToB,    // steering a1 -> b
  EnA1A2,    // E_N(a1, a2)
  GA1ToA2,
  GA2ToA1,
  VarXA1,
  VarYA1,
  D11,
  D22,
  MaxReEig,  // already a fixed column; accepted and not repeated
};

Measure parse_measure(const std::string& name);
std::string measure_name(Measure m);
const std::vector<std::string>& measure_names();

enum class AxisScale { Linear, Log, List };

struct Axis {
  SweepParam param = SweepParam::E;
  double min = 0.0;
  double max = 1.0;
  int count = 2;
  AxisScale scale = AxisScale::Linear;
  std::vector<double> values;  // used when scale == List

  std::string name() const { return sweep_param_name(param); }
  std::vector<double> points() const;
  void validate() const;
};

struct SweepSpec {
  SystemParams base;
  SqueezedField field;
  std::vector<Axis> axes;
  std::vector<Measure> measures;
  BranchPolicy branch;

  void validate() const;
  std::size_t size() const;
};

struct PointRecord {
  std::vector<double> coords;
  bool stable = false;
  double max_re_eig = 0.0;
  int n_roots = 0;
  bool anomaly = false;
  std::string anomaly_message;
  std::vector<double> values;  // one per entry of SweepResult::columns
};

struct SweepResult {
  std::vector<std::string> axis_names;
  std::vector<Measure> columns;  // requested measures, MaxReEig removed
  std::vector<PointRecord> rows;
};

// Points with |max Re lambda| below this are treated as unstable.
inline constexpr double kMarginalBand = 1e-9;

// Measures are NaN unless the point is stable with margin beyond
// kMarginalBand. Lyapunov/measure failures at a stable point set `anomaly`.
PointRecord evaluate_point(const SystemParams& params,
                           const SqueezedField& field,
                           const std::vector<Measure>& measures,
                           const BranchPolicy& branch = {});

// Apply one axis value to a parameter set. Ratio parameters are applied by
// apply_axes after the plain ones.
void apply_axes(const std::vector<Axis>& axes, const std::vector<double>& at,
                SystemParams& params, double& r, double& theta);

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

// Row-major over axes in declaration order. Output is independent of `jobs`.
SweepResult run_sweep(const SweepSpec& spec, int jobs = 1,
                      const ProgressFn& progress = {});

const std::vector<std::string>& preset_names();
SweepSpec preset(const std::string& name);

}  // namespace optosqz
