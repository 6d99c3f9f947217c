#include <numbers>

#include "optosqz/sweep.hpp"

namespace optosqz {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kGrid2D = 101;
constexpr int kGrid1D = 201;

Axis linear(SweepParam p, double lo, double hi, int count) {
  Axis a;
  a.param = p;
  a.min = lo;
  a.max = hi;
  a.count = count;
  return a;
}

Axis list(SweepParam p, std::vector<double> values) {
  Axis a;
  a.param = p;
  a.scale = AxisScale::List;
  a.min = values.front();
  a.max = values.back();
  a.count = static_cast<int>(values.size());
  a.values = std::move(values);
  return a;
}

// kappa1 = kappa2 = 0.2, gamma_m = 1e-5, g = 5e-5, J = 0.5,
// Delta1 = Delta2 = 1.8, E = 3e5, vacuum input.
SweepSpec baseline() { return SweepSpec{}; }

const std::vector<Measure> kEntanglementA1B = {
    Measure::EnA1B, Measure::GBToA1, Measure::GA1ToB};
const std::vector<Measure> kSteeringA1B = {Measure::GBToA1, Measure::GA1ToB,
                                           Measure::EnA1B};

}  // namespace

const std::vector<std::string>& preset_names() {
  static const std::vector<std::string> names = {
      "fig2a", "fig2b", "fig2c", "fig2d", "fig3a", "fig3b", "fig4",
      "fig5a", "fig5b", "fig5c", "fig6a", "fig6b", "a1a2"};
  return names;
}

SweepSpec preset(const std::string& name) {
  SweepSpec s = baseline();

  if (name == "fig2a" || name == "fig2b") {
    s.axes = {linear(SweepParam::Delta, 0.0, 3.0, kGrid2D),
              linear(SweepParam::E, 0.0, 1e6, kGrid2D)};
    s.measures = name == "fig2a" ? kEntanglementA1B : kSteeringA1B;
  } else if (name == "fig2c" || name == "fig2d") {
    s.axes = {linear(SweepParam::J, 0.0, 1.5, kGrid2D),
              linear(SweepParam::E, 0.0, 1e6, kGrid2D)};
    s.measures = name == "fig2c" ? kEntanglementA1B : kSteeringA1B;
  } else if (name == "fig3a") {
    s.axes = {list(SweepParam::R, {0.0, 0.1, 0.2}),
              linear(SweepParam::E, 0.0, 8e5, kGrid1D)};
    s.measures = {Measure::EnA1B, Measure::GBToA1, Measure::GA1ToB};
  } else if (name == "fig3b") {
    s.axes = {linear(SweepParam::R, 0.0, 1.0, kGrid1D)};
    s.measures = {Measure::D11, Measure::D22};
  } else if (name == "fig4") {
    s.axes = {list(SweepParam::Theta, {0.0, kPi}),
              linear(SweepParam::R, 0.0, 0.5, kGrid1D)};
    s.measures = {Measure::VarXA1, Measure::VarYA1};
  } else if (name == "fig5a") {
    s.field = SqueezedField(0.1, 0.0);
    s.axes = {list(SweepParam::Theta, {0.0, kPi / 2, 2 * kPi / 3, kPi}),
              linear(SweepParam::E, 0.0, 8e5, kGrid1D)};
    s.measures = {Measure::EnA1B, Measure::GBToA1, Measure::GA1ToB};
  } else if (name == "fig5b") {
    s.axes = {linear(SweepParam::R, 0.0, 0.3, kGrid2D),
              linear(SweepParam::Theta, 0.0, 2 * kPi, kGrid2D)};
    s.measures = {Measure::EnA1B};
  } else if (name == "fig5c") {
    s.field = SqueezedField(0.1, 0.0);
    s.axes = {linear(SweepParam::Theta, 0.0, 2 * kPi, kGrid2D),
              linear(SweepParam::E, 0.0, 8e5, kGrid2D)};
    s.measures = {Measure::EnA1B};
  } else if (name == "fig6a") {
    s.field = SqueezedField(0.1, kPi);
    s.axes = {linear(SweepParam::KappaRatio, 0.2, 3.0, kGrid2D),
              linear(SweepParam::MTh, 0.0, 200.0, kGrid2D)};
    s.measures = {Measure::EnA1B};
  } else if (name == "fig6b") {
    s.field = SqueezedField(0.1, kPi);
    s.base.J = 1.0;
    s.axes = {linear(SweepParam::DeltaRatio, 0.5, 1.5, kGrid2D),
              linear(SweepParam::G, 1e-5, 1e-4, kGrid2D)};
    s.measures = {Measure::EnA1B};
  } else if (name == "a1a2") {
    s.base.g = 1e-7;
    s.base.kappa1 = s.base.kappa2 = 0.1;
    s.base.J = 0.6;
    s.axes = {linear(SweepParam::Delta, 0.0, 3.0, kGrid2D),
              linear(SweepParam::E, 0.0, 1.5e6, kGrid2D)};
    s.measures = {Measure::EnA1A2, Measure::GA1ToA2, Measure::GA2ToA1};
  } else {
    std::string valid;
    for (const auto& n : preset_names()) {
      valid += (valid.empty() ? "" : ", ") + n;
    }
    throw ValidationError("unknown preset '" + name + "'; valid: " + valid);
  }
  return s;
}

}  // namespace optosqz
