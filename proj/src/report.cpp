#include "optosqz/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "json.hpp"
#include "optosqz/gaussian.hpp"
#include "optosqz/stability.hpp"

namespace optosqz {

namespace {

using json = nlohmann::ordered_json;

json number_or_null(double v) {
  if (std::isnan(v)) return nullptr;
  return v;
}

json entry_value(const std::string& text) {
  if (text == "nan") return nullptr;
  if (text == "true") return true;
  if (text == "false") return false;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end != text.c_str() && *end == '\0' && std::isfinite(v)) return v;
  return text;
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> csv_header(const SweepResult& result) {
  std::vector<std::string> cols = result.axis_names;
  cols.insert(cols.end(), {"stable", "max_re_eig", "n_roots"});
  for (Measure m : result.columns) cols.push_back(measure_name(m));
  return cols;
}

void write_csv(const SweepResult& result, std::ostream& out) {
  const auto header = csv_header(result);
  for (std::size_t k = 0; k < header.size(); ++k) {
    out << (k ? "," : "") << header[k];
  }
  out << '\n';
  for (const PointRecord& row : result.rows) {
    for (double c : row.coords) out << format_number(c) << ',';
    out << (row.stable ? 1 : 0) << ',' << format_number(row.max_re_eig) << ','
        << row.n_roots;
    for (double v : row.values) out << ',' << format_number(v);
    out << '\n';
  }
}

void write_json(const SweepResult& result, std::ostream& out) {
  json arr = json::array();
  for (const PointRecord& row : result.rows) {
    json obj = json::object();
    for (std::size_t k = 0; k < row.coords.size(); ++k) {
      obj[result.axis_names[k]] = row.coords[k];
    }
    obj["stable"] = row.stable ? 1 : 0;
    obj["max_re_eig"] = number_or_null(row.max_re_eig);
    obj["n_roots"] = row.n_roots;
    for (std::size_t k = 0; k < row.values.size(); ++k) {
      obj[measure_name(result.columns[k])] = number_or_null(row.values[k]);
    }
    arr.push_back(std::move(obj));
  }
  out << arr.dump(1) << '\n';
}

PointReport evaluate_point_report(const RunConfig& cfg) {
  const SystemParams& p = cfg.params;
  p.validate();
  PointReport rep;
  auto add = [&](const std::string& k, double v) {
    rep.entries.emplace_back(k, format_number(v));
  };
  auto add_text = [&](const std::string& k, const std::string& v) {
    rep.entries.emplace_back(k, v);
  };

  add("kappa1", p.kappa1);
  add("kappa2", p.kappa2);
  add("gamma_m", p.gamma_m);
  add("g", p.g);
  add("J", p.J);
  add("Delta1", p.delta1);
  add("Delta2", p.delta2);
  add("E", p.E);
  add("n_a2", p.n_a2);
  add("m_th", p.m_th);
  add("r", cfg.field.r());
  add("theta", cfg.field.theta());
  add_text("branch", cfg.branch.to_string());

  const SteadyState ss = solve_steady_state(p, cfg.branch);
  add("n_roots", ss.n_roots);
  add("selected_branch", ss.selected_branch);
  add("delta1_prime", ss.delta1_prime);
  add("a1_mean_re", ss.a1_mean.real());
  add("a1_mean_im", ss.a1_mean.imag());
  add("a2_mean_re", ss.a2_mean.real());
  add("a2_mean_im", ss.a2_mean.imag());
  add("b_mean_re", ss.b_mean.real());
  add("b_mean_im", ss.b_mean.imag());
  add("Gx", ss.G.real());
  add("Gy", ss.G.imag());

  const DriftMatrix drift = build_drift(p, ss);
  const StabilityReport stab = is_stable(drift);
  const bool usable = stab.max_re_eigenvalue < -kMarginalBand;
  add_text("stable", usable ? "true" : "false");
  add_text("routh_stable", stab.routh_stable ? "true" : "false");
  add("max_re_eig", stab.max_re_eigenvalue);

  const DiffusionMatrix diff = build_diffusion(p, cfg.field);
  add("D11", diff.d(0, 0));
  add("D22", diff.d(1, 1));

  const std::vector<std::string> measure_keys = {
      "EN_a1_b",       "G_a1_to_b",    "G_b_to_a1",     "eta_minus_a1_b",
      "EN_a1_a2",      "G_a1_to_a2",   "G_a2_to_a1",    "eta_minus_a1_a2",
      "EN_a2_b",       "G_a2_to_b",    "G_b_to_a2",     "eta_minus_a2_b",
      "var_X_a1",      "var_Y_a1",     "var_X_a2",      "var_Y_a2",
      "var_X_b",       "var_Y_b",      "lyapunov_residual",
      "uncertainty_margin"};
  std::vector<double> values(measure_keys.size(), NAN);

  if (usable) {
    try {
      const CovarianceMatrix cm = solve_lyapunov(drift, diff);
      std::size_t k = 0;
      for (auto [mi, mj] : {std::pair{Mode::A1, Mode::B},
                            std::pair{Mode::A1, Mode::A2},
                            std::pair{Mode::A2, Mode::B}}) {
        const PairMeasures pm = analyze_pair(cm, mi, mj);
        values[k++] = pm.negativity.e_n;
        values[k++] = pm.g_1to2;
        values[k++] = pm.g_2to1;
        values[k++] = pm.negativity.eta_minus;
      }
      for (Mode m : {Mode::A1, Mode::A2, Mode::B}) {
        const auto [vx, vy] = quadrature_variances(cm, m);
        values[k++] = vx;
        values[k++] = vy;
      }
      values[k++] = lyapunov_residual(drift.m, cm.v, diff.d);
      values[k++] = uncertainty_margin(cm);
    } catch (const NumericalError& err) {
      rep.numerical_failure = true;
      rep.failure_message = err.what();
      std::fill(values.begin(), values.end(), NAN);
    }
  }
  for (std::size_t k = 0; k < measure_keys.size(); ++k) {
    add(measure_keys[k], values[k]);
  }
  return rep;
}

void write_point_text(const PointReport& rep, std::ostream& out) {
  for (const auto& [k, v] : rep.entries) out << k << " = " << v << '\n';
}

void write_point_json(const PointReport& rep, std::ostream& out) {
  json obj = json::object();
  for (const auto& [k, v] : rep.entries) obj[k] = entry_value(v);
  out << obj.dump(2) << '\n';
}

}  // namespace optosqz
