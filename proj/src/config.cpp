#include "optosqz/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace optosqz {

namespace {

using nlohmann::json;

const std::vector<std::string> kParamKeys = {
    "omega_m", "kappa1", "kappa2", "gamma_m", "g",    "J",
    "Delta1",  "Delta2", "E",      "n_a2",    "m_th"};
const std::vector<std::string> kFieldKeys = {"r", "theta"};
const std::vector<std::string> kTopKeys = {"params", "field",  "sweep",
                                           "output", "format", "jobs",
                                           "branch"};

bool contains(const std::vector<std::string>& keys, const std::string& k) {
  return std::find(keys.begin(), keys.end(), k) != keys.end();
}

void reject_unknown(const json& obj, const std::vector<std::string>& allowed,
                    const std::string& where) {
  if (!obj.is_object()) {
    throw ValidationError(where + ": expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (!contains(allowed, key)) {
      throw ValidationError(where + (where.empty() ? "" : ".") + key +
                            ": unknown key");
    }
  }
}

double get_number(const json& obj, const std::string& key,
                  const std::string& where) {
  const json& v = obj.at(key);
  if (!v.is_number()) {
    throw ValidationError(where + "." + key + ": expected a number");
  }
  return v.get<double>();
}

json params_to_json(const SystemParams& p) {
  return json{{"omega_m", p.omega_m}, {"kappa1", p.kappa1},
              {"kappa2", p.kappa2},   {"gamma_m", p.gamma_m},
              {"g", p.g},             {"J", p.J},
              {"Delta1", p.delta1},   {"Delta2", p.delta2},
              {"E", p.E},             {"n_a2", p.n_a2},
              {"m_th", p.m_th}};
}

json axis_to_json(const Axis& a) {
  json out{{"name", a.name()}};
  if (a.scale == AxisScale::List) {
    out["values"] = a.values;
  } else {
    out["min"] = a.min;
    out["max"] = a.max;
    out["count"] = a.count;
    out["scale"] = a.scale == AxisScale::Log ? "log" : "linear";
  }
  return out;
}

json sweep_to_json(const SweepSpec& s) {
  json axes = json::array();
  for (const Axis& a : s.axes) axes.push_back(axis_to_json(a));
  json measures = json::array();
  for (Measure m : s.measures) measures.push_back(measure_name(m));
  return json{{"axes", axes}, {"measures", measures}};
}

json defaults_json() {
  RunConfig cfg;
  return json::parse(run_config_to_json(cfg));
}

Axis axis_from_json(const json& j, const std::string& where) {
  reject_unknown(j, {"name", "min", "max", "count", "scale", "values"}, where);
  if (!j.contains("name") || !j.at("name").is_string()) {
    throw ValidationError(where + ".name: required string");
  }
  Axis a;
  a.param = parse_sweep_param(j.at("name").get<std::string>());
  if (j.contains("values")) {
    if (j.contains("min") || j.contains("max") || j.contains("count") ||
        j.contains("scale")) {
      throw ValidationError(where +
                            ".values: cannot combine with min/max/count/scale");
    }
    const json& vals = j.at("values");
    if (!vals.is_array()) {
      throw ValidationError(where + ".values: expected an array");
    }
    for (const json& v : vals) {
      if (!v.is_number()) {
        throw ValidationError(where + ".values: expected numbers");
      }
      a.values.push_back(v.get<double>());
    }
    a.scale = AxisScale::List;
    if (!a.values.empty()) {
      a.min = a.values.front();
      a.max = a.values.back();
    }
    a.count = static_cast<int>(a.values.size());
  } else {
    for (const char* key : {"min", "max", "count"}) {
      if (!j.contains(key)) {
        throw ValidationError(where + "." + key + ": required");
      }
    }
    a.min = get_number(j, "min", where);
    a.max = get_number(j, "max", where);
    const json& c = j.at("count");
    if (!c.is_number_integer()) {
      throw ValidationError(where + ".count: expected an integer");
    }
    a.count = c.get<int>();
    const std::string scale =
        j.contains("scale") ? j.at("scale").get<std::string>() : "linear";
    if (scale == "linear") {
      a.scale = AxisScale::Linear;
    } else if (scale == "log") {
      a.scale = AxisScale::Log;
    } else {
      throw ValidationError(where + ".scale: expected linear|log");
    }
  }
  try {
    a.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
  return a;
}

RunConfig config_from_json(const json& doc) {
  reject_unknown(doc, kTopKeys, "");
  RunConfig cfg;

  if (doc.contains("params")) {
    const json& p = doc.at("params");
    reject_unknown(p, kParamKeys, "params");
    auto set = [&](const char* key, double& field) {
      if (p.contains(key)) field = get_number(p, key, "params");
    };
    set("omega_m", cfg.params.omega_m);
    set("kappa1", cfg.params.kappa1);
    set("kappa2", cfg.params.kappa2);
    set("gamma_m", cfg.params.gamma_m);
    set("g", cfg.params.g);
    set("J", cfg.params.J);
    set("Delta1", cfg.params.delta1);
    set("Delta2", cfg.params.delta2);
    set("E", cfg.params.E);
    set("n_a2", cfg.params.n_a2);
    set("m_th", cfg.params.m_th);
  }
  try {
    cfg.params.validate();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string("params.") + e.what());
  }

  if (doc.contains("field")) {
    const json& f = doc.at("field");
    reject_unknown(f, kFieldKeys, "field");
    const double r = f.contains("r") ? get_number(f, "r", "field") : 0.0;
    const double theta =
        f.contains("theta") ? get_number(f, "theta", "field") : 0.0;
    try {
      cfg.field = SqueezedField(r, theta);
    } catch (const ValidationError& e) {
      throw ValidationError(std::string("field.") + e.what());
    }
  }

  if (doc.contains("output")) {
    if (!doc.at("output").is_string()) {
      throw ValidationError("output: expected a string");
    }
    cfg.output = doc.at("output").get<std::string>();
  }
  if (doc.contains("format")) {
    const json& f = doc.at("format");
    const std::string s = f.is_string() ? f.get<std::string>() : "";
    if (s == "csv") {
      cfg.format = OutputFormat::Csv;
    } else if (s == "json") {
      cfg.format = OutputFormat::Json;
    } else {
      throw ValidationError("format: expected csv|json");
    }
  }
  if (doc.contains("jobs")) {
    const json& j = doc.at("jobs");
    if (!j.is_number_integer() || j.get<long long>() < 1 ||
        j.get<long long>() > 4096) {
      throw ValidationError("jobs: expected an integer in [1, 4096]");
    }
    cfg.jobs = j.get<int>();
  }
  if (doc.contains("branch")) {
    if (!doc.at("branch").is_string()) {
      throw ValidationError("branch: expected a string");
    }
    cfg.branch = BranchPolicy::parse(doc.at("branch").get<std::string>());
  }

  if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
    const json& s = doc.at("sweep");
    reject_unknown(s, {"axes", "measures"}, "sweep");
    SweepSpec spec;
    spec.base = cfg.params;
    spec.field = cfg.field;
    spec.branch = cfg.branch;
    if (!s.contains("axes") || !s.at("axes").is_array()) {
      throw ValidationError("sweep.axes: required array");
    }
    const json& axes = s.at("axes");
    for (std::size_t k = 0; k < axes.size(); ++k) {
      spec.axes.push_back(
          axis_from_json(axes[k], "sweep.axes." + std::to_string(k)));
    }
    if (!s.contains("measures") || !s.at("measures").is_array()) {
      throw ValidationError("sweep.measures: required array");
    }
    for (const json& m : s.at("measures")) {
      if (!m.is_string()) {
        throw ValidationError("sweep.measures: expected strings");
      }
      try {
        spec.measures.push_back(parse_measure(m.get<std::string>()));
      } catch (const ValidationError& e) {
        throw ValidationError(std::string("sweep.measures: ") + e.what());
      }
    }
    try {
      spec.validate();
    } catch (const ValidationError& e) {
      const std::string msg = e.what();
      throw ValidationError(msg.rfind("sweep", 0) == 0 ? msg
                                                       : "sweep: " + msg);
    }
    cfg.sweep = std::move(spec);
  }
  return cfg;
}

json parse_value(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error&) {
    return json(text);
  }
}

std::vector<std::string> split_path(const std::string& key) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream is(key);
  while (std::getline(is, part, '.')) parts.push_back(part);
  return parts;
}

bool is_index(const std::string& s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(c); });
}

void set_path(json& doc, const std::vector<std::string>& path,
              const json& value, const std::string& key) {
  json* node = &doc;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const std::string& p = path[i];
    const bool last = i + 1 == path.size();
    if (node->is_array()) {
      if (!is_index(p) || std::stoul(p) >= node->size()) {
        throw ValidationError(key + ": no element '" + p + "'");
      }
      node = &(*node)[std::stoul(p)];
    } else {
      if (node->is_null()) *node = json::object();
      if (!node->is_object()) {
        throw ValidationError(key + ": '" + p + "' is not inside an object");
      }
      node = &(*node)[p];
    }
    if (last) *node = value;
  }
}

void apply_override(json& doc, const std::string& item) {
  const auto eq = item.find('=');
  if (eq == std::string::npos || eq == 0) {
    throw ValidationError("--set: expected key=value, got '" + item + "'");
  }
  const std::string key = item.substr(0, eq);
  const json value = parse_value(item.substr(eq + 1));

  std::vector<std::string> path = split_path(key);
  if (path.size() == 1) {
    const std::string& k = path[0];
    if (k == "Delta") {
      set_path(doc, {"params", "Delta1"}, value, key);
      set_path(doc, {"params", "Delta2"}, value, key);
      return;
    }
    if (k == "kappa") {
      set_path(doc, {"params", "kappa1"}, value, key);
      set_path(doc, {"params", "kappa2"}, value, key);
      return;
    }
    if (contains(kParamKeys, k)) {
      path.insert(path.begin(), "params");
    } else if (contains(kFieldKeys, k)) {
      path.insert(path.begin(), "field");
    } else if (!contains(kTopKeys, k)) {
      throw ValidationError(key + ": unknown key");
    }
  }
  set_path(doc, path, value, key);
}

}  // namespace

std::string run_config_to_json(const RunConfig& cfg) {
  json doc{{"params", params_to_json(cfg.params)},
           {"field", {{"r", cfg.field.r()}, {"theta", cfg.field.theta()}}},
           {"sweep", cfg.sweep ? sweep_to_json(*cfg.sweep) : json(nullptr)},
           {"output", cfg.output},
           {"format", cfg.format == OutputFormat::Json ? "json" : "csv"},
           {"jobs", cfg.jobs},
           {"branch", cfg.branch.to_string()}};
  return doc.dump(2);
}

RunConfig load_run_config(const ConfigSources& sources) {
  json doc = defaults_json();

  if (sources.preset) {
    const SweepSpec spec = preset(*sources.preset);
    RunConfig from_preset;
    from_preset.params = spec.base;
    from_preset.field = spec.field;
    from_preset.branch = spec.branch;
    from_preset.sweep = spec;
    doc = json::parse(run_config_to_json(from_preset));
  }

  if (sources.config_path) {
    std::ifstream in(*sources.config_path);
    if (!in) {
      throw std::ios_base::failure("cannot read config file '" +
                                   *sources.config_path + "'");
    }
    json file;
    try {
      in >> file;
    } catch (const json::parse_error& e) {
      throw ValidationError("config: invalid JSON: " + std::string(e.what()));
    }
    reject_unknown(file, kTopKeys, "");
    doc.merge_patch(file);
  }

  for (const std::string& item : sources.overrides) apply_override(doc, item);
  return config_from_json(doc);
}

}  // namespace optosqz
