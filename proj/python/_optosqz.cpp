#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "optosqz/gaussian.hpp"
#include "optosqz/model.hpp"
#include "optosqz/stability.hpp"
#include "optosqz/sweep.hpp"

namespace py = pybind11;
using namespace optosqz;

namespace {

Matrix6 as_matrix6(const Eigen::MatrixXd& m, const char* what) {
  if (m.rows() != 6 || m.cols() != 6) {
    throw ValidationError(std::string(what) + ": expected a 6x6 matrix");
  }
  return m;
}

py::dict sweep_to_dict(const SweepResult& res) {
  py::dict out;
  out["axis_names"] = res.axis_names;
  std::vector<std::string> cols;
  for (Measure m : res.columns) cols.push_back(measure_name(m));
  out["measures"] = cols;

  const std::size_t n = res.rows.size();
  const std::size_t n_axes = res.axis_names.size();
  Eigen::MatrixXd coords(n, n_axes);
  Eigen::MatrixXd values(n, cols.size());
  Eigen::VectorXd max_re(n);
  std::vector<bool> stable(n);
  std::vector<int> n_roots(n);
  for (std::size_t i = 0; i < n; ++i) {
    const PointRecord& r = res.rows[i];
    for (std::size_t k = 0; k < n_axes; ++k) coords(i, k) = r.coords[k];
    for (std::size_t k = 0; k < cols.size(); ++k) values(i, k) = r.values[k];
    max_re(i) = r.max_re_eig;
    stable[i] = r.stable;
    n_roots[i] = r.n_roots;
  }
  out["coords"] = coords;
  out["values"] = values;
  out["max_re_eig"] = max_re;
  out["stable"] = stable;
  out["n_roots"] = n_roots;
  return out;
}

}  // namespace

PYBIND11_MODULE(_optosqz, m) {
  m.doc() =
      "Steady-state Gaussian analysis of a two-cavity optomechanical system "
      "driven by a squeezed vacuum";

  py::register_exception<ValidationError>(m, "ValidationError",
                                          PyExc_ValueError);
  py::register_exception<NumericalError>(m, "NumericalError",
                                         PyExc_ArithmeticError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        SystemParams p;
        py::object obj = py::cast(&p, py::return_value_policy::reference);
        for (auto item : kw) {
          const auto key = item.first.cast<std::string>();
          if (!py::hasattr(obj, key.c_str())) {
            throw ValidationError(key + ": unknown parameter");
          }
          py::setattr(obj, key.c_str(), item.second);
        }
        return p;
      }))
      .def_readwrite("omega_m", &SystemParams::omega_m)
      .def_readwrite("kappa1", &SystemParams::kappa1)
      .def_readwrite("kappa2", &SystemParams::kappa2)
      .def_readwrite("gamma_m", &SystemParams::gamma_m)
      .def_readwrite("g", &SystemParams::g)
      .def_readwrite("J", &SystemParams::J)
      .def_readwrite("delta1", &SystemParams::delta1)
      .def_readwrite("delta2", &SystemParams::delta2)
      .def_readwrite("E", &SystemParams::E)
      .def_readwrite("n_a2", &SystemParams::n_a2)
      .def_readwrite("m_th", &SystemParams::m_th)
      .def("validate", &SystemParams::validate);

  py::class_<SqueezedField>(m, "SqueezedField")
      .def(py::init<double, double>(), py::arg("r") = 0.0,
           py::arg("theta") = 0.0)
      .def_property_readonly("r", &SqueezedField::r)
      .def_property_readonly("theta", &SqueezedField::theta)
      .def("moments", [](const SqueezedField& f) {
        const SqueezedMoments mom = squeezed_moments(f);
        return py::make_tuple(mom.N, mom.M);
      });

  py::class_<SteadyState>(m, "SteadyState")
      .def_readonly("a1_mean", &SteadyState::a1_mean)
      .def_readonly("a2_mean", &SteadyState::a2_mean)
      .def_readonly("b_mean", &SteadyState::b_mean)
      .def_readonly("delta1_prime", &SteadyState::delta1_prime)
      .def_readonly("G", &SteadyState::G)
      .def_readonly("n_roots", &SteadyState::n_roots)
      .def_readonly("selected_branch", &SteadyState::selected_branch);

  m.def(
      "solve_steady_state",
      [](const SystemParams& p, const std::string& branch) {
        return solve_steady_state(p, BranchPolicy::parse(branch));
      },
      py::arg("params"), py::arg("branch") = "lowest");
  m.def("effective_detuning_roots", &effective_detuning_roots);
  m.def(
      "drift_matrix",
      [](const SystemParams& p, const SteadyState& ss) {
        return Eigen::MatrixXd(build_drift(p, ss).m);
      },
      py::arg("params"), py::arg("steady_state"));
  m.def(
      "diffusion_matrix",
      [](const SystemParams& p, const SqueezedField& f) {
        return Eigen::MatrixXd(build_diffusion(p, f).d);
      },
      py::arg("params"), py::arg("field"));

  m.def("characteristic_polynomial", [](const Eigen::MatrixXd& a) {
    const CharPoly c = characteristic_polynomial(as_matrix6(a, "drift"));
    return std::vector<double>(c.begin(), c.end());
  });
  m.def("stability", [](const Eigen::MatrixXd& a) {
    const StabilityReport rep = is_stable(as_matrix6(a, "drift"));
    py::dict out;
    out["stable"] = rep.stable;
    out["max_re_eigenvalue"] = rep.max_re_eigenvalue;
    out["routh_stable"] = rep.routh_stable;
    out["char_poly"] = std::vector<double>(rep.char_poly.begin(),
                                           rep.char_poly.end());
    return out;
  });

  m.def(
      "solve_lyapunov",
      [](const Eigen::MatrixXd& drift, const Eigen::MatrixXd& diffusion) {
        return Eigen::MatrixXd(
            solve_lyapunov(DriftMatrix{as_matrix6(drift, "drift")},
                           DiffusionMatrix{as_matrix6(diffusion, "diffusion")})
                .v);
      },
      py::arg("drift"), py::arg("diffusion"));

  m.def(
      "pair_measures",
      [](const Eigen::MatrixXd& v, const std::string& mode_i,
         const std::string& mode_j) {
        const PairMeasures pm =
            analyze_pair(CovarianceMatrix{as_matrix6(v, "covariance")},
                         parse_mode(mode_i), parse_mode(mode_j));
        py::dict out;
        out["e_n"] = pm.negativity.e_n;
        out["e_n_raw"] = pm.negativity.e_n_raw;
        out["eta_minus"] = pm.negativity.eta_minus;
        out["sigma"] = pm.negativity.sigma;
        out["g_1to2"] = pm.g_1to2;
        out["g_2to1"] = pm.g_2to1;
        return out;
      },
      py::arg("covariance"), py::arg("mode_i"), py::arg("mode_j"));

  m.def(
      "evaluate_point",
      [](const SystemParams& p, const SqueezedField& f,
         const std::vector<std::string>& measures, const std::string& branch) {
        std::vector<Measure> ms;
        for (const auto& name : measures) ms.push_back(parse_measure(name));
        const PointRecord rec =
            evaluate_point(p, f, ms, BranchPolicy::parse(branch));
        py::dict out;
        out["stable"] = rec.stable;
        out["max_re_eig"] = rec.max_re_eig;
        out["n_roots"] = rec.n_roots;
        out["anomaly"] = rec.anomaly;
        std::size_t k = 0;
        for (Measure meas : ms) {
          if (meas != Measure::MaxReEig) {
            out[py::str(measure_name(meas))] = rec.values[k++];
          }
        }
        return out;
      },
      py::arg("params"), py::arg("field") = SqueezedField(),
      py::arg("measures") = std::vector<std::string>{"EN_a1_b", "G_b_to_a1",
                                                     "G_a1_to_b"},
      py::arg("branch") = "lowest");

  m.def("preset_names", &preset_names);
  m.def(
      "run_preset",
      [](const std::string& name, int jobs) {
        const SweepSpec spec = preset(name);
        SweepResult res;
        {
          py::gil_scoped_release release;
          res = run_sweep(spec, jobs);
        }
        return sweep_to_dict(res);
      },
      py::arg("name"), py::arg("jobs") = 1);
}
