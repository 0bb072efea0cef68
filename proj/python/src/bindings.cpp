#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "roughdens/density.hpp"
#include "roughdens/experiment.hpp"
#include "roughdens/malliavin.hpp"
#include "roughdens/rde_solver.hpp"
#include "roughdens/rough_lift.hpp"
#include "roughdens/version.hpp"
#include "roughdens/young_variation.hpp"

namespace py = pybind11;
using namespace roughdens;
using nlohmann::json;

namespace {

// Configs cross the boundary as JSON text; the Python layer handles dicts.
ExperimentConfig config_from(const std::string& text, const std::string& base_dir) {
  return parse_config(json::parse(text), base_dir);
}

const VectorFieldSystem& system_of(const ExperimentConfig& c) {
  if (!c.system) throw ConfigError("config has no system section");
  return *c.system;
}

RoughPath lift_of(const std::vector<double>& times, const Eigen::MatrixXd& values) {
  return lift_piecewise_linear(TimeGrid(times), values);
}

py::dict lift(const std::vector<double>& times, const Eigen::MatrixXd& values) {
  const auto x = lift_of(times, values);
  const auto n = static_cast<py::ssize_t>(x.elements().size());
  const auto d = static_cast<py::ssize_t>(x.dim());
  py::array_t<double> level2({n, d, d});
  auto l2 = level2.mutable_unchecked<3>();
  Eigen::MatrixXd level1(n, d);
  for (py::ssize_t i = 0; i < n; ++i) {
    const auto& g = x.elements()[static_cast<std::size_t>(i)];
    level1.row(i) = g.level1.transpose();
    for (py::ssize_t a = 0; a < d; ++a)
      for (py::ssize_t b = 0; b < d; ++b) l2(i, a, b) = g.level2(a, b);
  }
  py::dict out;
  out["level1"] = level1;
  out["level2"] = level2;
  out["symmetric_residual"] = x.max_symmetric_residual();
  return out;
}

py::dict solve(const std::string& config, const std::vector<double>& times, const Eigen::MatrixXd& values,
               bool jacobian, const std::string& base_dir) {
  const auto c = config_from(config, base_dir);
  const auto x = lift_of(times, values);
  const auto& vf = system_of(c);
  const auto flow = jacobian ? solve_flow_jacobian(x, vf, c.y0) : solve_rde(x, vf, c.y0);
  py::dict out;
  out["y"] = flow.y;
  if (jacobian) {
    const auto n = static_cast<py::ssize_t>(flow.jacobian.size());
    const auto e = static_cast<py::ssize_t>(vf.state_dim());
    py::array_t<double> j({n, e, e});
    auto jj = j.mutable_unchecked<3>();
    for (py::ssize_t i = 0; i < n; ++i)
      for (py::ssize_t a = 0; a < e; ++a)
        for (py::ssize_t b = 0; b < e; ++b) jj(i, a, b) = flow.jacobian[static_cast<std::size_t>(i)](a, b);
    out["jacobian"] = j;
    out["max_condition"] = flow.max_condition;
  }
  return out;
}

py::dict malliavin(const std::string& config, const std::vector<double>& times, const Eigen::MatrixXd& values,
                   double t, const std::string& method, const std::string& base_dir) {
  const auto c = config_from(config, base_dir);
  const auto& vf = system_of(c);
  const auto flow = solve_flow_jacobian(lift_of(times, values), vf, c.y0);
  MalliavinMatrix m;
  if (method == "2d-young") {
    m = malliavin_matrix_2d(flow, vf, c.model, t);
  } else if (method == "parseval-basis") {
    m = malliavin_matrix_parseval(flow, vf, cameron_martin_bases(c.model, flow.grid), t);
  } else if (method == "bm-reduction") {
    m = malliavin_matrix_bm_reduction(flow, vf, t);
  } else {
    throw InvalidInput("unknown method '" + method + "' (2d-young, parseval-basis, bm-reduction)");
  }
  const auto sp = spectrum(m, c.tau);
  py::dict out;
  out["sigma"] = m.sigma;
  out["eigenvalues"] = sp.eigenvalues;
  out["lambda_min"] = sp.lambda_min;
  out["det"] = sp.det;
  out["threshold"] = sp.threshold;
  out["nondegenerate"] = sp.nondegenerate;
  return out;
}

std::string check(const std::string& config, const std::string& base_dir) {
  return check_conditions(config_from(config, base_dir)).to_json().dump();
}

std::string run(const std::string& config, std::size_t threads, const std::string& out_dir,
                const std::string& base_dir) {
  const auto c = config_from(config, base_dir);
  ExperimentResult result;
  {
    py::gil_scoped_release release;
    result = run_experiment(c, threads);
    if (!out_dir.empty()) write_artifacts(c, result, out_dir);
  }
  return result.summary.dump();
}

py::tuple sample(const std::string& config, std::size_t count, std::uint64_t first_index,
                 const std::string& base_dir) {
  const auto c = config_from(config, base_dir);
  const GaussianSampler sampler(c.model, c.grid);
  py::list paths;
  for (std::size_t i = 0; i < count; ++i) paths.append(sampler.sample(c.seed, first_index + i).values);
  const auto pts = c.grid.points();
  return py::make_tuple(std::vector<double>(pts.begin(), pts.end()), paths);
}

double pvar(const std::vector<double>& times, const Eigen::MatrixXd& values, double p) {
  return p_variation(GridFunction1D(TimeGrid(times), values), p).value;
}

py::dict kde(const Eigen::MatrixXd& samples, std::size_t points) {
  const auto k = kde_on_grid(samples, points);
  py::dict out;
  out["axes"] = k.axes;
  out["values"] = k.values;
  out["bandwidth"] = k.bandwidth;
  out["normalization"] = k.normalization;
  return out;
}

std::string read_config(const std::string& file) { return load_config(file).raw.dump(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of roughdens";
  m.attr("__version__") = ROUGHDENS_VERSION;

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<ExplosionError>(m, "ExplosionError", PyExc_RuntimeError);

  m.def("read_config", &read_config, py::arg("file"));
  m.def("lift", &lift, py::arg("times"), py::arg("values"));
  m.def("solve", &solve, py::arg("config"), py::arg("times"), py::arg("values"), py::arg("jacobian") = false,
        py::arg("base_dir") = ".");
  m.def("malliavin", &malliavin, py::arg("config"), py::arg("times"), py::arg("values"), py::arg("t"),
        py::arg("method") = "2d-young", py::arg("base_dir") = ".");
  m.def("check", &check, py::arg("config"), py::arg("base_dir") = ".");
  m.def("run", &run, py::arg("config"), py::arg("threads") = 1, py::arg("out_dir") = "", py::arg("base_dir") = ".");
  m.def("sample", &sample, py::arg("config"), py::arg("count") = 1, py::arg("first_index") = 0,
        py::arg("base_dir") = ".");
  m.def("p_variation", &pvar, py::arg("times"), py::arg("values"), py::arg("p"));
  m.def("kde", &kde, py::arg("samples"), py::arg("points") = 0);
}
