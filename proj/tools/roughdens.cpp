// roughdens command-line tool: end-to-end experiments and per-stage debugging.
//
// Exit codes: 0 success, 2 configuration or condition-check failure,
// 3 runtime failure.

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "roughdens/density.hpp"
#include "roughdens/errors.hpp"
#include "roughdens/experiment.hpp"
#include "roughdens/malliavin.hpp"
#include "roughdens/rde_solver.hpp"
#include "roughdens/rough_lift.hpp"
#include "roughdens/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace roughdens;

namespace {

constexpr int kExitConditions = 2;
constexpr int kExitRuntime = 3;

struct Table {
  std::vector<std::string> header;
  Eigen::MatrixXd rows;
};

// Numeric CSV with one header line; non-numeric columns are rejected.
Table read_csv(const fs::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file.string());
  Table t;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(file.string() + " is empty");
  {
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) t.header.push_back(cell);
  }
  std::vector<std::vector<double>> data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream ss(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ss, cell, ',');) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        row.push_back(std::numeric_limits<double>::quiet_NaN());
      }
    }
    if (row.size() != t.header.size()) {
      throw std::runtime_error(file.string() + ": ragged row " + std::to_string(data.size() + 2));
    }
    data.push_back(std::move(row));
  }
  t.rows.resize(static_cast<Eigen::Index>(data.size()), static_cast<Eigen::Index>(t.header.size()));
  for (std::size_t r = 0; r < data.size(); ++r)
    for (std::size_t c = 0; c < data[r].size(); ++c)
      t.rows(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = data[r][c];
  return t;
}

// A driver path as written by `sample`: columns t, x1..xd.
PathSample read_path(const fs::path& file) {
  const Table t = read_csv(file);
  if (t.header.empty() || t.header[0] != "t" || t.rows.rows() < 2) {
    throw InvalidInput(file.string() + ": expected a path CSV with columns t,x1,...");
  }
  PathSample p;
  std::vector<double> times(t.rows.col(0).data(), t.rows.col(0).data() + t.rows.rows());
  p.grid = TimeGrid(std::move(times));
  p.values = t.rows.rightCols(t.rows.cols() - 1);
  return p;
}

void write_path(std::ostream& os, const PathSample& p) {
  os << "t";
  for (Eigen::Index k = 0; k < p.values.cols(); ++k) os << ",x" << k + 1;
  os << '\n' << std::setprecision(17);
  for (std::size_t i = 0; i < p.grid.size(); ++i) {
    os << p.grid[i];
    for (Eigen::Index k = 0; k < p.values.cols(); ++k) os << ',' << p.values(static_cast<Eigen::Index>(i), k);
    os << '\n';
  }
}

// Runs `body` with an output stream: the named file, or stdout for "" or "-".
template <typename F>
void with_output(const std::string& target, F&& body) {
  if (target.empty() || target == "-") {
    body(std::cout);
    return;
  }
  const fs::path p(target);
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream os(p);
  if (!os) throw std::runtime_error("cannot write " + target);
  body(os);
}

PathSample driver_for(const ExperimentConfig& c, const std::string& path_file, std::uint64_t index) {
  if (!path_file.empty()) {
    PathSample p = read_path(path_file);
    if (static_cast<std::size_t>(p.values.cols()) != c.model.dim()) {
      throw InvalidInput("path dimension does not match the configured system");
    }
    return p;
  }
  return GaussianSampler(c.model, c.grid).sample(c.seed, index);
}

json to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    std::vector<double> row(static_cast<std::size_t>(m.cols()));
    for (Eigen::Index c = 0; c < m.cols(); ++c) row[static_cast<std::size_t>(c)] = m(r, c);
    rows.push_back(row);
  }
  return rows;
}

fs::path output_dir(const ExperimentConfig& c, const std::string& cli_out) {
  if (!cli_out.empty()) return cli_out;
  if (const char* env = std::getenv("ROUGHDENS_OUTPUT_DIR"); env && *env) return env;
  return c.output_dir;
}

bool hypotheses_hold(const ExperimentConfig& c, const ConditionReport& rep) {
  return c.expect_degenerate || (rep.ellipticity && rep.gaussian_nondeg);
}

int cmd_check(const std::string& config_file) {
  const auto c = load_config(config_file);
  const auto rep = check_conditions(c);
  json out = rep.to_json();
  out["expect_degenerate"] = c.expect_degenerate;
  out["passed"] = hypotheses_hold(c, rep);
  std::cout << out.dump(2) << '\n';
  return hypotheses_hold(c, rep) ? 0 : kExitConditions;
}

int cmd_run(const std::string& config_file, const std::string& out, std::size_t threads) {
  const auto c = load_config(config_file);
  const auto result = run_experiment(c, threads);
  const fs::path dir = output_dir(c, out);
  write_artifacts(c, result, dir);
  for (const auto& w : result.conditions.warnings) std::cerr << "warning: " << w << '\n';
  for (const auto& a : result.aborted) std::cerr << "aborted: " << a << '\n';
  for (const auto& d : result.density) {
    std::cout << "t=" << d.t << " samples=" << d.samples
              << " fraction_degenerate=" << d.fraction_degenerate;
    if (d.kde) std::cout << " kde_normalization=" << d.kde->normalization;
    if (d.ks_reference) std::cout << " ks_reference=" << *d.ks_reference;
    std::cout << '\n';
  }
  const auto& oracle = result.summary.at("oracle");
  std::cout << "oracle max_relative_residual=" << oracle.at("max_relative_residual").get<double>()
            << " (" << oracle.at("samples").get<std::size_t>() << " samples)\n"
            << "artifacts written to " << dir.string() << '\n';
  return 0;
}

int cmd_sample(const std::string& config_file, std::uint64_t index, const std::string& out) {
  const auto c = load_config(config_file);
  const GaussianSampler sampler(c.model, c.grid);
  for (const auto& note : sampler.factorisation_notes()) std::cerr << "note: " << note << '\n';
  const PathSample p = sampler.sample(c.seed, index);
  with_output(out, [&](std::ostream& os) { write_path(os, p); });
  return 0;
}

int cmd_lift(const std::string& path_file, const std::string& out) {
  const RoughPath x = lift_piecewise_linear(read_path(path_file));
  with_output(out, [&](std::ostream& os) { write_rough_path_csv(os, x); });
  return 0;
}

int cmd_solve(const std::string& config_file, const std::string& path_file, std::uint64_t index,
              const std::string& out) {
  const auto c = load_config(config_file);
  const PathSample p = driver_for(c, path_file, index);
  const RoughPath x = lift_piecewise_linear(p);
  const FlowResult flow = solve_flow_jacobian(x, *c.system, c.y0);
  const Eigen::Index e = c.y0.size();
  with_output(out, [&](std::ostream& os) {
    os << "t";
    for (Eigen::Index i = 0; i < e; ++i) os << ",y" << i + 1;
    for (Eigen::Index i = 0; i < e; ++i)
      for (Eigen::Index j = 0; j < e; ++j) os << ",J" << i + 1 << '_' << j + 1;
    os << '\n' << std::setprecision(17);
    for (std::size_t k = 0; k < flow.grid.size(); ++k) {
      os << flow.grid[k];
      for (Eigen::Index i = 0; i < e; ++i) os << ',' << flow.y(static_cast<Eigen::Index>(k), i);
      for (Eigen::Index i = 0; i < e; ++i)
        for (Eigen::Index j = 0; j < e; ++j) os << ',' << flow.jacobian[k](i, j);
      os << '\n';
    }
  });
  const auto diag = log_jacobian_diagnostic(flow, x, c.p);
  std::cerr << "log_norm_J=" << diag.log_norm_j << " pvar^p=" << diag.pvar_p
            << " max_condition=" << flow.max_condition << '\n';
  return 0;
}

int cmd_malliavin(const std::string& config_file, const std::string& path_file, std::uint64_t index,
                  const std::string& method) {
  const auto c = load_config(config_file);
  const PathSample p = driver_for(c, path_file, index);
  const FlowResult flow = solve_flow_jacobian(lift_piecewise_linear(p), *c.system, c.y0);
  json out = json::array();
  std::vector<CameronMartinBasis> bases;
  if (method == "parseval-basis") bases = cameron_martin_bases(c.model, p.grid);
  for (double t : c.times) {
    MalliavinMatrix m;
    if (method == "2d-young") {
      m = malliavin_matrix_2d(flow, *c.system, c.model, t);
    } else if (method == "parseval-basis") {
      m = malliavin_matrix_parseval(flow, *c.system, bases, t);
    } else {
      m = malliavin_matrix_bm_reduction(flow, *c.system, t);
    }
    const Spectrum sp = spectrum(m, c.tau);
    out.push_back({{"t", t},
                   {"method", to_string(m.method)},
                   {"sigma", to_json(m.sigma)},
                   {"eigenvalues", std::vector<double>(sp.eigenvalues.data(),
                                                       sp.eigenvalues.data() + sp.eigenvalues.size())},
                   {"lambda_min", sp.lambda_min},
                   {"det", sp.det},
                   {"threshold", sp.threshold},
                   {"tau", sp.tau},
                   {"asymmetry", m.asymmetry},
                   {"verdict", sp.nondegenerate ? "nondegenerate" : "degenerate"}});
  }
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_density(const std::string& samples_file, double t, std::size_t points, const std::string& out) {
  const Table table = read_csv(samples_file);
  std::vector<Eigen::Index> ycols;
  Eigen::Index tcol = -1;
  for (std::size_t i = 0; i < table.header.size(); ++i) {
    const auto& h = table.header[i];
    if (h == "t") tcol = static_cast<Eigen::Index>(i);
    if (h.size() > 1 && h[0] == 'y' && h.find_first_not_of("0123456789", 1) == std::string::npos) {
      ycols.push_back(static_cast<Eigen::Index>(i));
    }
  }
  if (tcol < 0 || ycols.empty()) throw InvalidInput("density: expected a samples CSV from `run`");
  std::vector<Eigen::Index> rows;
  for (Eigen::Index r = 0; r < table.rows.rows(); ++r) {
    if (std::abs(table.rows(r, tcol) - t) <= 1e-12 * std::max(1.0, std::abs(t))) rows.push_back(r);
  }
  if (rows.empty()) throw InvalidInput("density: no samples recorded at t = " + std::to_string(t));
  Eigen::MatrixXd ys(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(ycols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < ycols.size(); ++c)
      ys(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = table.rows(rows[r], ycols[c]);
  const KdeGrid kde = kde_on_grid(ys, points);
  with_output(out, [&](std::ostream& os) {
    os << std::setprecision(17);
    if (kde.axes.size() == 1) {
      os << "y1,density\n";
      for (Eigen::Index q = 0; q < kde.axes[0].size(); ++q) os << kde.axes[0](q) << ',' << kde.values(q, 0) << '\n';
    } else {
      os << "y1,y2,density\n";
      for (Eigen::Index a = 0; a < kde.axes[0].size(); ++a)
        for (Eigen::Index b = 0; b < kde.axes[1].size(); ++b)
          os << kde.axes[0](a) << ',' << kde.axes[1](b) << ',' << kde.values(a, b) << '\n';
    }
  });
  std::cerr << "samples=" << rows.size() << " normalization=" << kde.normalization << " bandwidth=";
  for (Eigen::Index c = 0; c < kde.bandwidth.size(); ++c) std::cerr << (c ? "," : "") << kde.bandwidth(c);
  std::cerr << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Densities of rough differential equations driven by Gaussian signals"};
  app.set_version_flag("--version", std::string(ROUGHDENS_VERSION));
  app.require_subcommand(1);

  std::string config, out, path, samples, method = "2d-young";
  std::size_t threads = 1, points = 0;
  std::uint64_t index = 0;
  double t = 1.0;

  auto* run = app.add_subcommand("run", "Monte Carlo experiment: samples CSV, summary JSON, KDE grids");
  run->add_option("--config", config, "experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "output directory (overrides ROUGHDENS_OUTPUT_DIR and output.dir)");
  run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "check ellipticity, Gaussian non-degeneracy and rho-variation");
  check->add_option("--config", config)->required()->check(CLI::ExistingFile);

  auto* sample = app.add_subcommand("sample", "draw one driver path (CSV t,x1..xd)");
  sample->add_option("--config", config)->required()->check(CLI::ExistingFile);
  sample->add_option("--index", index, "sample index");
  sample->add_option("--out", out, "output file (default stdout)");

  auto* lift = app.add_subcommand("lift", "step-2 lift of a path CSV");
  lift->add_option("--path", path, "path CSV from `sample`")->required()->check(CLI::ExistingFile);
  lift->add_option("--out", out, "output file (default stdout)");

  auto* solve = app.add_subcommand("solve", "solution and Jacobian flow along one driver");
  solve->add_option("--config", config)->required()->check(CLI::ExistingFile);
  solve->add_option("--path", path, "driver path CSV (default: sample --index)")->check(CLI::ExistingFile);
  solve->add_option("--index", index, "sample index when no path is given");
  solve->add_option("--out", out, "output file (default stdout)");

  auto* mall = app.add_subcommand("malliavin", "Malliavin matrix and spectrum at the configured times");
  mall->add_option("--config", config)->required()->check(CLI::ExistingFile);
  mall->add_option("--path", path, "driver path CSV (default: sample --index)")->check(CLI::ExistingFile);
  mall->add_option("--index", index, "sample index when no path is given");
  mall->add_option("--method", method)->check(CLI::IsMember({"2d-young", "parseval-basis", "bm-reduction"}));

  auto* dens = app.add_subcommand("density", "KDE of the samples recorded at one time");
  dens->add_option("--samples", samples, "samples CSV from `run`")->required()->check(CLI::ExistingFile);
  dens->add_option("--t", t, "evaluation time")->required();
  dens->add_option("--points", points, "grid points per axis (default automatic)");
  dens->add_option("--out", out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConditions;
  }

  try {
    if (*run) return cmd_run(config, out, threads);
    if (*check) return cmd_check(config);
    if (*sample) return cmd_sample(config, index, out);
    if (*lift) return cmd_lift(path, out);
    if (*solve) return cmd_solve(config, path, index, out);
    if (*mall) return cmd_malliavin(config, path, index, method);
    if (*dens) return cmd_density(samples, t, points, out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConditions;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitRuntime;
}
