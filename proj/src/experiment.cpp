#include "roughdens/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "roughdens/errors.hpp"
#include "roughdens/rde_solver.hpp"
#include "roughdens/rough_lift.hpp"
#include "roughdens/version.hpp"
#include "roughdens/young_variation.hpp"

namespace roughdens {

using nlohmann::json;

namespace {

const json& section(const json& doc, const char* name) {
  static const json empty = json::object();
  if (!doc.contains(name)) return empty;
  const json& s = doc.at(name);
  if (!s.is_object()) throw ConfigError(std::string("config: section '") + name + "' must be an object");
  return s;
}

template <typename T>
T value_or(const json& sec, const char* key, T fallback) {
  if (!sec.contains(key)) return fallback;
  try {
    return sec.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: bad value for '") + key + "': " + e.what());
  }
}

template <typename T>
T required(const json& sec, const char* sec_name, const char* key) {
  if (!sec.contains(key)) {
    throw ConfigError(std::string("config: missing key '") + sec_name + "." + key + "'");
  }
  return value_or<T>(sec, key, T{});
}

Eigen::VectorXd to_vector(const json& j, const char* what) {
  if (!j.is_array()) throw ConfigError(std::string("config: '") + what + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Eigen::MatrixXd to_matrix(const json& j, Eigen::Index e, const char* what) {
  if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != e) {
    throw ConfigError(std::string("config: '") + what + "' entries must be e x e matrices");
  }
  Eigen::MatrixXd m(e, e);
  for (Eigen::Index r = 0; r < e; ++r) {
    const Eigen::VectorXd row = to_vector(j[static_cast<std::size_t>(r)], what);
    if (row.size() != e) throw ConfigError(std::string("config: '") + what + "' row length != e");
    m.row(r) = row.transpose();
  }
  return m;
}

VectorFieldSystem build_system(const json& sys, const std::string& family, Eigen::Index e,
                               const std::filesystem::path& base_dir) {
  if (family == "linear" || family == "constant") {
    const json b = required<json>(sys, "system", "b");
    if (!b.is_array() || b.size() < 2) {
      throw ConfigError("config: system.b needs entries for the drift and each driver component");
    }
    std::vector<Eigen::VectorXd> bs;
    for (const auto& bi : b) {
      bs.push_back(to_vector(bi, "system.b"));
      if (bs.back().size() != e) throw ConfigError("config: system.b entries must have length e");
    }
    std::vector<Eigen::MatrixXd> as(bs.size(), Eigen::MatrixXd::Zero(e, e));
    if (family == "linear" && sys.contains("a")) {
      const json& a = sys.at("a");
      if (!a.is_array() || a.size() != b.size()) {
        throw ConfigError("config: system.a must have one matrix per entry of system.b");
      }
      for (std::size_t i = 0; i < a.size(); ++i) as[i] = to_matrix(a[i], e, "system.a");
    }
    if (family == "constant") return VectorFieldSystem::constant(std::move(bs));
    return VectorFieldSystem::linear(std::move(as), std::move(bs));
  }
  if (family == "affine_rotation") {
    if (e != 2) throw ConfigError("config: affine_rotation requires a two-dimensional y0");
    const json offsets = required<json>(sys, "system", "offsets");
    const json rates = required<json>(sys, "system", "rates");
    if (!offsets.is_array() || !rates.is_array() || offsets.size() != rates.size() ||
        offsets.size() < 2) {
      throw ConfigError("config: affine_rotation needs matching offsets and rates (drift first)");
    }
    std::vector<Eigen::Vector2d> os;
    std::vector<double> rs;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
      const Eigen::VectorXd o = to_vector(offsets[i], "system.offsets");
      if (o.size() != 2) throw ConfigError("config: affine_rotation offsets must have length 2");
      os.emplace_back(o(0), o(1));
      rs.push_back(rates[i].get<double>());
    }
    return VectorFieldSystem::affine_rotation(std::move(os), std::move(rs));
  }
  if (family == "polynomial") {
    const auto d = required<std::size_t>(sys, "system", "driver_dim");
    const double cutoff = value_or<double>(sys, "cutoff", 10.0);
    std::vector<VectorFieldSystem::PolynomialTerm> terms;
    if (sys.contains("terms_file")) {
      const std::filesystem::path file = base_dir / sys.at("terms_file").get<std::string>();
      std::ifstream in(file);
      if (!in) throw ConfigError("config: cannot open polynomial terms file " + file.string());
      terms = parse_polynomial_terms(in, e);
    }
    if (sys.contains("terms")) {
      for (const auto& row : sys.at("terms")) {
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != 3 + e) {
          throw ConfigError("config: polynomial term rows are [field, component, coefficient, "
                            "p_1, ..., p_e]");
        }
        VectorFieldSystem::PolynomialTerm t;
        t.field = row[0].get<std::size_t>();
        t.component = row[1].get<Eigen::Index>();
        t.coefficient = row[2].get<double>();
        for (Eigen::Index m = 0; m < e; ++m) {
          t.powers.push_back(row[static_cast<std::size_t>(3 + m)].get<int>());
        }
        terms.push_back(std::move(t));
      }
    }
    return VectorFieldSystem::polynomial(e, d, std::move(terms), cutoff);
  }
  throw ConfigError("config: unknown system family '" + family +
                    "' (linear, constant, affine_rotation, polynomial)");
}

Kernel build_kernel(const ExperimentConfig& c) {
  if (c.kernel == "bm") return Kernel::brownian(c.scale);
  if (c.kernel == "fbm") return Kernel::fractional(c.hurst, c.scale);
  if (c.kernel == "bridge") return Kernel::bridge(c.pin, c.scale);
  if (c.kernel == "zero") return Kernel::zero();
  throw ConfigError("config: unknown kernel '" + c.kernel + "' (bm, fbm, bridge, zero)");
}

std::vector<double> quantiles(std::vector<double> v, std::initializer_list<double> qs) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::sort(v.begin(), v.end());
  for (double q : qs) {
    const double pos = q * static_cast<double>(v.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, v.size() - 1);
    out.push_back(v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]));
  }
  return out;
}

// Coefficient a of the scalar system dY = a Y dX (no drift), if that is the system.
std::optional<double> scalar_linear_rate(const ExperimentConfig& c) {
  const auto& sys = *c.system;
  if (sys.state_dim() != 1 || sys.driver_dim() != 1 || sys.has_drift()) return std::nullopt;
  if (c.family != "linear") return std::nullopt;
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(1);
  if (sys.field(1, zero)(0) != 0.0) return std::nullopt;
  return sys.jacobian(1, zero)(0, 0);
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

ExperimentConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  ExperimentConfig c;
  c.raw = doc;
  for (const auto& [key, _] : doc.items()) {
    static const std::vector<std::string> known{"model", "system", "run", "output", "thresholds",
                                                "density"};
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError("config: unknown section '" + key + "'");
    }
  }
  const json& model = section(doc, "model");
  c.kernel = value_or<std::string>(model, "kernel", "bm");
  c.hurst = value_or<double>(model, "hurst", 0.5);
  c.horizon = value_or<double>(model, "horizon", 1.0);
  c.pin = value_or<double>(model, "pin", c.horizon);
  c.scale = value_or<double>(model, "scale", 1.0);
  c.grid_size = value_or<std::size_t>(model, "grid_size", 128);
  if (c.grid_size < 8) throw ConfigError("config: model.grid_size must be >= 8");
  if (!(c.horizon > 0.0)) throw ConfigError("config: model.horizon must be positive");

  const json& sys = section(doc, "system");
  c.family = required<std::string>(sys, "system", "family");
  c.y0 = to_vector(required<json>(sys, "system", "y0"), "system.y0");
  if (c.y0.size() == 0) throw ConfigError("config: system.y0 must be non-empty");
  try {
    c.system.emplace(build_system(sys, c.family, c.y0.size(), base_dir));
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  const std::size_t d = c.system->driver_dim();
  if (model.contains("dim") && model.at("dim").get<std::size_t>() != d) {
    throw ConfigError("config: model.dim does not match the number of driving fields");
  }
  try {
    c.model = CovarianceModel::iid(build_kernel(c), d, c.horizon);
  } catch (const InvalidInput& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  c.grid = TimeGrid::uniform(c.horizon, c.grid_size);

  const json& run = section(doc, "run");
  c.times = value_or<std::vector<double>>(run, "times", {0.5 * c.horizon, c.horizon});
  if (c.times.empty()) throw ConfigError("config: run.times must be non-empty");
  std::sort(c.times.begin(), c.times.end());
  for (double t : c.times) {
    if (!(t > 0.0)) throw ConfigError("config: evaluation times must be positive");
    try {
      (void)c.grid.index_of(t);
    } catch (const InvalidInput&) {
      throw ConfigError("config: evaluation time " + std::to_string(t) +
                        " is not a point of the uniform grid");
    }
  }
  c.count = value_or<std::size_t>(run, "count", 1);
  if (c.count < 1) throw ConfigError("config: run.count must be >= 1");
  c.seed = value_or<std::uint64_t>(run, "seed", 0);
  c.expect_degenerate = value_or<bool>(run, "expect_degenerate", false);
  c.p = value_or<double>(run, "p", 2.5);
  if (!(c.p >= 1.0)) throw ConfigError("config: run.p must be >= 1");
  c.oracle_samples = value_or<std::size_t>(run, "oracle_samples", 10);

  const json& out = section(doc, "output");
  c.output_dir = value_or<std::string>(out, "dir", ".");
  c.prefix = value_or<std::string>(out, "prefix", "experiment");

  const json& thr = section(doc, "thresholds");
  c.tau = value_or<double>(thr, "tau", kDegeneracyTau);
  c.oracle_tolerance = value_or<double>(thr, "oracle_rel_tol", 1e-6);

  const json& dens = section(doc, "density");
  c.density_reference = value_or<std::string>(dens, "reference", "none");
  c.density_points = value_or<std::size_t>(dens, "points", 0);
  if (c.density_reference != "none" && c.density_reference != "lognormal") {
    throw ConfigError("config: density.reference must be 'none' or 'lognormal'");
  }
  if (c.density_reference == "lognormal" && !scalar_linear_rate(c)) {
    throw ConfigError("config: the lognormal reference needs the scalar system dY = a Y dX "
                      "(family linear, e = d = 1, no drift, b_1 = 0)");
  }
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config file " + file.string());
  json doc;
  try {
    doc = json::parse(in, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: " + std::string(e.what()));
  }
  return parse_config(doc, file.parent_path());
}

json ConditionReport::to_json() const {
  json j;
  j["ellipticity"] = ellipticity;
  j["singular_values"] = std::vector<double>(singular_values.data(),
                                             singular_values.data() + singular_values.size());
  j["gaussian_nondeg"] = gaussian_nondeg;
  j["lambda_min"] = nondegeneracy.lambda_min;
  j["lambda_threshold"] = nondegeneracy.threshold;
  json rhos = json::array();
  for (const auto& r : rho) {
    rhos.push_back({{"component", r.component},
                    {"kernel", r.kernel},
                    {"analytic_rho", r.analytic_rho},
                    {"estimate_lower_bound", r.estimate},
                    {"warning", r.warning}});
  }
  j["rho"] = rhos;
  j["warnings"] = warnings;
  return j;
}

ConditionReport check_conditions(const ExperimentConfig& config) {
  for (const auto& k : config.model.components) {
    if (k.kind() == Kernel::Kind::fractional && k.hurst() <= 1.0 / 3.0) {
      std::ostringstream os;
      os << "fractional Brownian drivers need H > 1/3 (got H = " << k.hurst() << ")";
      throw ConfigError(os.str());
    }
  }
  ConditionReport rep;
  const Eigen::MatrixXd diffusion = config.system->diffusion_matrix(config.y0);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffusion);
  rep.singular_values = svd.singularValues();
  const double top = rep.singular_values.size() ? rep.singular_values(0) : 0.0;
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < rep.singular_values.size(); ++i) {
    if (top > 0.0 && rep.singular_values(i) > 1e-10 * top) ++rank;
  }
  rep.ellipticity = rank == config.system->state_dim();
  if (!rep.ellipticity) {
    rep.warnings.push_back("vector fields do not span the tangent space at y0 (rank " +
                           std::to_string(rank) + " < " +
                           std::to_string(config.system->state_dim()) + ")");
  }

  rep.nondegeneracy = nondegeneracy_check(config.model, config.times);
  rep.gaussian_nondeg = rep.nondegeneracy.nondegenerate;
  if (!rep.gaussian_nondeg) {
    rep.warnings.push_back("covariance at the evaluation times is singular");
  }

  for (std::size_t k = 0; k < config.model.dim(); ++k) {
    const auto& kern = config.model.components[k];
    RhoReport r;
    r.component = k;
    r.kernel = kern.label();
    r.analytic_rho = kern.analytic_rho().value_or(1.0);
    r.estimate = rho_variation_2d(covariance_grid(kern, config.grid), r.analytic_rho,
                                  RhoMode::diagonal_refinement)
                     .value;
    r.warning = r.analytic_rho >= 1.5;
    if (r.warning) {
      rep.warnings.push_back("component " + std::to_string(k) +
                             ": covariance rho-variation exponent >= 3/2");
    }
    rep.rho.push_back(std::move(r));
  }
  return rep;
}

namespace {

struct SampleOutcome {
  std::vector<SampleRecord> records;
  std::optional<double> oracle_residual;
  std::string error;
};

SampleOutcome process_sample(const ExperimentConfig& c, const GaussianSampler& sampler,
                             const std::vector<GridFunction2D>& covs,
                             const std::vector<CameronMartinBasis>& bases, std::uint64_t index) {
  SampleOutcome out;
  const auto& sys = *c.system;
  const PathSample path = sampler.sample(c.seed, index);
  const RoughPath x = lift_piecewise_linear(path);
  const FlowResult flow = solve_flow_jacobian(x, sys, c.y0);
  const auto diag = log_jacobian_diagnostic(flow, x, c.p);
  const double pvar = std::pow(diag.pvar_p, 1.0 / c.p);
  for (double t : c.times) {
    const auto sigma = malliavin_matrix_2d(flow, sys, covs, t);
    const auto sp = spectrum(sigma, c.tau);
    SampleRecord r;
    r.sample_index = index;
    r.t = t;
    r.y = flow.state(c.grid.index_of(t));
    r.lambda_min = sp.lambda_min;
    r.det = sp.det;
    r.nondegenerate = sp.nondegenerate;
    r.pvar_driver = pvar;
    r.log_norm_j = diag.log_norm_j;
    out.records.push_back(std::move(r));
    if (index < c.oracle_samples) {
      const auto other = malliavin_matrix_parseval(flow, sys, bases, t);
      const double denom = std::max(sigma.sigma.norm(), 1e-300);
      const double res = (sigma.sigma - other.sigma).norm() / denom;
      out.oracle_residual = std::max(out.oracle_residual.value_or(0.0), res);
    }
  }
  return out;
}

json kde_summary(const KdeGrid& k) {
  return {{"bandwidth", std::vector<double>(k.bandwidth.data(), k.bandwidth.data() + k.bandwidth.size())},
          {"normalization", k.normalization},
          {"points_per_axis", k.axes.front().size()}};
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& c, std::size_t threads) {
  ExperimentResult result;
  result.conditions = check_conditions(c);
  if (!result.conditions.gaussian_nondeg && !c.expect_degenerate) {
    throw ConditionFailure("Gaussian driver is degenerate at the evaluation times; set "
                           "run.expect_degenerate = true to run this scenario");
  }
  const GaussianSampler sampler(c.model, c.grid);
  std::vector<GridFunction2D> covs;
  for (const auto& k : c.model.components) covs.push_back(covariance_grid(k, c.grid));
  std::vector<CameronMartinBasis> bases;
  if (c.oracle_samples > 0) bases = cameron_martin_bases(c.model, c.grid);

  std::vector<SampleOutcome> outcomes(c.count);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < c.count; i = next++) {
      try {
        outcomes[i] = process_sample(c, sampler, covs, bases, i);
      } catch (const std::exception& e) {
        outcomes[i].records.clear();
        outcomes[i].error = e.what();
      }
    }
  };
  const std::size_t nthreads = std::max<std::size_t>(1, std::min(threads, c.count));
  if (nthreads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  for (std::size_t i = 0; i < c.count; ++i) {
    auto& o = outcomes[i];
    if (!o.error.empty()) {
      result.aborted.push_back("sample " + std::to_string(i) + ": " + o.error);
      continue;
    }
    if (o.oracle_residual) result.oracle_residuals.push_back(*o.oracle_residual);
    for (auto& r : o.records) result.records.push_back(std::move(r));
  }

  const Eigen::Index e = c.y0.size();
  const auto rate = scalar_linear_rate(c);
  json per_time = json::array();
  for (double t : c.times) {
    DensityReport rep;
    rep.t = t;
    std::vector<const SampleRecord*> rows;
    for (const auto& r : result.records) {
      if (r.t == t) rows.push_back(&r);
    }
    rep.samples = rows.size();
    std::vector<double> lmins;
    std::size_t degenerate = 0;
    Eigen::MatrixXd ys(static_cast<Eigen::Index>(rows.size()), e);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      lmins.push_back(rows[i]->lambda_min);
      if (!rows[i]->nondegenerate) ++degenerate;
      ys.row(static_cast<Eigen::Index>(i)) = rows[i]->y.transpose();
    }
    rep.fraction_degenerate =
        rows.empty() ? 0.0 : static_cast<double>(degenerate) / static_cast<double>(rows.size());
    rep.lambda_min_quantiles = quantiles(lmins, {0.0, 0.05, 0.5, 0.95, 1.0});
    if (e <= 2 && rows.size() >= kKdeMinSamples) {
      rep.kde = kde_on_grid(ys, c.density_points);
    }
    if (rate && c.density_reference == "lognormal" && !rows.empty()) {
      const double sd = std::abs(*rate) * std::sqrt(c.model.components[0](t, t));
      const double y0 = c.y0(0);
      std::vector<double> logs;
      for (const auto* r : rows) logs.push_back(std::log(r->y(0) / y0));
      rep.ks_reference = ks_distance(logs, [sd](double x) { return normal_cdf(x / sd); });
      if (rep.kde) {
        double sup = 0.0;
        const auto& axis = rep.kde->axes[0];
        for (Eigen::Index q = 0; q < axis.size(); ++q) {
          const double y = axis(q);
          double pdf = 0.0;
          if (y / y0 > 0.0) {
            const double z = std::log(y / y0) / sd;
            pdf = std::exp(-0.5 * z * z) / (std::abs(y) * sd * std::sqrt(2.0 * std::numbers::pi));
          }
          sup = std::max(sup, std::abs(rep.kde->values(q, 0) - pdf));
        }
        rep.sup_distance_reference = sup;
      }
    }
    json jt = {{"t", t},
               {"samples", rep.samples},
               {"fraction_degenerate", rep.fraction_degenerate},
               {"lambda_min_quantiles", rep.lambda_min_quantiles}};
    if (rep.kde) jt["kde"] = kde_summary(*rep.kde);
    if (rep.ks_reference) jt["ks_reference"] = *rep.ks_reference;
    if (rep.sup_distance_reference) jt["sup_distance_reference"] = *rep.sup_distance_reference;
    per_time.push_back(jt);
    result.density.push_back(std::move(rep));
  }

  const std::string canonical = c.raw.dump();
  std::ostringstream hash;
  hash << std::hex << std::setw(16) << std::setfill('0') << fnv1a(canonical);
  double worst_oracle = 0.0;
  for (double r : result.oracle_residuals) worst_oracle = std::max(worst_oracle, r);
  result.summary = {
      {"version", ROUGHDENS_VERSION},
      {"config_hash", hash.str()},
      {"seed", c.seed},
      {"config", c.raw},
      {"count", c.count},
      {"tau", c.tau},
      {"conditions", result.conditions.to_json()},
      {"sampler_notes", sampler.factorisation_notes()},
      {"aborted", result.aborted},
      {"times", per_time},
      {"oracle",
       {{"samples", result.oracle_residuals.size()},
        {"max_relative_residual", worst_oracle},
        {"tolerance", c.oracle_tolerance},
        {"passed", worst_oracle <= c.oracle_tolerance}}}};

  if (result.aborted.size() * 100 > c.count) {
    throw ExperimentFailure(std::to_string(result.aborted.size()) + " of " +
                            std::to_string(c.count) + " samples aborted; first: " +
                            result.aborted.front());
  }
  return result;
}

void write_samples_csv(std::ostream& os, const std::vector<SampleRecord>& records,
                       Eigen::Index state_dim) {
  os << "sample_index,t";
  for (Eigen::Index i = 0; i < state_dim; ++i) os << ",y" << i + 1;
  os << ",lambda_min,det,verdict,pvar_driver,log_norm_J\n";
  os << std::setprecision(17);
  for (const auto& r : records) {
    os << r.sample_index << ',' << r.t;
    for (Eigen::Index i = 0; i < state_dim; ++i) os << ',' << r.y(i);
    os << ',' << r.lambda_min << ',' << r.det << ','
       << (r.nondegenerate ? "nondegenerate" : "degenerate") << ',' << r.pvar_driver << ','
       << r.log_norm_j << '\n';
  }
}

void write_artifacts(const ExperimentConfig& c, const ExperimentResult& result,
                     const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  {
    std::ofstream os(dir / (c.prefix + "_samples.csv"));
    write_samples_csv(os, result.records, c.y0.size());
  }
  {
    std::ofstream os(dir / (c.prefix + "_summary.json"));
    os << result.summary.dump(2) << '\n';
  }
  for (std::size_t k = 0; k < result.density.size(); ++k) {
    const auto& rep = result.density[k];
    if (!rep.kde) continue;
    std::ofstream os(dir / (c.prefix + "_kde_" + std::to_string(k) + ".csv"));
    os << std::setprecision(17);
    const auto& kde = *rep.kde;
    if (kde.axes.size() == 1) {
      os << "y1,density\n";
      for (Eigen::Index q = 0; q < kde.axes[0].size(); ++q) {
        os << kde.axes[0](q) << ',' << kde.values(q, 0) << '\n';
      }
    } else {
      os << "y1,y2,density\n";
      for (Eigen::Index a = 0; a < kde.axes[0].size(); ++a) {
        for (Eigen::Index b = 0; b < kde.axes[1].size(); ++b) {
          os << kde.axes[0](a) << ',' << kde.axes[1](b) << ',' << kde.values(a, b) << '\n';
        }
      }
    }
  }
}

}  // namespace roughdens
