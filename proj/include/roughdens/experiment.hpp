#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "roughdens/density.hpp"
#include "roughdens/errors.hpp"
#include "roughdens/gaussian_models.hpp"
#include "roughdens/malliavin.hpp"
#include "roughdens/vector_fields.hpp"

namespace roughdens {

/// Parsed experiment configuration (JSON, sections with one level of keys;
/// see docs/config.md).
struct ExperimentConfig {
  nlohmann::json raw;  ///< the document as read, echoed into the summary

  std::string kernel = "bm";
  double hurst = 0.5;
  double pin = 1.0;
  double scale = 1.0;
  double horizon = 1.0;
  std::size_t grid_size = 128;  ///< number of intervals

  std::string family;
  Eigen::VectorXd y0;

  std::vector<double> times;
  std::size_t count = 1;
  std::uint64_t seed = 0;
  bool expect_degenerate = false;
  double p = 2.5;
  std::size_t oracle_samples = 10;

  std::filesystem::path output_dir = ".";
  std::string prefix = "experiment";

  double tau = kDegeneracyTau;
  double oracle_tolerance = 1e-6;

  std::string density_reference = "none";  ///< none | lognormal
  std::size_t density_points = 0;

  CovarianceModel model;
  std::optional<VectorFieldSystem> system;
  TimeGrid grid;
};

/// Validates and resolves names; throws ConfigError. `base_dir` resolves
/// relative file references (polynomial terms files).
ExperimentConfig parse_config(const nlohmann::json& doc,
                              const std::filesystem::path& base_dir = ".");
ExperimentConfig load_config(const std::filesystem::path& file);

struct RhoReport {
  std::size_t component = 0;
  std::string kernel;
  double analytic_rho = 1.0;
  double estimate = 0.0;  ///< diagonal-refinement lower bound on the model grid
  bool warning = false;   ///< analytic rho >= 3/2
};

struct ConditionReport {
  bool ellipticity = false;
  Eigen::VectorXd singular_values;
  bool gaussian_nondeg = false;
  NondegeneracyReport nondegeneracy;
  std::vector<RhoReport> rho;
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Ellipticity of [V_1(y0) ... V_d(y0)], Gaussian non-degeneracy at the
/// evaluation times and the covariance rho-variation. fBm with H <= 1/3 is
/// rejected with ConfigError.
ConditionReport check_conditions(const ExperimentConfig& config);

struct SampleRecord {
  std::uint64_t sample_index = 0;
  double t = 0.0;
  Eigen::VectorXd y;
  double lambda_min = 0.0;
  double det = 0.0;
  bool nondegenerate = false;
  double pvar_driver = 0.0;
  double log_norm_j = 0.0;
};

struct DensityReport {
  double t = 0.0;
  std::size_t samples = 0;
  std::optional<KdeGrid> kde;       ///< for e in {1, 2} and >= 100 samples
  std::optional<double> ks_reference;
  std::optional<double> sup_distance_reference;
  double fraction_degenerate = 0.0;
  std::vector<double> lambda_min_quantiles;  ///< at 0, 0.05, 0.5, 0.95, 1
};

struct ExperimentResult {
  std::vector<SampleRecord> records;  ///< ordered by (sample_index, t)
  std::vector<DensityReport> density; ///< one per evaluation time
  std::vector<double> oracle_residuals;
  std::vector<std::string> aborted;
  ConditionReport conditions;
  nlohmann::json summary;
};

/// Thrown when a run cannot start because a hypothesis fails.
class ConditionFailure : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

/// Thrown when more than 1% of the samples abort.
class ExperimentFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Sample -> lift -> flow -> sigma -> spectrum for every sample, with the
/// Parseval cross-check on the first `oracle_samples`. Deterministic in the
/// seed for any thread count.
ExperimentResult run_experiment(const ExperimentConfig& config, std::size_t threads = 1);

/// Writes <prefix>_samples.csv and <prefix>_summary.json (and the KDE grids).
void write_artifacts(const ExperimentConfig& config, const ExperimentResult& result,
                     const std::filesystem::path& dir);

void write_samples_csv(std::ostream& os, const std::vector<SampleRecord>& records,
                       Eigen::Index state_dim);

/// 64-bit FNV-1a, used for the config hash embedded in outputs.
std::uint64_t fnv1a(const std::string& bytes);

}  // namespace roughdens
