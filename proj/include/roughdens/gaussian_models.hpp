#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughdens/time_grid.hpp"

namespace roughdens {

/// Scalar covariance kernel of a centred process started at zero.
class Kernel {
 public:
  enum class Kind { zero, brownian, fractional, bridge };

  static Kernel zero();
  static Kernel brownian(double scale = 1.0);
  /// Throws InvalidInput unless 0 < hurst < 1.
  static Kernel fractional(double hurst, double scale = 1.0);
  /// Brownian bridge pinned at `pin` (> 0).
  static Kernel bridge(double pin, double scale = 1.0);

  double operator()(double s, double t) const;

  Kind kind() const { return kind_; }
  double hurst() const { return hurst_; }
  double pin() const { return pin_; }
  /// Multiplies the covariance by scale^2.
  double scale() const { return scale_; }
  /// Known covariance rho-variation exponent (1 for BM and bridge, 1/(2H) v 1 for fBm).
  std::optional<double> analytic_rho() const;
  std::string label() const;

 private:
  Kernel(Kind kind, double hurst, double pin, double scale)
      : kind_(kind), hurst_(hurst), pin_(pin), scale_(scale) {}

  Kind kind_;
  double hurst_;
  double pin_;
  double scale_;
};

/// d independent components with kernels R^(k) on [0, horizon].
struct CovarianceModel {
  std::vector<Kernel> components;
  double horizon = 1.0;

  CovarianceModel() = default;
  CovarianceModel(std::vector<Kernel> kernels, double horizon);

  std::size_t dim() const { return components.size(); }
  /// Same kernel for each of `dim` components.
  static CovarianceModel iid(const Kernel& k, std::size_t dim, double horizon);
};

double kernel_eval(const CovarianceModel& model, std::size_t component, double s, double t);

/// Kernel sampled on grid x grid (includes the zero row/column at t = 0).
GridFunction2D covariance_grid(const Kernel& k, const TimeGrid& grid);

/// Lower factor L with L L^T = cov. Tries Cholesky, then Cholesky with
/// 1e-12 * trace / n diagonal jitter, then a clamped eigen square root; each
/// fallback is appended to `notes`. Throws NotPsdError when the most negative
/// eigenvalue is below -jitter.
Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& cov, const std::string& label,
                                  std::vector<std::string>& notes);

struct PathSample {
  TimeGrid grid;
  Eigen::MatrixXd values;  ///< n x d, first row zero
  std::uint64_t seed = 0;
  std::uint64_t sample_index = 0;
};

/// Exact joint Gaussian sampler on a fixed grid. Factorises the covariance of
/// each component on grid \ {0} once; samples are a pure function of
/// (seed, sample_index).
class GaussianSampler {
 public:
  GaussianSampler(const CovarianceModel& model, const TimeGrid& grid);

  PathSample sample(std::uint64_t seed, std::uint64_t sample_index) const;

  const TimeGrid& grid() const { return grid_; }
  /// Components that needed diagonal jitter (or an eigen factor) to factorise.
  const std::vector<std::string>& factorisation_notes() const { return notes_; }

 private:
  TimeGrid grid_;
  std::vector<Eigen::MatrixXd> factors_;
  std::vector<std::string> notes_;
};

std::vector<PathSample> sample_paths(const CovarianceModel& model, const TimeGrid& grid,
                                     std::size_t count, std::uint64_t seed,
                                     std::uint64_t first_index = 0);

/// Orthonormal basis of the grid Cameron-Martin space of one scalar kernel.
///
/// With R the covariance on grid \ {0}, the grid Cameron-Martin space is the
/// column space of R with <R a, R b>_H = a^T R b. Basis paths are
/// h_n = sqrt(lambda_n) v_n for eigenpairs above 1e-12 * lambda_max.
struct CameronMartinBasis {
  TimeGrid grid;
  Eigen::MatrixXd paths;        ///< grid.size() x N, row 0 is zero
  Eigen::VectorXd eigenvalues;  ///< kept eigenvalues, descending
  Eigen::MatrixXd eigenvectors; ///< (grid.size()-1) x N

  std::size_t size() const { return static_cast<std::size_t>(paths.cols()); }
  GridFunction1D path(std::size_t n) const;
  /// <h, g>_H for h, g in the span of the basis (pseudo-inverse on the range).
  double inner_product(const Eigen::VectorXd& h, const Eigen::VectorXd& g) const;
};

inline constexpr double kBasisCutoff = 1e-12;

CameronMartinBasis cameron_martin_basis(const Kernel& k, const TimeGrid& grid);
std::vector<CameronMartinBasis> cameron_martin_bases(const CovarianceModel& model,
                                                     const TimeGrid& grid);

struct NondegeneracyReport {
  std::vector<double> lambda_min;  ///< per component
  std::vector<double> threshold;   ///< 1e-10 * trace / n per component
  double lambda_min_overall = 0.0;
  bool nondegenerate = false;
};

/// Smallest eigenvalue of [R(t_i, t_j)] per component; requires
/// 0 < t_1 < ... < t_n <= horizon.
NondegeneracyReport nondegeneracy_check(const CovarianceModel& model,
                                        const std::vector<double>& times);

/// Var[ sum_k int f_k dX^k ] = sum_k int int f_k f_k dR^(k); `f` is n x d.
double variance_of_linear_functional(const CovarianceModel& model, const GridFunction1D& f);

struct EmbeddingCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
  bool rho_exact = false;
};

/// Checks |h|_{rho-var} <= sqrt(<h,h>_H) sqrt(|R|_{rho-var}) on grid partitions.
/// The covariance variation is evaluated exactly (<= 14 points) or as the
/// maximum of the dyadic lower bound and the sum on the partition attaining
/// the left-hand side, so the inequality is exact on the grid.
EmbeddingCheck cm_embedding_check(const Kernel& k, const GridFunction1D& h,
                                  double cm_norm_sq, double rho);

}  // namespace roughdens
