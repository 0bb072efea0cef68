#pragma once

#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace roughdens {

/// Per-coordinate Silverman bandwidth for an N x e sample matrix (e in {1, 2}).
Eigen::VectorXd silverman_bandwidth(const Eigen::MatrixXd& samples);

/// Gaussian product-kernel density at each row of `query` (Q x e).
Eigen::VectorXd kde_density(const Eigen::MatrixXd& samples, const Eigen::VectorXd& bandwidth,
                            const Eigen::MatrixXd& query);

struct KdeGrid {
  std::vector<Eigen::VectorXd> axes;  ///< one axis per coordinate
  Eigen::MatrixXd values;             ///< 1D: Q x 1; 2D: Qx x Qy
  Eigen::VectorXd bandwidth;
  double normalization = 0.0;         ///< trapezoidal integral over the grid
};

/// KDE on an automatically sized tensor grid covering the samples +- 6 bandwidths.
/// Requires e in {1, 2} and at least 100 samples.
KdeGrid kde_on_grid(const Eigen::MatrixXd& samples, std::size_t points_per_axis = 0);

inline constexpr std::size_t kKdeMinSamples = 100;

double normal_cdf(double x);

/// sup_x |F_N(x) - F(x)| for the empirical distribution of `samples`.
double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf);

/// sup over `query` of |KDE cdf - F| for a one-dimensional KDE.
double ks_distance_kde(std::span<const double> samples, double bandwidth,
                       std::span<const double> query, const std::function<double(double)>& cdf);

}  // namespace roughdens
