#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "roughdens/nilpotent_group.hpp"
#include "roughdens/time_grid.hpp"

namespace roughdens {

/// Left-point Riemann-Stieltjes sum  sum_i f(t_i) (g(t_{i+1}) - g(t_i))^T.
/// Result is (f.components() x g.components()).
Eigen::MatrixXd young_integral_1d(const GridFunction1D& f, const GridFunction1D& g);
double young_integral_1d_scalar(const GridFunction1D& f, const GridFunction1D& g);

/// sum_{i,j} f(s_i) g(t_j)^T boxR_{ij}; (f.components() x g.components()).
Eigen::MatrixXd young_integral_2d(const GridFunction1D& f, const GridFunction1D& g,
                                  const GridFunction2D& r);
double young_integral_2d_scalar(const GridFunction1D& f, const GridFunction1D& g,
                                const GridFunction2D& r);

struct PVariation {
  double value = 0.0;
  /// Grid indices of the maximising sub-partition (always contains 0 and n-1).
  std::vector<std::size_t> partition;
};

/// Exact sup over sub-partitions of {0..n-1} of sum dist(t_i, t_{i+1})^p, by
/// dynamic programming; returns the p-th root.
PVariation p_variation_dp(std::size_t n,
                          const std::function<double(std::size_t, std::size_t)>& dist,
                          double p);

/// Euclidean increments of a (vector-valued) grid function.
PVariation p_variation(const GridFunction1D& path, double p);
/// Homogeneous-norm increments of a G2-valued path.
PVariation p_variation(std::span<const G2Element> path, double p);

enum class RhoMode { exact, diagonal_refinement };

inline constexpr std::size_t kRhoExactMaxPoints = 14;

struct RhoVariation {
  double value = 0.0;  ///< (sum |box R|^rho)^{1/rho}
  /// True when the value only bounds the supremum from below.
  bool lower_bound = false;
  std::vector<std::size_t> partition;
};

/// sum_{i,j} |boxR over [t_{k_i}, t_{k_{i+1}}] x [t_{k_j}, t_{k_{j+1}}]|^rho for
/// the sub-partition given by grid indices `partition`.
double rho_partition_sum(const GridFunction2D& r, std::span<const std::size_t> partition,
                         double rho);

/// 2D rho-variation of a covariance on a square grid using one partition for
/// both axes. Exact mode enumerates all sub-partitions (<= 14 points);
/// diagonal_refinement takes the maximum over the full grid and its dyadic
/// coarsenings and is flagged as a lower bound.
RhoVariation rho_variation_2d(const GridFunction2D& r, double rho, RhoMode mode);

}  // namespace roughdens
