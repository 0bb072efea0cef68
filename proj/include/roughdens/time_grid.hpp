#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace roughdens {

/// Strictly increasing partition 0 = t_0 < ... < t_{n-1} = T.
class TimeGrid {
 public:
  TimeGrid() = default;
  explicit TimeGrid(std::vector<double> points);

  /// `intervals` equal steps on [0, horizon].
  static TimeGrid uniform(double horizon, std::size_t intervals);

  std::size_t size() const { return points_.size(); }
  std::size_t intervals() const { return points_.empty() ? 0 : points_.size() - 1; }
  double operator[](std::size_t i) const { return points_[i]; }
  double horizon() const { return points_.back(); }
  std::span<const double> points() const { return points_; }

  /// Index of a grid point equal to `t` (within 1e-12 relative); throws otherwise.
  std::size_t index_of(double t) const;
  /// Grid restricted to the first `count` points.
  TimeGrid prefix(std::size_t count) const;
  /// Every `stride`-th point, always keeping the last one.
  TimeGrid coarsen(std::size_t stride) const;
  /// Each interval split into `factor` equal pieces.
  TimeGrid refine(std::size_t factor) const;

  friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<double> points_;
};

/// Samples of a (vector-valued) function on a grid; one row per grid point.
struct GridFunction1D {
  TimeGrid grid;
  Eigen::MatrixXd values;

  GridFunction1D() = default;
  GridFunction1D(TimeGrid g, Eigen::MatrixXd v);

  Eigen::Index components() const { return values.cols(); }
};

/// Samples F(s_i, t_j) on a product grid.
struct GridFunction2D {
  TimeGrid grid_s;
  TimeGrid grid_t;
  Eigen::MatrixXd values;

  GridFunction2D() = default;
  GridFunction2D(TimeGrid s, TimeGrid t, Eigen::MatrixXd v);

  /// Rectangle increments: entry (i, j) is the box increment over
  /// [s_i, s_{i+1}] x [t_j, t_{j+1}].
  Eigen::MatrixXd rectangle_increments() const;
};

}  // namespace roughdens
