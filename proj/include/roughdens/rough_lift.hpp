#pragma once

#include <iosfwd>
#include <vector>

#include "roughdens/gaussian_models.hpp"
#include "roughdens/nilpotent_group.hpp"
#include "roughdens/time_grid.hpp"

namespace roughdens {

/// G2-valued path on a grid: elements[i] is the lift over [t_0, t_i]
/// (elements[0] is the identity); increments[i] is the lift over
/// [t_i, t_{i+1}]. Both are kept so solvers never difference large elements.
class RoughPath {
 public:
  RoughPath() = default;
  /// Chains the per-interval increments with Chen's relation.
  RoughPath(TimeGrid grid, std::vector<G2Element> increments);

  const TimeGrid& grid() const { return grid_; }
  Eigen::Index dim() const { return dim_; }
  const std::vector<G2Element>& elements() const { return elements_; }
  const std::vector<G2Element>& increments() const { return increments_; }
  const G2Element& endpoint() const { return elements_.back(); }

  /// First level of the lift: the underlying path x_t - x_0, one row per point.
  Eigen::MatrixXd trace() const;

  /// Largest symmetric-part residual over the increments.
  double max_symmetric_residual() const;

 private:
  TimeGrid grid_;
  Eigen::Index dim_ = 0;
  std::vector<G2Element> increments_;
  std::vector<G2Element> elements_;
};

/// Piecewise-linear lift: each segment contributes (dx, dx dx^T / 2).
RoughPath lift_piecewise_linear(const TimeGrid& grid, const Eigen::MatrixXd& values);
RoughPath lift_piecewise_linear(const PathSample& path);

/// T_h X for h given on the grid of X (n x d). Segment cross integrals use the
/// closed forms for linear interpolation, so translate(lift(x), h) = lift(x + h).
RoughPath translate(const RoughPath& x, const GridFunction1D& h);

/// (t, X) with the time coordinate first; the cross integrals with time are
/// those of linear interpolation within each interval.
RoughPath spacetime_lift(const RoughPath& x);

/// CSV with header t, x1..xd, x1_1, x1_2, ..., xd_d (level 2 row-major).
void write_rough_path_csv(std::ostream& os, const RoughPath& x);

}  // namespace roughdens
