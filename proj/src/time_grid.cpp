#include "roughdens/time_grid.hpp"

#include <cmath>
#include <sstream>

#include "roughdens/errors.hpp"

namespace roughdens {

TimeGrid::TimeGrid(std::vector<double> points) : points_(std::move(points)) {
  if (points_.size() < 2) throw InvalidInput("TimeGrid: need at least 2 points");
  if (points_.front() != 0.0) throw InvalidInput("TimeGrid: first point must be 0");
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i] > points_[i - 1]) || !std::isfinite(points_[i])) {
      std::ostringstream os;
      os << "TimeGrid: points must be strictly increasing (index " << i << ")";
      throw InvalidInput(os.str());
    }
  }
}

TimeGrid TimeGrid::uniform(double horizon, std::size_t intervals) {
  if (intervals == 0 || !(horizon > 0.0)) {
    throw InvalidInput("TimeGrid::uniform: need horizon > 0 and at least one interval");
  }
  std::vector<double> pts(intervals + 1);
  for (std::size_t i = 0; i <= intervals; ++i) {
    pts[i] = horizon * static_cast<double>(i) / static_cast<double>(intervals);
  }
  pts.back() = horizon;
  return TimeGrid(std::move(pts));
}

std::size_t TimeGrid::index_of(double t) const {
  const double tol = 1e-12 * std::max(1.0, horizon());
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (std::abs(points_[i] - t) <= tol) return i;
  }
  std::ostringstream os;
  os << "time " << t << " is not a grid point";
  throw InvalidInput(os.str());
}

TimeGrid TimeGrid::prefix(std::size_t count) const {
  if (count < 2 || count > points_.size()) throw InvalidInput("TimeGrid::prefix: bad count");
  return TimeGrid(std::vector<double>(points_.begin(), points_.begin() + count));
}

TimeGrid TimeGrid::coarsen(std::size_t stride) const {
  if (stride == 0) throw InvalidInput("TimeGrid::coarsen: stride must be positive");
  std::vector<double> pts;
  for (std::size_t i = 0; i < points_.size(); i += stride) pts.push_back(points_[i]);
  if (pts.back() != points_.back()) pts.push_back(points_.back());
  return TimeGrid(std::move(pts));
}

TimeGrid TimeGrid::refine(std::size_t factor) const {
  if (factor == 0) throw InvalidInput("TimeGrid::refine: factor must be positive");
  std::vector<double> pts;
  pts.reserve(intervals() * factor + 1);
  for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
    const double a = points_[i];
    const double b = points_[i + 1];
    for (std::size_t k = 0; k < factor; ++k) {
      pts.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(factor));
    }
  }
  pts.push_back(points_.back());
  return TimeGrid(std::move(pts));
}

GridFunction1D::GridFunction1D(TimeGrid g, Eigen::MatrixXd v)
    : grid(std::move(g)), values(std::move(v)) {
  if (static_cast<std::size_t>(values.rows()) != grid.size()) {
    throw InvalidInput("GridFunction1D: values rows must equal grid size");
  }
}

GridFunction2D::GridFunction2D(TimeGrid s, TimeGrid t, Eigen::MatrixXd v)
    : grid_s(std::move(s)), grid_t(std::move(t)), values(std::move(v)) {
  if (static_cast<std::size_t>(values.rows()) != grid_s.size() ||
      static_cast<std::size_t>(values.cols()) != grid_t.size()) {
    throw InvalidInput("GridFunction2D: values shape must match the grids");
  }
}

Eigen::MatrixXd GridFunction2D::rectangle_increments() const {
  const Eigen::Index n = values.rows() - 1;
  const Eigen::Index m = values.cols() - 1;
  return values.bottomRightCorner(n, m) - values.topRightCorner(n, m) -
         values.bottomLeftCorner(n, m) + values.topLeftCorner(n, m);
}

}  // namespace roughdens
