#include "roughdens/rough_lift.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

#include "roughdens/errors.hpp"

namespace roughdens {

RoughPath::RoughPath(TimeGrid grid, std::vector<G2Element> increments)
    : grid_(std::move(grid)), increments_(std::move(increments)) {
  if (increments_.size() != grid_.intervals()) {
    throw InvalidInput("RoughPath: need one increment per grid interval");
  }
  dim_ = increments_.front().dim();
  elements_.reserve(grid_.size());
  elements_.push_back(G2Element::identity(dim_));
  for (const auto& inc : increments_) {
    if (inc.dim() != dim_) throw InvalidInput("RoughPath: increments of mixed dimension");
    elements_.push_back(g2_product(elements_.back(), inc));
  }
}

Eigen::MatrixXd RoughPath::trace() const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(elements_.size()), dim_);
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = elements_[i].level1.transpose();
  }
  return out;
}

double RoughPath::max_symmetric_residual() const {
  double worst = 0.0;
  for (const auto& inc : increments_) worst = std::max(worst, symmetric_residual(inc));
  return worst;
}

RoughPath lift_piecewise_linear(const TimeGrid& grid, const Eigen::MatrixXd& values) {
  if (static_cast<std::size_t>(values.rows()) != grid.size()) {
    throw InvalidInput("lift_piecewise_linear: values rows must equal grid size");
  }
  std::vector<G2Element> incs;
  incs.reserve(grid.intervals());
  for (Eigen::Index i = 0; i + 1 < values.rows(); ++i) {
    incs.push_back(G2Element::segment((values.row(i + 1) - values.row(i)).transpose()));
  }
  return {grid, std::move(incs)};
}

RoughPath lift_piecewise_linear(const PathSample& path) {
  return lift_piecewise_linear(path.grid, path.values);
}

RoughPath translate(const RoughPath& x, const GridFunction1D& h) {
  if (!(h.grid == x.grid())) throw InvalidInput("translate: grid mismatch");
  if (h.components() != x.dim()) throw InvalidInput("translate: dimension mismatch");
  std::vector<G2Element> incs;
  incs.reserve(x.increments().size());
  for (std::size_t i = 0; i < x.increments().size(); ++i) {
    const auto& inc = x.increments()[i];
    const auto r = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd dh = (h.values.row(r + 1) - h.values.row(r)).transpose();
    const Eigen::VectorXd& dx = inc.level1;
    // int x~ (x) dh + int h~ (x) dx + int h~ (x) dh for linear segments.
    Eigen::MatrixXd b = inc.level2 + 0.5 * (dx * dh.transpose() + dh * dx.transpose()) +
                        0.5 * dh * dh.transpose();
    incs.emplace_back(dx + dh, std::move(b));
  }
  return {x.grid(), std::move(incs)};
}

RoughPath spacetime_lift(const RoughPath& x) {
  const Eigen::Index d = x.dim();
  std::vector<G2Element> incs;
  incs.reserve(x.increments().size());
  for (std::size_t i = 0; i < x.increments().size(); ++i) {
    const auto& inc = x.increments()[i];
    const double dt = x.grid()[i + 1] - x.grid()[i];
    Eigen::VectorXd a(d + 1);
    a(0) = dt;
    a.tail(d) = inc.level1;
    Eigen::MatrixXd b(d + 1, d + 1);
    b(0, 0) = 0.5 * dt * dt;
    b.block(0, 1, 1, d) = 0.5 * dt * inc.level1.transpose();  // int (t - t_i) dx
    b.block(1, 0, d, 1) = 0.5 * dt * inc.level1;              // int (x - x_i) dt
    b.bottomRightCorner(d, d) = inc.level2;
    incs.emplace_back(std::move(a), std::move(b));
  }
  return {x.grid(), std::move(incs)};
}

void write_rough_path_csv(std::ostream& os, const RoughPath& x) {
  const Eigen::Index d = x.dim();
  os << "t";
  for (Eigen::Index i = 0; i < d; ++i) os << ",x" << i + 1;
  for (Eigen::Index i = 0; i < d; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) os << ",x" << i + 1 << '_' << j + 1;
  }
  os << '\n' << std::setprecision(17);
  for (std::size_t k = 0; k < x.elements().size(); ++k) {
    const auto& g = x.elements()[k];
    os << x.grid()[k];
    for (Eigen::Index i = 0; i < d; ++i) os << ',' << g.level1(i);
    for (Eigen::Index i = 0; i < d; ++i) {
      for (Eigen::Index j = 0; j < d; ++j) os << ',' << g.level2(i, j);
    }
    os << '\n';
  }
}

}  // namespace roughdens
