#include "roughdens/rde_solver.hpp"

#include <cmath>
#include <sstream>

#include "roughdens/errors.hpp"
#include "roughdens/young_variation.hpp"

namespace roughdens {

Eigen::MatrixXd FlowResult::jacobian_between(std::size_t t_index, std::size_t s_index) const {
  if (!has_jacobian()) throw InvalidInput("FlowResult: Jacobian flow was not computed");
  if (s_index > t_index || t_index >= jacobian.size()) {
    throw InvalidInput("FlowResult::jacobian_between: need s <= t on the grid");
  }
  return jacobian[t_index] * jacobian_inv[s_index];
}

namespace {

void guard_state(const Eigen::VectorXd& y, double t) {
  if (!y.allFinite() || y.norm() > kExplosionBound) {
    std::ostringstream os;
    os << "solution exploded at t = " << t << " (|y| = " << y.norm() << ")";
    throw ExplosionError(os.str(), t);
  }
}

void check_dims(const VectorFieldSystem& vf, Eigen::Index driver_dim, const Eigen::VectorXd& y0) {
  if (static_cast<std::size_t>(driver_dim) != vf.driver_dim()) {
    throw InvalidInput("driver dimension does not match the vector field system");
  }
  if (y0.size() != vf.state_dim()) throw InvalidInput("initial state has the wrong dimension");
}

void check_geometric(const RoughPath& x) {
  for (std::size_t i = 0; i < x.increments().size(); ++i) {
    const auto& inc = x.increments()[i];
    const double scale = std::max(1.0, inc.level1.squaredNorm());
    const double res = symmetric_residual(inc);
    if (res > kGeometricTolerance * scale) {
      std::ostringstream os;
      os << "driver is not geometric on interval " << i << " (symmetric residual " << res << ")";
      throw GeometricityError(os.str(), res);
    }
  }
}

void record_inverse(FlowResult& out, const Eigen::MatrixXd& j) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(j);
  const auto& sv = svd.singularValues();
  const double cond = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1)
                                              : std::numeric_limits<double>::infinity();
  out.max_condition = std::max(out.max_condition, cond);
  if (cond > kIllConditioned) out.ill_conditioned = true;
  out.jacobian.push_back(j);
  out.jacobian_inv.push_back(j.partialPivLu().inverse());
}

FlowResult step2_scheme(const RoughPath& x_in, const VectorFieldSystem& vf,
                        const Eigen::VectorXd& y0, bool with_jacobian) {
  check_dims(vf, x_in.dim(), y0);
  check_geometric(x_in);
  const bool drift = vf.has_drift();
  const RoughPath x = drift ? spacetime_lift(x_in) : x_in;
  // Driver coordinate c drives field index c (with drift) or c + 1 (without).
  const std::size_t offset = drift ? 0 : 1;
  const auto coords = static_cast<std::size_t>(x.dim());
  const Eigen::Index e = vf.state_dim();

  FlowResult out;
  out.grid = x.grid();
  out.y.resize(static_cast<Eigen::Index>(x.grid().size()), e);
  out.y.row(0) = y0.transpose();
  Eigen::VectorXd y = y0;
  Eigen::MatrixXd j = Eigen::MatrixXd::Identity(e, e);
  if (with_jacobian) record_inverse(out, j);

  std::vector<Eigen::VectorXd> v(coords);
  std::vector<Eigen::MatrixXd> dv(coords);
  for (std::size_t step = 0; step < x.increments().size(); ++step) {
    const auto& inc = x.increments()[step];
    for (std::size_t c = 0; c < coords; ++c) {
      v[c] = vf.field(c + offset, y);
      dv[c] = vf.jacobian(c + offset, y);
    }
    Eigen::VectorXd dy = Eigen::VectorXd::Zero(e);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(e, e);
    for (std::size_t c = 0; c < coords; ++c) {
      const auto ci = static_cast<Eigen::Index>(c);
      // w_c = sum_{c'} b(c', c) V_{c'}(y)
      Eigen::VectorXd w = Eigen::VectorXd::Zero(e);
      for (std::size_t c2 = 0; c2 < coords; ++c2) {
        w += inc.level2(static_cast<Eigen::Index>(c2), ci) * v[c2];
      }
      dy += inc.level1(ci) * v[c] + dv[c] * w;
      if (with_jacobian) {
        Eigen::MatrixXd k = Eigen::MatrixXd::Zero(e, e);
        for (std::size_t c2 = 0; c2 < coords; ++c2) {
          k += inc.level2(static_cast<Eigen::Index>(c2), ci) * dv[c2];
        }
        m += inc.level1(ci) * dv[c] + vf.second(c + offset, y, w) + dv[c] * k;
      }
    }
    y += dy;
    guard_state(y, x.grid()[step + 1]);
    out.y.row(static_cast<Eigen::Index>(step + 1)) = y.transpose();
    if (with_jacobian) {
      j += m * j;
      if (!j.allFinite()) {
        throw ExplosionError("Jacobian flow became non-finite", x.grid()[step + 1]);
      }
      record_inverse(out, j);
    }
  }
  return out;
}

}  // namespace

FlowResult solve_rde(const RoughPath& x, const VectorFieldSystem& vf, const Eigen::VectorXd& y0) {
  return step2_scheme(x, vf, y0, false);
}

FlowResult solve_flow_jacobian(const RoughPath& x, const VectorFieldSystem& vf,
                               const Eigen::VectorXd& y0) {
  return step2_scheme(x, vf, y0, true);
}

FlowResult solve_ode_reference(const TimeGrid& grid, const Eigen::MatrixXd& driver,
                               const VectorFieldSystem& vf, const Eigen::VectorXd& y0,
                               std::size_t substeps) {
  if (substeps == 0) throw InvalidInput("solve_ode_reference: substeps must be >= 1");
  if (static_cast<std::size_t>(driver.rows()) != grid.size()) {
    throw InvalidInput("solve_ode_reference: driver rows must equal grid size");
  }
  check_dims(vf, driver.cols(), y0);
  const Eigen::Index e = vf.state_dim();
  const std::size_t d = vf.driver_dim();
  const bool drift = vf.has_drift();

  struct State {
    Eigen::VectorXd y;
    Eigen::MatrixXd j;
  };
  auto rhs = [&](const State& s, const Eigen::VectorXd& velocity) {
    State ds{Eigen::VectorXd::Zero(e), Eigen::MatrixXd::Zero(e, e)};
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(e, e);
    if (drift) {
      ds.y += vf.field(0, s.y);
      m += vf.jacobian(0, s.y);
    }
    for (std::size_t k = 1; k <= d; ++k) {
      const double vk = velocity(static_cast<Eigen::Index>(k - 1));
      ds.y += vk * vf.field(k, s.y);
      m += vk * vf.jacobian(k, s.y);
    }
    ds.j = m * s.j;
    return ds;
  };
  auto axpy = [](const State& s, double h, const State& k) {
    return State{s.y + h * k.y, s.j + h * k.j};
  };

  FlowResult out;
  out.grid = grid;
  out.y.resize(static_cast<Eigen::Index>(grid.size()), e);
  out.y.row(0) = y0.transpose();
  State s{y0, Eigen::MatrixXd::Identity(e, e)};
  record_inverse(out, s.j);
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    const double dt = grid[i + 1] - grid[i];
    const auto r = static_cast<Eigen::Index>(i);
    const Eigen::VectorXd velocity = (driver.row(r + 1) - driver.row(r)).transpose() / dt;
    const double h = dt / static_cast<double>(substeps);
    for (std::size_t k = 0; k < substeps; ++k) {
      const State k1 = rhs(s, velocity);
      const State k2 = rhs(axpy(s, 0.5 * h, k1), velocity);
      const State k3 = rhs(axpy(s, 0.5 * h, k2), velocity);
      const State k4 = rhs(axpy(s, h, k3), velocity);
      s.y += (h / 6.0) * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y);
      s.j += (h / 6.0) * (k1.j + 2.0 * k2.j + 2.0 * k3.j + k4.j);
      guard_state(s.y, grid[i] + static_cast<double>(k + 1) * h);
    }
    out.y.row(r + 1) = s.y.transpose();
    record_inverse(out, s.j);
  }
  return out;
}

FlowResult solve_ode_reference(const PathSample& driver, const VectorFieldSystem& vf,
                               const Eigen::VectorXd& y0, std::size_t substeps) {
  return solve_ode_reference(driver.grid, driver.values, vf, y0, substeps);
}

std::vector<GridFunction1D> duhamel_integrands(const FlowResult& flow, const VectorFieldSystem& vf,
                                               std::size_t t_index) {
  if (!flow.has_jacobian()) throw InvalidInput("duhamel_integrands: flow has no Jacobian");
  if (t_index == 0 || t_index >= flow.grid.size()) {
    throw InvalidInput("duhamel_integrands: evaluation index must be in (0, n)");
  }
  const Eigen::Index e = vf.state_dim();
  const auto rows = static_cast<Eigen::Index>(t_index + 1);
  const TimeGrid sub = flow.grid.prefix(t_index + 1);
  std::vector<Eigen::MatrixXd> z(vf.driver_dim(), Eigen::MatrixXd(rows, e));
  const Eigen::MatrixXd& jt = flow.jacobian[t_index];
  for (std::size_t i = 0; i <= t_index; ++i) {
    const Eigen::MatrixXd jts = jt * flow.jacobian_inv[i];
    const Eigen::VectorXd yi = flow.state(i);
    for (std::size_t k = 1; k <= vf.driver_dim(); ++k) {
      z[k - 1].row(static_cast<Eigen::Index>(i)) = (jts * vf.field(k, yi)).transpose();
    }
  }
  std::vector<GridFunction1D> out;
  out.reserve(z.size());
  for (auto& zk : z) out.emplace_back(sub, std::move(zk));
  return out;
}

Eigen::VectorXd directional_derivative(const FlowResult& flow, const VectorFieldSystem& vf,
                                       const GridFunction1D& h, double t) {
  if (!(h.grid == flow.grid)) throw InvalidInput("directional_derivative: grid mismatch");
  if (static_cast<std::size_t>(h.components()) != vf.driver_dim()) {
    throw InvalidInput("directional_derivative: h must have one column per driver component");
  }
  const std::size_t ti = flow.grid.index_of(t);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(vf.state_dim());
  if (ti == 0) return out;
  const auto z = duhamel_integrands(flow, vf, ti);
  // Trapezoid sums: the left-point rule carries an O(1/n) bias against the scheme's own tangent.
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto col = static_cast<Eigen::Index>(k);
    for (std::size_t i = 0; i < ti; ++i) {
      const auto a = static_cast<Eigen::Index>(i);
      const double dh = h.values(a + 1, col) - h.values(a, col);
      out += 0.5 * dh * (z[k].values.row(a) + z[k].values.row(a + 1)).transpose();
    }
  }
  return out;
}

LogJacobianDiagnostic log_jacobian_diagnostic(const FlowResult& flow, const RoughPath& x,
                                              double p) {
  if (!flow.has_jacobian()) throw InvalidInput("log_jacobian_diagnostic: flow has no Jacobian");
  LogJacobianDiagnostic out;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(flow.jacobian.back());
  out.log_norm_j = std::log(svd.singularValues()(0));
  out.pvar_p = std::pow(p_variation(std::span<const G2Element>(x.elements()), p).value, p);
  return out;
}

}  // namespace roughdens
