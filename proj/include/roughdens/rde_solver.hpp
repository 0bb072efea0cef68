#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "roughdens/gaussian_models.hpp"
#include "roughdens/rough_lift.hpp"
#include "roughdens/time_grid.hpp"
#include "roughdens/vector_fields.hpp"

namespace roughdens {

/// Solution path and Jacobian flow J_{t_i <- 0} on the driver grid.
struct FlowResult {
  TimeGrid grid;
  Eigen::MatrixXd y;                          ///< n x e, one state per grid point
  std::vector<Eigen::MatrixXd> jacobian;      ///< empty unless the flow was requested
  std::vector<Eigen::MatrixXd> jacobian_inv;
  double max_condition = 1.0;                 ///< largest cond_2(J_{t_i <- 0})
  bool ill_conditioned = false;               ///< max_condition > 1e12
  std::optional<double> driver_pvar;

  bool has_jacobian() const { return !jacobian.empty(); }
  Eigen::VectorXd state(std::size_t i) const { return y.row(static_cast<Eigen::Index>(i)).transpose(); }
  /// J_{t <- s} = J(t) J(s)^{-1} for grid indices t_index >= s_index.
  Eigen::MatrixXd jacobian_between(std::size_t t_index, std::size_t s_index) const;
};

inline constexpr double kExplosionBound = 1e12;
inline constexpr double kIllConditioned = 1e12;

/// Classical RK4 for dy = V(y) dx + V_0(y) dt along a piecewise-linear driver
/// (values n x d), with `substeps` steps per segment, jointly with the
/// Jacobian equation dJ = (sum_i V_i'(y) dx^i + V_0'(y) dt) J.
FlowResult solve_ode_reference(const TimeGrid& grid, const Eigen::MatrixXd& driver,
                               const VectorFieldSystem& vf, const Eigen::VectorXd& y0,
                               std::size_t substeps);
FlowResult solve_ode_reference(const PathSample& driver, const VectorFieldSystem& vf,
                               const Eigen::VectorXd& y0, std::size_t substeps);

/// Step-2 increment scheme on each interval with G2 increment (a, b):
///   y <- y + sum_i V_i(y) a^i + sum_{i,j} b(j, i) V_i'(y) V_j(y)
/// where b(j, i) = int (x^j - x^j_s) dx^i. A drift is handled by solving on
/// spacetime_lift(x) with fields (V_0, V_1, ..., V_d).
FlowResult solve_rde(const RoughPath& x, const VectorFieldSystem& vf, const Eigen::VectorXd& y0);

/// As solve_rde, jointly propagating J through the same scheme applied to
/// the system (V_i(y), V_i'(y) J); J^{-1} by direct inversion.
FlowResult solve_flow_jacobian(const RoughPath& x, const VectorFieldSystem& vf,
                               const Eigen::VectorXd& y0);

/// Z_k(s_i) = J_{t <- s_i} V_k(Y_{s_i}) for s_i <= t, one grid function per
/// driver component k = 1..d (values (t_index+1) x e).
std::vector<GridFunction1D> duhamel_integrands(const FlowResult& flow, const VectorFieldSystem& vf,
                                               std::size_t t_index);

/// D_h Y_t = sum_i int_0^t J_{t <- s} V_i(Y_s) dh^i_s (trapezoid sums).
/// `h` is n x d on the flow grid; `t` must be a grid point.
Eigen::VectorXd directional_derivative(const FlowResult& flow, const VectorFieldSystem& vf,
                                       const GridFunction1D& h, double t);

struct LogJacobianDiagnostic {
  double log_norm_j = 0.0;  ///< log of the operator norm of J_{T <- 0}
  double pvar_p = 0.0;      ///< |X|_{p-var}^p
};

LogJacobianDiagnostic log_jacobian_diagnostic(const FlowResult& flow, const RoughPath& x, double p);

}  // namespace roughdens
