#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "roughdens/gaussian_models.hpp"
#include "roughdens/rde_solver.hpp"

namespace roughdens {

enum class MalliavinMethod { young_2d, parseval_basis, bm_reduction };

std::string to_string(MalliavinMethod m);

struct MalliavinMatrix {
  Eigen::MatrixXd sigma;   ///< e x e, symmetrised
  double t = 0.0;
  double lambda_min = 0.0;
  double det = 0.0;
  double asymmetry = 0.0;  ///< max |sigma - sigma^T| before symmetrisation
  /// sum_k max_s |Z_k(s)|^2 * max |R^(k)| on [0, t]^2: the magnitude the
  /// quadratic form would have without cancellation. Zero when unknown.
  double reference_scale = 0.0;
  MalliavinMethod method = MalliavinMethod::young_2d;
};

/// sigma_t = sum_k int int Z_k(s) Z_k(s')^T dR^(k)(s, s'), with
/// Z_k(s) = J_{t <- s} V_k(Y_s); `covariances` are the kernels on the flow grid.
MalliavinMatrix malliavin_matrix_2d(const FlowResult& flow, const VectorFieldSystem& vf,
                                    const std::vector<GridFunction2D>& covariances, double t);
MalliavinMatrix malliavin_matrix_2d(const FlowResult& flow, const VectorFieldSystem& vf,
                                    const CovarianceModel& model, double t);

/// Brownian case: sum_k int_0^t Z_k Z_k^T ds, midpoint rule on each interval.
MalliavinMatrix malliavin_matrix_bm_reduction(const FlowResult& flow, const VectorFieldSystem& vf,
                                              double t);

/// sigma_t = sum_{k,n} D_{h_n^(k)} Y_t (D_{h_n^(k)} Y_t)^T over the grid
/// Cameron-Martin bases (one per driver component).
MalliavinMatrix malliavin_matrix_parseval(const FlowResult& flow, const VectorFieldSystem& vf,
                                          const std::vector<CameronMartinBasis>& bases, double t);

inline constexpr double kDegeneracyTau = 1e-10;

struct Spectrum {
  Eigen::VectorXd eigenvalues;  ///< ascending
  double lambda_min = 0.0;
  double det = 0.0;
  double threshold = 0.0;
  double tau = kDegeneracyTau;
  bool nondegenerate = false;
};

/// Non-degenerate iff lambda_min > tau * max(trace, reference_scale) / e.
Spectrum spectrum(const Eigen::MatrixXd& sigma, double tau = kDegeneracyTau,
                  double reference_scale = 0.0);
Spectrum spectrum(const MalliavinMatrix& m, double tau = kDegeneracyTau);

}  // namespace roughdens
