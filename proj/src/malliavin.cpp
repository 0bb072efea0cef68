#include "roughdens/malliavin.hpp"

#include <cmath>

#include "roughdens/errors.hpp"
#include "roughdens/young_variation.hpp"

namespace roughdens {

std::string to_string(MalliavinMethod m) {
  switch (m) {
    case MalliavinMethod::young_2d:
      return "2d-young";
    case MalliavinMethod::parseval_basis:
      return "parseval-basis";
    case MalliavinMethod::bm_reduction:
      return "bm-reduction";
  }
  return "unknown";
}

namespace {

MalliavinMatrix finish(Eigen::MatrixXd raw, double t, double scale, MalliavinMethod method) {
  MalliavinMatrix out;
  out.asymmetry = raw.size() ? (raw - raw.transpose()).cwiseAbs().maxCoeff() : 0.0;
  out.sigma = 0.5 * (raw + raw.transpose());
  out.t = t;
  out.reference_scale = scale;
  out.method = method;
  const auto sp = spectrum(out.sigma);
  out.lambda_min = sp.lambda_min;
  out.det = sp.det;
  return out;
}

double max_row_sq(const Eigen::MatrixXd& z) { return z.rowwise().squaredNorm().maxCoeff(); }

}  // namespace

MalliavinMatrix malliavin_matrix_2d(const FlowResult& flow, const VectorFieldSystem& vf,
                                    const std::vector<GridFunction2D>& covariances, double t) {
  if (covariances.size() != vf.driver_dim()) {
    throw InvalidInput("malliavin_matrix_2d: one covariance per driver component required");
  }
  const std::size_t ti = flow.grid.index_of(t);
  const Eigen::Index e = vf.state_dim();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(e, e);
  if (ti == 0) return finish(sigma, t, 0.0, MalliavinMethod::young_2d);
  const auto z = duhamel_integrands(flow, vf, ti);
  const auto rows = static_cast<Eigen::Index>(ti + 1);
  double scale = 0.0;
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto& cov = covariances[k];
    if (!(cov.grid_s == flow.grid) || !(cov.grid_t == flow.grid)) {
      throw InvalidInput("malliavin_matrix_2d: covariance grid differs from the flow grid");
    }
    const GridFunction2D sub{z[k].grid, z[k].grid, cov.values.topLeftCorner(rows, rows)};
    sigma += young_integral_2d(z[k], z[k], sub);
    scale += max_row_sq(z[k].values) * sub.values.cwiseAbs().maxCoeff();
  }
  return finish(std::move(sigma), t, scale, MalliavinMethod::young_2d);
}

MalliavinMatrix malliavin_matrix_2d(const FlowResult& flow, const VectorFieldSystem& vf,
                                    const CovarianceModel& model, double t) {
  if (model.dim() != vf.driver_dim()) {
    throw InvalidInput("malliavin_matrix_2d: model and system driver dimensions differ");
  }
  std::vector<GridFunction2D> covs;
  covs.reserve(model.dim());
  for (const auto& k : model.components) covs.push_back(covariance_grid(k, flow.grid));
  return malliavin_matrix_2d(flow, vf, covs, t);
}

MalliavinMatrix malliavin_matrix_bm_reduction(const FlowResult& flow, const VectorFieldSystem& vf,
                                              double t) {
  const std::size_t ti = flow.grid.index_of(t);
  const Eigen::Index e = vf.state_dim();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(e, e);
  if (ti == 0) return finish(sigma, t, 0.0, MalliavinMethod::bm_reduction);
  const auto z = duhamel_integrands(flow, vf, ti);
  double scale = 0.0;
  for (const auto& zk : z) {
    for (std::size_t i = 0; i < ti; ++i) {
      const auto r = static_cast<Eigen::Index>(i);
      const Eigen::VectorXd mid = 0.5 * (zk.values.row(r) + zk.values.row(r + 1)).transpose();
      sigma += (flow.grid[i + 1] - flow.grid[i]) * mid * mid.transpose();
    }
    scale += max_row_sq(zk.values) * flow.grid[ti];
  }
  return finish(std::move(sigma), t, scale, MalliavinMethod::bm_reduction);
}

MalliavinMatrix malliavin_matrix_parseval(const FlowResult& flow, const VectorFieldSystem& vf,
                                          const std::vector<CameronMartinBasis>& bases, double t) {
  if (bases.size() != vf.driver_dim()) {
    throw InvalidInput("malliavin_matrix_parseval: one basis per driver component required");
  }
  const std::size_t ti = flow.grid.index_of(t);
  const Eigen::Index e = vf.state_dim();
  Eigen::MatrixXd sigma = Eigen::MatrixXd::Zero(e, e);
  if (ti == 0) return finish(sigma, t, 0.0, MalliavinMethod::parseval_basis);
  const auto z = duhamel_integrands(flow, vf, ti);
  const auto rows = static_cast<Eigen::Index>(ti + 1);
  for (std::size_t k = 0; k < bases.size(); ++k) {
    const auto& basis = bases[k];
    if (!(basis.grid == flow.grid)) {
      throw InvalidInput("malliavin_matrix_parseval: basis grid differs from the flow grid");
    }
    if (basis.size() == 0) continue;
    // Column n: D_{h_n^(k)} Y_t, the Young integral of Z_k against h_n.
    const GridFunction1D h{z[k].grid, basis.paths.topRows(rows)};
    const Eigen::MatrixXd derivs = young_integral_1d(z[k], h);
    sigma += derivs * derivs.transpose();
  }
  return finish(std::move(sigma), t, 0.0, MalliavinMethod::parseval_basis);
}

Spectrum spectrum(const Eigen::MatrixXd& sigma, double tau, double reference_scale) {
  if (sigma.rows() != sigma.cols()) throw InvalidInput("spectrum: square matrix expected");
  Spectrum sp;
  sp.tau = tau;
  const Eigen::Index e = sigma.rows();
  if (e == 0) return sp;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sigma, Eigen::EigenvaluesOnly);
  sp.eigenvalues = eig.eigenvalues();
  sp.lambda_min = sp.eigenvalues(0);
  sp.det = sp.eigenvalues.prod();
  sp.threshold = tau * std::max(sigma.trace(), reference_scale) / static_cast<double>(e);
  sp.nondegenerate = sp.lambda_min > sp.threshold;
  return sp;
}

Spectrum spectrum(const MalliavinMatrix& m, double tau) {
  return spectrum(m.sigma, tau, m.reference_scale);
}

}  // namespace roughdens
