#include "roughdens/density.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "roughdens/errors.hpp"

namespace roughdens {

namespace {

void require_kde_input(const Eigen::MatrixXd& samples) {
  if (samples.cols() < 1 || samples.cols() > 2) {
    throw InvalidInput("kde: only one- or two-dimensional samples are supported; report raw "
                       "samples for higher dimensions");
  }
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  return v[lo] + (pos - static_cast<double>(lo)) * (v[hi] - v[lo]);
}

double bandwidth_floor(double centre) { return 1e-6 * std::max(1.0, std::abs(centre)); }

// Kernel matrix K(a, i) = phi((x_a - X_i) / h) / h.
Eigen::MatrixXd kernel_matrix(const Eigen::VectorXd& axis, const Eigen::VectorXd& data, double h) {
  const double norm = 1.0 / (h * std::sqrt(2.0 * std::numbers::pi));
  Eigen::MatrixXd k(axis.size(), data.size());
  for (Eigen::Index a = 0; a < axis.size(); ++a) {
    for (Eigen::Index i = 0; i < data.size(); ++i) {
      const double u = (axis(a) - data(i)) / h;
      k(a, i) = norm * std::exp(-0.5 * u * u);
    }
  }
  return k;
}

double trapezoid(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  double s = 0.0;
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) s += 0.5 * (x(i + 1) - x(i)) * (y(i) + y(i + 1));
  return s;
}

}  // namespace

Eigen::VectorXd silverman_bandwidth(const Eigen::MatrixXd& samples) {
  require_kde_input(samples);
  const auto n = static_cast<double>(samples.rows());
  if (samples.rows() < 2) throw InvalidInput("silverman_bandwidth: need at least 2 samples");
  const Eigen::Index e = samples.cols();
  Eigen::VectorXd h(e);
  for (Eigen::Index c = 0; c < e; ++c) {
    const Eigen::VectorXd col = samples.col(c);
    const double mean = col.mean();
    const double sd = std::sqrt((col.array() - mean).square().sum() / (n - 1.0));
    double width = 0.0;
    if (e == 1) {
      std::vector<double> v(col.data(), col.data() + col.size());
      const double iqr = quantile(v, 0.75) - quantile(v, 0.25);
      const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
      width = 0.9 * spread * std::pow(n, -0.2);
    } else {
      width = sd * std::pow(n, -1.0 / 6.0);
    }
    h(c) = width > 0.0 ? width : bandwidth_floor(mean);
  }
  return h;
}

Eigen::VectorXd kde_density(const Eigen::MatrixXd& samples, const Eigen::VectorXd& bandwidth,
                            const Eigen::MatrixXd& query) {
  require_kde_input(samples);
  if (query.cols() != samples.cols() || bandwidth.size() != samples.cols()) {
    throw InvalidInput("kde_density: dimension mismatch");
  }
  const Eigen::Index e = samples.cols();
  double norm = 1.0 / static_cast<double>(samples.rows());
  for (Eigen::Index c = 0; c < e; ++c) norm /= bandwidth(c) * std::sqrt(2.0 * std::numbers::pi);
  Eigen::VectorXd out(query.rows());
  for (Eigen::Index q = 0; q < query.rows(); ++q) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < samples.rows(); ++i) {
      double u2 = 0.0;
      for (Eigen::Index c = 0; c < e; ++c) {
        const double u = (query(q, c) - samples(i, c)) / bandwidth(c);
        u2 += u * u;
      }
      acc += std::exp(-0.5 * u2);
    }
    out(q) = norm * acc;
  }
  return out;
}

KdeGrid kde_on_grid(const Eigen::MatrixXd& samples, std::size_t points_per_axis) {
  require_kde_input(samples);
  if (static_cast<std::size_t>(samples.rows()) < kKdeMinSamples) {
    throw InvalidInput("kde_on_grid: at least 100 samples required");
  }
  const Eigen::Index e = samples.cols();
  KdeGrid out;
  out.bandwidth = silverman_bandwidth(samples);
  const std::size_t default_points = e == 1 ? 1024 : 160;
  std::vector<Eigen::MatrixXd> kernels;
  for (Eigen::Index c = 0; c < e; ++c) {
    const double h = out.bandwidth(c);
    const double lo = samples.col(c).minCoeff() - 6.0 * h;
    const double hi = samples.col(c).maxCoeff() + 6.0 * h;
    std::size_t q = points_per_axis ? points_per_axis : default_points;
    if (!points_per_axis) {
      // Keep the spacing at most h / 2 so the trapezoid rule resolves each bump.
      const double needed = std::ceil((hi - lo) / (0.5 * h)) + 1.0;
      q = std::max(q, static_cast<std::size_t>(std::min(needed, e == 1 ? 20000.0 : 600.0)));
    }
    out.axes.push_back(Eigen::VectorXd::LinSpaced(static_cast<Eigen::Index>(q), lo, hi));
    kernels.push_back(kernel_matrix(out.axes.back(), samples.col(c), h));
  }
  const double inv_n = 1.0 / static_cast<double>(samples.rows());
  if (e == 1) {
    out.values = inv_n * kernels[0].rowwise().sum();
    out.normalization = trapezoid(out.axes[0], out.values.col(0));
  } else {
    out.values = inv_n * kernels[0] * kernels[1].transpose();
    Eigen::VectorXd inner(out.values.rows());
    for (Eigen::Index a = 0; a < out.values.rows(); ++a) {
      inner(a) = trapezoid(out.axes[1], out.values.row(a).transpose());
    }
    out.normalization = trapezoid(out.axes[0], inner);
  }
  return out;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double ks_distance(std::vector<double> samples, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidInput("ks_distance: no samples");
  std::sort(samples.begin(), samples.end());
  const auto n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

double ks_distance_kde(std::span<const double> samples, double bandwidth,
                       std::span<const double> query, const std::function<double(double)>& cdf) {
  if (samples.empty()) throw InvalidInput("ks_distance_kde: no samples");
  double d = 0.0;
  const auto n = static_cast<double>(samples.size());
  for (double x : query) {
    double acc = 0.0;
    for (double s : samples) acc += normal_cdf((x - s) / bandwidth);
    d = std::max(d, std::abs(acc / n - cdf(x)));
  }
  return d;
}

}  // namespace roughdens
