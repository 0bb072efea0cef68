#include "roughdens/gaussian_models.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "roughdens/errors.hpp"
#include "roughdens/young_variation.hpp"

namespace roughdens {

Kernel Kernel::zero() { return {Kind::zero, 0.5, 0.0, 0.0}; }

Kernel Kernel::brownian(double scale) { return {Kind::brownian, 0.5, 0.0, scale}; }

Kernel Kernel::fractional(double hurst, double scale) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    std::ostringstream os;
    os << "fractional kernel: Hurst parameter must lie in (0, 1), got " << hurst;
    throw InvalidInput(os.str());
  }
  return {Kind::fractional, hurst, 0.0, scale};
}

Kernel Kernel::bridge(double pin, double scale) {
  if (!(pin > 0.0)) {
    std::ostringstream os;
    os << "bridge kernel: pinning time must be positive, got " << pin;
    throw InvalidInput(os.str());
  }
  return {Kind::bridge, 0.5, pin, scale};
}

double Kernel::operator()(double s, double t) const {
  double r = 0.0;
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::brownian:
      r = std::min(s, t);
      break;
    case Kind::fractional: {
      const double two_h = 2.0 * hurst_;
      r = 0.5 * (std::pow(t, two_h) + std::pow(s, two_h) - std::pow(std::abs(t - s), two_h));
      break;
    }
    case Kind::bridge:
      r = std::min(s, t) - s * t / pin_;
      break;
  }
  return scale_ * scale_ * r;
}

std::optional<double> Kernel::analytic_rho() const {
  switch (kind_) {
    case Kind::zero:
    case Kind::brownian:
    case Kind::bridge:
      return 1.0;
    case Kind::fractional:
      return std::max(1.0, 1.0 / (2.0 * hurst_));
  }
  return std::nullopt;
}

std::string Kernel::label() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::brownian:
      os << "bm";
      break;
    case Kind::fractional:
      os << "fbm(H=" << hurst_ << ")";
      break;
    case Kind::bridge:
      os << "bridge(pin=" << pin_ << ")";
      break;
  }
  if (scale_ != 1.0) os << "*" << scale_;
  return os.str();
}

CovarianceModel::CovarianceModel(std::vector<Kernel> kernels, double horizon_)
    : components(std::move(kernels)), horizon(horizon_) {
  if (components.empty()) throw InvalidInput("CovarianceModel: need at least one component");
  if (!(horizon > 0.0)) throw InvalidInput("CovarianceModel: horizon must be positive");
}

CovarianceModel CovarianceModel::iid(const Kernel& k, std::size_t dim, double horizon) {
  return {std::vector<Kernel>(dim, k), horizon};
}

double kernel_eval(const CovarianceModel& model, std::size_t component, double s, double t) {
  if (component >= model.dim()) throw InvalidInput("kernel_eval: component out of range");
  const double tol = 1e-12 * model.horizon;
  if (s < 0.0 || t < 0.0 || s > model.horizon + tol || t > model.horizon + tol) {
    throw InvalidInput("kernel_eval: times must lie in [0, T]");
  }
  return model.components[component](s, t);
}

GridFunction2D covariance_grid(const Kernel& k, const TimeGrid& grid) {
  const auto n = static_cast<Eigen::Index>(grid.size());
  Eigen::MatrixXd r(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      r(i, j) = k(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(j)]);
      r(j, i) = r(i, j);
    }
  }
  return {grid, grid, std::move(r)};
}

namespace {

Eigen::MatrixXd interior_covariance(const Kernel& k, const TimeGrid& grid) {
  const auto full = covariance_grid(k, grid);
  const Eigen::Index m = full.values.rows() - 1;
  return full.values.bottomRightCorner(m, m);
}

}  // namespace

Eigen::MatrixXd covariance_factor(const Eigen::MatrixXd& cov, const std::string& label,
                                  std::vector<std::string>& notes) {
  const Eigen::Index m = cov.rows();
  if (cov.isZero(0.0)) return Eigen::MatrixXd::Zero(m, m);

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) return llt.matrixL();

  const double jitter = 1e-12 * cov.trace() / static_cast<double>(m);
  Eigen::MatrixXd shifted = cov;
  shifted.diagonal().array() += jitter;
  llt.compute(shifted);
  if (llt.info() == Eigen::Success) {
    std::ostringstream os;
    os << label << ": Cholesky needed diagonal jitter " << jitter;
    notes.push_back(os.str());
    return llt.matrixL();
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo < -std::max(jitter, 0.0)) {
    std::ostringstream os;
    os << label << ": covariance on the grid is not positive semidefinite, most negative "
       << "eigenvalue " << lo;
    throw NotPsdError(os.str(), lo);
  }
  std::ostringstream os;
  os << label << ": Cholesky failed with jitter, used eigen square root (min eigenvalue " << lo
     << ")";
  notes.push_back(os.str());
  return eig.eigenvectors() * eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().asDiagonal();
}

namespace {

std::mt19937_64 sample_engine(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace

GaussianSampler::GaussianSampler(const CovarianceModel& model, const TimeGrid& grid)
    : grid_(grid) {
  if (grid.horizon() > model.horizon * (1.0 + 1e-12)) {
    throw InvalidInput("GaussianSampler: grid extends beyond the model horizon");
  }
  factors_.reserve(model.dim());
  for (std::size_t k = 0; k < model.dim(); ++k) {
    const auto& kern = model.components[k];
    factors_.push_back(covariance_factor(interior_covariance(kern, grid),
                                 "component " + std::to_string(k) + " (" + kern.label() + ")",
                                 notes_));
  }
}

PathSample GaussianSampler::sample(std::uint64_t seed, std::uint64_t sample_index) const {
  const auto n = static_cast<Eigen::Index>(grid_.size());
  const auto d = static_cast<Eigen::Index>(factors_.size());
  auto engine = sample_engine(seed, sample_index);
  std::normal_distribution<double> normal(0.0, 1.0);

  PathSample out{grid_, Eigen::MatrixXd::Zero(n, d), seed, sample_index};
  Eigen::VectorXd z(n - 1);
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index i = 0; i < n - 1; ++i) z(i) = normal(engine);
    out.values.col(k).tail(n - 1) = factors_[static_cast<std::size_t>(k)] * z;
  }
  return out;
}

std::vector<PathSample> sample_paths(const CovarianceModel& model, const TimeGrid& grid,
                                     std::size_t count, std::uint64_t seed,
                                     std::uint64_t first_index) {
  const GaussianSampler sampler(model, grid);
  std::vector<PathSample> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.sample(seed, first_index + i));
  return out;
}

GridFunction1D CameronMartinBasis::path(std::size_t n) const {
  return {grid, paths.col(static_cast<Eigen::Index>(n))};
}

double CameronMartinBasis::inner_product(const Eigen::VectorXd& h,
                                         const Eigen::VectorXd& g) const {
  const Eigen::Index m = eigenvectors.rows();
  if (h.size() != m + 1 || g.size() != m + 1) {
    throw InvalidInput("CameronMartinBasis::inner_product: vectors must be grid-sized");
  }
  const Eigen::VectorXd ch = eigenvectors.transpose() * h.tail(m);
  const Eigen::VectorXd cg = eigenvectors.transpose() * g.tail(m);
  return (ch.array() * cg.array() / eigenvalues.array()).sum();
}

CameronMartinBasis cameron_martin_basis(const Kernel& k, const TimeGrid& grid) {
  const Eigen::MatrixXd cov = interior_covariance(k, grid);
  const Eigen::Index m = cov.rows();
  CameronMartinBasis basis;
  basis.grid = grid;
  if (cov.isZero(0.0)) {
    basis.paths = Eigen::MatrixXd::Zero(m + 1, 0);
    basis.eigenvalues = Eigen::VectorXd::Zero(0);
    basis.eigenvectors = Eigen::MatrixXd::Zero(m, 0);
    return basis;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  const double top = eig.eigenvalues().maxCoeff();
  if (!(top > 0.0)) {
    throw DegenerateModelError("cameron_martin_basis: no eigenvalue of the grid covariance of " +
                               k.label() + " is positive");
  }
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = m - 1; i >= 0; --i) {  // ascending order from Eigen
    if (eig.eigenvalues()(i) > kBasisCutoff * top) keep.push_back(i);
  }
  const auto count = static_cast<Eigen::Index>(keep.size());
  basis.paths = Eigen::MatrixXd::Zero(m + 1, count);
  basis.eigenvalues.resize(count);
  basis.eigenvectors.resize(m, count);
  for (Eigen::Index c = 0; c < count; ++c) {
    const Eigen::Index i = keep[static_cast<std::size_t>(c)];
    const double lambda = eig.eigenvalues()(i);
    basis.eigenvalues(c) = lambda;
    basis.eigenvectors.col(c) = eig.eigenvectors().col(i);
    basis.paths.col(c).tail(m) = std::sqrt(lambda) * eig.eigenvectors().col(i);
  }
  return basis;
}

std::vector<CameronMartinBasis> cameron_martin_bases(const CovarianceModel& model,
                                                     const TimeGrid& grid) {
  std::vector<CameronMartinBasis> out;
  out.reserve(model.dim());
  for (const auto& k : model.components) out.push_back(cameron_martin_basis(k, grid));
  return out;
}

NondegeneracyReport nondegeneracy_check(const CovarianceModel& model,
                                        const std::vector<double>& times) {
  if (times.empty()) throw InvalidInput("nondegeneracy_check: no times given");
  if (!(times.front() > 0.0)) throw InvalidInput("nondegeneracy_check: times must be > 0");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw InvalidInput("nondegeneracy_check: times must be strictly increasing");
    }
  }
  if (times.back() > model.horizon * (1.0 + 1e-12)) {
    throw InvalidInput("nondegeneracy_check: times must not exceed the horizon");
  }
  const auto n = static_cast<Eigen::Index>(times.size());
  NondegeneracyReport rep;
  rep.nondegenerate = true;
  rep.lambda_min_overall = std::numeric_limits<double>::infinity();
  for (const auto& k : model.components) {
    Eigen::MatrixXd c(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        c(i, j) = k(times[static_cast<std::size_t>(i)], times[static_cast<std::size_t>(j)]);
      }
    }
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(c, Eigen::EigenvaluesOnly)
                          .eigenvalues()
                          .minCoeff();
    const double thr = 1e-10 * c.trace() / static_cast<double>(n);
    rep.lambda_min.push_back(lo);
    rep.threshold.push_back(thr);
    rep.lambda_min_overall = std::min(rep.lambda_min_overall, lo);
    if (!(lo > thr)) rep.nondegenerate = false;
  }
  return rep;
}

double variance_of_linear_functional(const CovarianceModel& model, const GridFunction1D& f) {
  if (static_cast<std::size_t>(f.components()) != model.dim()) {
    throw InvalidInput("variance_of_linear_functional: one column per component expected");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < model.dim(); ++k) {
    const GridFunction1D fk{f.grid, f.values.col(static_cast<Eigen::Index>(k))};
    total += young_integral_2d_scalar(fk, fk, covariance_grid(model.components[k], f.grid));
  }
  return total;
}

EmbeddingCheck cm_embedding_check(const Kernel& k, const GridFunction1D& h, double cm_norm_sq,
                                  double rho) {
  if (h.components() != 1) throw InvalidInput("cm_embedding_check: scalar h expected");
  EmbeddingCheck out;
  const PVariation lhs = p_variation(h, rho);
  const GridFunction2D r = covariance_grid(k, h.grid);
  double rho_sum = 0.0;
  if (h.grid.size() <= kRhoExactMaxPoints) {
    rho_sum = std::pow(rho_variation_2d(r, rho, RhoMode::exact).value, rho);
    out.rho_exact = true;
  } else {
    const double lower = std::pow(rho_variation_2d(r, rho, RhoMode::diagonal_refinement).value, rho);
    rho_sum = std::max(lower, rho_partition_sum(r, lhs.partition, rho));
  }
  out.lhs = lhs.value;
  out.rhs = std::sqrt(std::max(cm_norm_sq, 0.0)) * std::sqrt(std::pow(rho_sum, 1.0 / rho));
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

}  // namespace roughdens
