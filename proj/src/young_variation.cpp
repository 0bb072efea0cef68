#include "roughdens/young_variation.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

#include "roughdens/errors.hpp"

namespace roughdens {

namespace {

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* op) {
  if (!(a == b)) throw InvalidInput(std::string(op) + ": grid mismatch");
}

void require_p(double p, const char* op) {
  if (!(p >= 1.0)) {
    std::ostringstream os;
    os << op << ": exponent must be >= 1, got " << p;
    throw InvalidInput(os.str());
  }
}

}  // namespace

Eigen::MatrixXd young_integral_1d(const GridFunction1D& f, const GridFunction1D& g) {
  require_same_grid(f.grid, g.grid, "young_integral_1d");
  const Eigen::Index n = f.values.rows() - 1;
  const Eigen::MatrixXd dg = g.values.bottomRows(n) - g.values.topRows(n);
  return f.values.topRows(n).transpose() * dg;
}

double young_integral_1d_scalar(const GridFunction1D& f, const GridFunction1D& g) {
  if (f.components() != 1 || g.components() != 1) {
    throw InvalidInput("young_integral_1d_scalar: scalar grid functions expected");
  }
  return young_integral_1d(f, g)(0, 0);
}

Eigen::MatrixXd young_integral_2d(const GridFunction1D& f, const GridFunction1D& g,
                                  const GridFunction2D& r) {
  require_same_grid(f.grid, r.grid_s, "young_integral_2d (f vs s-grid)");
  require_same_grid(g.grid, r.grid_t, "young_integral_2d (g vs t-grid)");
  const Eigen::MatrixXd box = r.rectangle_increments();
  const Eigen::Index n = box.rows();
  const Eigen::Index m = box.cols();
  return f.values.topRows(n).transpose() * (box * g.values.topRows(m));
}

double young_integral_2d_scalar(const GridFunction1D& f, const GridFunction1D& g,
                                const GridFunction2D& r) {
  if (f.components() != 1 || g.components() != 1) {
    throw InvalidInput("young_integral_2d_scalar: scalar grid functions expected");
  }
  return young_integral_2d(f, g, r)(0, 0);
}

PVariation p_variation_dp(std::size_t n,
                          const std::function<double(std::size_t, std::size_t)>& dist,
                          double p) {
  require_p(p, "p_variation");
  if (n < 2) return {0.0, {0}};
  std::vector<double> best(n, 0.0);
  std::vector<std::size_t> prev(n, 0);
  for (std::size_t j = 1; j < n; ++j) {
    double top = -1.0;
    for (std::size_t i = 0; i < j; ++i) {
      const double v = best[i] + std::pow(dist(i, j), p);
      if (v > top) {
        top = v;
        prev[j] = i;
      }
    }
    best[j] = top;
  }
  PVariation out;
  out.value = std::pow(best[n - 1], 1.0 / p);
  for (std::size_t k = n - 1;; k = prev[k]) {
    out.partition.insert(out.partition.begin(), k);
    if (k == 0) break;
  }
  return out;
}

PVariation p_variation(const GridFunction1D& path, double p) {
  const auto& v = path.values;
  return p_variation_dp(
      static_cast<std::size_t>(v.rows()),
      [&](std::size_t i, std::size_t j) {
        return (v.row(static_cast<Eigen::Index>(j)) - v.row(static_cast<Eigen::Index>(i)))
            .norm();
      },
      p);
}

PVariation p_variation(std::span<const G2Element> path, double p) {
  return p_variation_dp(
      path.size(),
      [&](std::size_t i, std::size_t j) {
        return homogeneous_norm(g2_increment(path[i], path[j]));
      },
      p);
}

double rho_partition_sum(const GridFunction2D& r, std::span<const std::size_t> partition,
                         double rho) {
  double total = 0.0;
  const auto& v = r.values;
  for (std::size_t a = 0; a + 1 < partition.size(); ++a) {
    const auto i0 = static_cast<Eigen::Index>(partition[a]);
    const auto i1 = static_cast<Eigen::Index>(partition[a + 1]);
    for (std::size_t b = 0; b + 1 < partition.size(); ++b) {
      const auto j0 = static_cast<Eigen::Index>(partition[b]);
      const auto j1 = static_cast<Eigen::Index>(partition[b + 1]);
      const double box = v(i1, j1) - v(i0, j1) - v(i1, j0) + v(i0, j0);
      total += std::pow(std::abs(box), rho);
    }
  }
  return total;
}

RhoVariation rho_variation_2d(const GridFunction2D& r, double rho, RhoMode mode) {
  require_p(rho, "rho_variation_2d");
  require_same_grid(r.grid_s, r.grid_t, "rho_variation_2d (square grid required)");
  const std::size_t n = r.grid_s.size();
  RhoVariation out;
  double best = -1.0;

  if (mode == RhoMode::exact) {
    if (n > kRhoExactMaxPoints) {
      std::ostringstream os;
      os << "rho_variation_2d: exact mode enumerates 2^(n-2) partitions and is limited to "
         << kRhoExactMaxPoints << " grid points (got " << n
         << "); use diagonal_refinement or coarsen the grid";
      throw InvalidInput(os.str());
    }
    const std::size_t interior = n - 2;
    std::vector<std::size_t> part;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << interior); ++mask) {
      part.clear();
      part.push_back(0);
      for (std::size_t k = 0; k < interior; ++k) {
        if (mask & (std::uint64_t{1} << k)) part.push_back(k + 1);
      }
      part.push_back(n - 1);
      const double s = rho_partition_sum(r, part, rho);
      if (s > best) {
        best = s;
        out.partition = part;
      }
    }
    out.lower_bound = false;
  } else {
    for (std::size_t stride = 1;; stride *= 2) {
      std::vector<std::size_t> part;
      for (std::size_t i = 0; i < n; i += stride) part.push_back(i);
      if (part.back() != n - 1) part.push_back(n - 1);
      const double s = rho_partition_sum(r, part, rho);
      if (s > best) {
        best = s;
        out.partition = part;
      }
      if (part.size() <= 2) break;
    }
    out.lower_bound = true;
  }
  out.value = std::pow(std::max(best, 0.0), 1.0 / rho);
  return out;
}

}  // namespace roughdens
