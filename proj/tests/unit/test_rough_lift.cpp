#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "roughdens/errors.hpp"
#include "roughdens/rough_lift.hpp"

using namespace roughdens;

namespace {

double max_diff(const G2Element& g, const G2Element& h) {
  return std::max((g.level1 - h.level1).cwiseAbs().maxCoeff(),
                  (g.level2 - h.level2).cwiseAbs().maxCoeff());
}

double max_path_diff(const RoughPath& a, const RoughPath& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.elements().size(); ++i) {
    worst = std::max(worst, max_diff(a.elements()[i], b.elements()[i]));
  }
  return worst;
}

Eigen::MatrixXd rows(std::initializer_list<std::initializer_list<double>> xs) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(xs.size()),
                    static_cast<Eigen::Index>(xs.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : xs) {
    Eigen::Index c = 0;
    for (double x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

}  // namespace

TEST_CASE("lift of a straight segment and of the L-path") {
  const auto line = lift_piecewise_linear(TimeGrid::uniform(1.0, 1), rows({{0, 0}, {1, 1}}));
  CHECK(max_diff(line.endpoint(), G2Element::segment(Eigen::Vector2d(1, 1))) == 0.0);

  const auto l = lift_piecewise_linear(TimeGrid::uniform(1.0, 2), rows({{0, 0}, {1, 0}, {1, 1}}));
  Eigen::Matrix2d b;
  b << 0.5, 1.0, 0.0, 0.5;
  CHECK((l.endpoint().level2 - b).norm() == 0.0);
  CHECK(log_map(l.endpoint()).area(0, 1) == doctest::Approx(0.5));
  CHECK(max_diff(l.elements()[0], G2Element::identity(2)) == 0.0);
}

TEST_CASE("inscribed polygon area converges to pi") {
  double prev_err = 1.0;
  for (int n : {8, 16, 32, 64, 128}) {
    Eigen::MatrixXd v(n + 1, 2);
    for (int k = 0; k <= n; ++k) {
      const double a = 2.0 * std::numbers::pi * k / n;
      v(k, 0) = std::cos(a);
      v(k, 1) = std::sin(a);
    }
    const auto x = lift_piecewise_linear(TimeGrid::uniform(1.0, static_cast<std::size_t>(n)), v);
    const double area = log_map(x.endpoint()).area(0, 1);
    CHECK(area == doctest::Approx(0.5 * n * std::sin(2.0 * std::numbers::pi / n)).epsilon(1e-12));
    const double err = std::abs(area - std::numbers::pi);
    CHECK(err * n * n <= 2.0 * std::pow(std::numbers::pi, 3) / 3.0 + 1e-9);
    CHECK(err < prev_err);
    prev_err = err;
  }
}

TEST_CASE("lift matches independently accumulated iterated integrals") {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  double worst_geom = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 1 + trial % 3;
    const Eigen::MatrixXd v = testing::random_walk(rng, 30, d, 0.5);
    const auto x = lift_piecewise_linear(TimeGrid::uniform(1.0, 29), v);
    worst = std::max(worst, (x.endpoint().level2 - testing::iterated_integrals(v)).cwiseAbs().maxCoeff());
    for (const auto& g : x.elements()) worst_geom = std::max(worst_geom, symmetric_residual(g));
    for (const auto& g : x.elements()) {
      const auto area = log_map(g).area;
      CHECK((area + area.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
    }
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_geom <= 1e-9);
}

TEST_CASE("Chen: lifts of the two halves multiply to the full lift") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 100; ++trial) {
    const Eigen::Index d = 1 + trial % 3;
    const Eigen::MatrixXd v = testing::random_walk(rng, 25, d, 1.0);
    const Eigen::Index split = 1 + trial % 23;
    const auto full = lift_piecewise_linear(TimeGrid::uniform(1.0, 24), v);
    const auto first = lift_piecewise_linear(TimeGrid::uniform(1.0, static_cast<std::size_t>(split)),
                                             v.topRows(split + 1));
    Eigen::MatrixXd rest = v.bottomRows(25 - split);
    rest.rowwise() -= v.row(split);
    const auto second = lift_piecewise_linear(
        TimeGrid::uniform(1.0, static_cast<std::size_t>(24 - split)), rest);
    CHECK(max_diff(g2_product(first.endpoint(), second.endpoint()), full.endpoint()) <= 1e-10);
    CHECK(max_diff(g2_increment(full.elements()[static_cast<std::size_t>(split)], full.endpoint()),
                   second.endpoint()) <= 1e-10);
  }
}

TEST_CASE("refining a piecewise-linear path leaves the lift unchanged") {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    const Eigen::MatrixXd v = testing::random_walk(rng, 17, 2, 1.0);
    Eigen::MatrixXd fine(33, 2);
    for (Eigen::Index i = 0; i < 16; ++i) {
      fine.row(2 * i) = v.row(i);
      fine.row(2 * i + 1) = 0.5 * (v.row(i) + v.row(i + 1));
    }
    fine.row(32) = v.row(16);
    const auto a = lift_piecewise_linear(TimeGrid::uniform(1.0, 16), v);
    const auto b = lift_piecewise_linear(TimeGrid::uniform(1.0, 32), fine);
    CHECK(max_diff(a.endpoint(), b.endpoint()) <= 1e-12);
  }
}

TEST_CASE("translation by a grid path") {
  std::mt19937_64 rng(12);
  const auto grid = TimeGrid::uniform(1.0, 64);
  double worst = 0.0;
  double worst_group = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const Eigen::MatrixXd x = testing::random_walk(rng, 65, 2, 0.2);
    const Eigen::MatrixXd h = testing::random_walk(rng, 65, 2, 0.2);
    const Eigen::MatrixXd g = testing::random_walk(rng, 65, 2, 0.2);
    const auto lx = lift_piecewise_linear(grid, x);
    CHECK(max_path_diff(translate(lx, GridFunction1D(grid, Eigen::MatrixXd::Zero(65, 2))), lx) == 0.0);
    worst = std::max(worst, max_path_diff(translate(lx, GridFunction1D(grid, h)),
                                          lift_piecewise_linear(grid, x + h)));
    worst_group = std::max(
        worst_group, max_path_diff(translate(translate(lx, GridFunction1D(grid, g)), GridFunction1D(grid, h)),
                                   translate(lx, GridFunction1D(grid, g + h))));
  }
  CHECK(worst <= 1e-10);
  CHECK(worst_group <= 1e-10);
  const auto lx = lift_piecewise_linear(grid, Eigen::MatrixXd::Zero(65, 2));
  CHECK_THROWS_AS(translate(lx, GridFunction1D(TimeGrid::uniform(1.0, 32), Eigen::MatrixXd::Zero(33, 2))),
                  InvalidInput);
  CHECK_THROWS_AS(translate(lx, GridFunction1D(grid, Eigen::MatrixXd::Zero(65, 3))), InvalidInput);
}

TEST_CASE("space-time lift") {
  const auto grid = TimeGrid::uniform(2.0, 4);
  const auto zero = spacetime_lift(lift_piecewise_linear(grid, Eigen::MatrixXd::Zero(5, 1)));
  CHECK(zero.dim() == 2);
  for (const auto& inc : zero.increments()) CHECK(inc.level2(0, 0) == doctest::Approx(0.125));
  CHECK(zero.endpoint().level2(0, 0) == doctest::Approx(2.0));

  const double v = 1.7;
  const auto g1 = TimeGrid::uniform(1.0, 10);
  Eigen::MatrixXd lin(11, 1);
  for (int i = 0; i <= 10; ++i) lin(i, 0) = v * g1[static_cast<std::size_t>(i)];
  const auto st = spacetime_lift(lift_piecewise_linear(g1, lin));
  CHECK(st.endpoint().level2(0, 1) == doctest::Approx(v / 2.0));  // int t dx
  CHECK(st.endpoint().level2(1, 0) == doctest::Approx(v / 2.0));  // int x dt

  std::mt19937_64 rng(13);
  const auto rp = lift_piecewise_linear(g1, testing::random_walk(rng, 11, 2, 1.0));
  const auto lifted = spacetime_lift(rp);
  CHECK(lifted.max_symmetric_residual() <= 1e-10);
  for (const auto& g : lifted.elements()) CHECK(symmetric_residual(g) <= 1e-10);
}

TEST_CASE("rough path CSV export") {
  const auto l = lift_piecewise_linear(TimeGrid::uniform(1.0, 2), rows({{0, 0}, {1, 0}, {1, 1}}));
  std::ostringstream os;
  write_rough_path_csv(os, l);
  const std::string s = os.str();
  CHECK(s.rfind("t,x1,x2,x1_1,x1_2,x2_1,x2_2\n", 0) == 0);
  CHECK(s.find("\n1,1,1,0.5,1,0,0.5\n") != std::string::npos);
}
