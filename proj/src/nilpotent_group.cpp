#include "roughdens/nilpotent_group.hpp"

#include <cmath>
#include <sstream>

#include "roughdens/errors.hpp"

namespace roughdens {

namespace {

void require_same_dim(const G2Element& g, const G2Element& h, const char* op) {
  if (g.dim() != h.dim()) {
    std::ostringstream os;
    os << op << ": dimension mismatch (" << g.dim() << " vs " << h.dim() << ")";
    throw InvalidInput(os.str());
  }
}

}  // namespace

G2Element::G2Element(Eigen::VectorXd a, Eigen::MatrixXd b)
    : level1(std::move(a)), level2(std::move(b)) {
  if (level2.rows() != level1.size() || level2.cols() != level1.size()) {
    throw InvalidInput("G2Element: level2 must be a dim x dim matrix");
  }
}

G2Element G2Element::identity(Eigen::Index dim) {
  return {Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Zero(dim, dim)};
}

G2Element G2Element::segment(const Eigen::VectorXd& a) {
  return {a, 0.5 * a * a.transpose()};
}

G2Element g2_product(const G2Element& g, const G2Element& h) {
  require_same_dim(g, h, "g2_product");
  return {g.level1 + h.level1,
          g.level2 + h.level2 + g.level1 * h.level1.transpose()};
}

G2Element g2_inverse(const G2Element& g) {
  return {-g.level1, -g.level2 + g.level1 * g.level1.transpose()};
}

G2Element g2_increment(const G2Element& g_s, const G2Element& g_t) {
  require_same_dim(g_s, g_t, "g2_increment");
  // Expanded form of inverse(g_s) * g_t.
  const Eigen::VectorXd a = g_t.level1 - g_s.level1;
  Eigen::MatrixXd b = g_t.level2 - g_s.level2 - g_s.level1 * a.transpose();
  return {a, std::move(b)};
}

double symmetric_residual(const G2Element& g) {
  if (g.dim() == 0) return 0.0;
  const Eigen::MatrixXd sym = 0.5 * (g.level2 + g.level2.transpose());
  return (sym - 0.5 * g.level1 * g.level1.transpose()).cwiseAbs().maxCoeff();
}

bool is_geometric(const G2Element& g, double tol) {
  return symmetric_residual(g) <= tol;
}

LogCoordinates log_map(const G2Element& g, double tol) {
  const double residual = symmetric_residual(g);
  if (!(residual <= tol)) {
    std::ostringstream os;
    os << "log_map: element is not geometric, max symmetric-part residual "
       << residual << " exceeds " << tol;
    throw GeometricityError(os.str(), residual);
  }
  Eigen::MatrixXd b = g.level2 - 0.5 * g.level1 * g.level1.transpose();
  // Remove the rounding-level symmetric part so the area is exactly antisymmetric.
  Eigen::MatrixXd area = 0.5 * (b - b.transpose());
  return {g.level1, std::move(area)};
}

double homogeneous_norm(const G2Element& g) {
  if (g.dim() == 0) return 0.0;
  const Eigen::MatrixXd area = 0.5 * (g.level2 - g.level2.transpose());
  return std::max(g.level1.norm(), std::sqrt(area.norm()));
}

G2Element dilate(const G2Element& g, double lambda) {
  return {lambda * g.level1, (lambda * lambda) * g.level2};
}

}  // namespace roughdens
