#pragma once

#include <Eigen/Dense>

namespace roughdens {

/// Element (a, b) of the step-2 nilpotent group G2(R^d).
///
/// level2(i, j) holds the iterated integral of (x^i - x^i_0) dx^j, so the
/// product of two elements adds the cross term g.level1 * h.level1^T.
struct G2Element {
  Eigen::VectorXd level1;
  Eigen::MatrixXd level2;

  G2Element() = default;
  G2Element(Eigen::VectorXd a, Eigen::MatrixXd b);

  static G2Element identity(Eigen::Index dim);
  /// Canonical lift of a straight segment with increment `a` (zero area).
  static G2Element segment(const Eigen::VectorXd& a);

  Eigen::Index dim() const { return level1.size(); }
};

/// Lie algebra coordinates (increment, antisymmetric area).
struct LogCoordinates {
  Eigen::VectorXd increment;
  Eigen::MatrixXd area;
};

inline constexpr double kGeometricTolerance = 1e-9;

G2Element g2_product(const G2Element& g, const G2Element& h);
G2Element g2_inverse(const G2Element& g);
/// x_{s,t} = x_s^{-1} (x) x_t.
G2Element g2_increment(const G2Element& g_s, const G2Element& g_t);

/// max |Sym(level2) - level1 level1^T / 2| over entries.
double symmetric_residual(const G2Element& g);
bool is_geometric(const G2Element& g, double tol = kGeometricTolerance);

/// Throws GeometricityError when the symmetric-part residual exceeds `tol`.
LogCoordinates log_map(const G2Element& g, double tol = kGeometricTolerance);

/// max(|a|_2, |area|_F^{1/2}); homogeneous under dilation.
double homogeneous_norm(const G2Element& g);

/// delta_lambda: level1 -> lambda level1, level2 -> lambda^2 level2.
G2Element dilate(const G2Element& g, double lambda);

}  // namespace roughdens
