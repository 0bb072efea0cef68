#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace roughdens {

/// Vector fields V_0 (drift), V_1, ..., V_d on R^e with first and second
/// derivatives. Field index 0 is the drift throughout.
class VectorFieldSystem {
 public:
  enum class DerivativeSource { analytic, finite_difference };

  using Field = std::function<Eigen::VectorXd(std::size_t, const Eigen::VectorXd&)>;
  using Jacobian = std::function<Eigen::MatrixXd(std::size_t, const Eigen::VectorXd&)>;
  /// (i, y, v) -> directional derivative of the Jacobian of V_i along v.
  using SecondDerivative =
      std::function<Eigen::MatrixXd(std::size_t, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

  /// Missing derivatives are replaced by central finite differences.
  VectorFieldSystem(Eigen::Index state_dim, std::size_t driver_dim, Field field,
                    Jacobian jacobian = nullptr, SecondDerivative second = nullptr,
                    bool has_drift = true, std::string name = "custom");

  /// V_i(y) = A_i y + b_i for i = 0..d; `a` and `b` have d+1 entries.
  static VectorFieldSystem linear(std::vector<Eigen::MatrixXd> a, std::vector<Eigen::VectorXd> b);
  /// Constant fields V_i = b_i (b has d+1 entries, b[0] is the drift).
  static VectorFieldSystem constant(std::vector<Eigen::VectorXd> b);
  /// e = 2: V_i(y) = b_i + c_i * Rot90 y, with Rot90 = [[0,-1],[1,0]].
  static VectorFieldSystem affine_rotation(std::vector<Eigen::Vector2d> offsets,
                                           std::vector<double> rates);

  struct PolynomialTerm {
    std::size_t field = 0;      ///< 0 = drift
    Eigen::Index component = 0; ///< output coordinate
    double coefficient = 0.0;
    std::vector<int> powers;    ///< one exponent per state coordinate, total <= 3
  };
  /// Components are polynomials (total degree <= 3) in s(y) = r tanh(y / r),
  /// which keeps the fields and their derivatives bounded. cutoff <= 0
  /// disables the cutoff (s = y).
  static VectorFieldSystem polynomial(Eigen::Index state_dim, std::size_t driver_dim,
                                      std::vector<PolynomialTerm> terms, double cutoff);

  Eigen::Index state_dim() const { return e_; }
  std::size_t driver_dim() const { return d_; }
  bool has_drift() const { return has_drift_; }
  DerivativeSource derivative_source() const { return source_; }
  const std::string& name() const { return name_; }

  Eigen::VectorXd field(std::size_t i, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd jacobian(std::size_t i, const Eigen::VectorXd& y) const;
  Eigen::MatrixXd second(std::size_t i, const Eigen::VectorXd& y, const Eigen::VectorXd& v) const;

  /// Same fields with derivatives taken by finite differences only.
  VectorFieldSystem with_finite_differences() const;
  /// e x d matrix [V_1(y) ... V_d(y)].
  Eigen::MatrixXd diffusion_matrix(const Eigen::VectorXd& y) const;

 private:
  Eigen::Index e_;
  std::size_t d_;
  Field field_;
  Jacobian jacobian_;
  SecondDerivative second_;
  bool has_drift_;
  DerivativeSource source_;
  std::string name_;
};

/// Tabulated polynomial terms, one per line:
///   field component coefficient p_1 ... p_e
/// Blank lines and lines starting with '#' are ignored.
std::vector<VectorFieldSystem::PolynomialTerm> parse_polynomial_terms(std::istream& in,
                                                                      Eigen::Index state_dim);

}  // namespace roughdens
