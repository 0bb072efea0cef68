#include "roughdens/vector_fields.hpp"

#include <cmath>
#include <istream>
#include <sstream>

#include "roughdens/errors.hpp"

namespace roughdens {

namespace {

double fd_step(const Eigen::VectorXd& y) { return 1e-5 * std::max(1.0, y.cwiseAbs().maxCoeff()); }

}  // namespace

VectorFieldSystem::VectorFieldSystem(Eigen::Index state_dim, std::size_t driver_dim, Field field,
                                     Jacobian jacobian, SecondDerivative second, bool has_drift,
                                     std::string name)
    : e_(state_dim),
      d_(driver_dim),
      field_(std::move(field)),
      jacobian_(std::move(jacobian)),
      second_(std::move(second)),
      has_drift_(has_drift),
      source_(jacobian_ && second_ ? DerivativeSource::analytic
                                   : DerivativeSource::finite_difference),
      name_(std::move(name)) {
  if (e_ <= 0 || d_ == 0) throw InvalidInput("VectorFieldSystem: dimensions must be positive");
  if (!field_) throw InvalidInput("VectorFieldSystem: field evaluator required");
}

Eigen::VectorXd VectorFieldSystem::field(std::size_t i, const Eigen::VectorXd& y) const {
  return field_(i, y);
}

Eigen::MatrixXd VectorFieldSystem::jacobian(std::size_t i, const Eigen::VectorXd& y) const {
  if (jacobian_) return jacobian_(i, y);
  const double h = fd_step(y);
  Eigen::MatrixXd jac(e_, e_);
  Eigen::VectorXd yp = y;
  Eigen::VectorXd ym = y;
  for (Eigen::Index c = 0; c < e_; ++c) {
    yp(c) = y(c) + h;
    ym(c) = y(c) - h;
    jac.col(c) = (field_(i, yp) - field_(i, ym)) / (2.0 * h);
    yp(c) = y(c);
    ym(c) = y(c);
  }
  return jac;
}

Eigen::MatrixXd VectorFieldSystem::second(std::size_t i, const Eigen::VectorXd& y,
                                          const Eigen::VectorXd& v) const {
  if (second_) return second_(i, y, v);
  const double vn = v.norm();
  if (vn == 0.0) return Eigen::MatrixXd::Zero(e_, e_);
  const double h = 1e-4 * std::max(1.0, y.cwiseAbs().maxCoeff()) / vn;
  return (jacobian(i, y + h * v) - jacobian(i, y - h * v)) / (2.0 * h);
}

VectorFieldSystem VectorFieldSystem::with_finite_differences() const {
  return {e_, d_, field_, nullptr, nullptr, has_drift_, name_ + "[fd]"};
}

Eigen::MatrixXd VectorFieldSystem::diffusion_matrix(const Eigen::VectorXd& y) const {
  Eigen::MatrixXd m(e_, static_cast<Eigen::Index>(d_));
  for (std::size_t k = 1; k <= d_; ++k) m.col(static_cast<Eigen::Index>(k - 1)) = field(k, y);
  return m;
}

VectorFieldSystem VectorFieldSystem::linear(std::vector<Eigen::MatrixXd> a,
                                            std::vector<Eigen::VectorXd> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw InvalidInput("linear system: need matching A_i and b_i for i = 0..d (d >= 1)");
  }
  const Eigen::Index e = b.front().size();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rows() != e || a[i].cols() != e || b[i].size() != e) {
      throw InvalidInput("linear system: A_i must be e x e and b_i of length e");
    }
  }
  const bool drift = !a[0].isZero(0.0) || !b[0].isZero(0.0);
  auto field = [a, b](std::size_t i, const Eigen::VectorXd& y) -> Eigen::VectorXd {
    return a[i] * y + b[i];
  };
  auto jac = [a](std::size_t i, const Eigen::VectorXd&) -> Eigen::MatrixXd { return a[i]; };
  auto sec = [e](std::size_t, const Eigen::VectorXd&, const Eigen::VectorXd&) -> Eigen::MatrixXd {
    return Eigen::MatrixXd::Zero(e, e);
  };
  return {e, a.size() - 1, field, jac, sec, drift, "linear"};
}

VectorFieldSystem VectorFieldSystem::constant(std::vector<Eigen::VectorXd> b) {
  if (b.empty()) throw InvalidInput("constant system: need at least the drift entry");
  const Eigen::Index e = b.front().size();
  std::vector<Eigen::MatrixXd> a(b.size(), Eigen::MatrixXd::Zero(e, e));
  auto sys = linear(std::move(a), std::move(b));
  sys.name_ = "constant";
  return sys;
}

VectorFieldSystem VectorFieldSystem::affine_rotation(std::vector<Eigen::Vector2d> offsets,
                                                     std::vector<double> rates) {
  if (offsets.size() != rates.size()) {
    throw InvalidInput("affine_rotation: one rate per offset required");
  }
  Eigen::Matrix2d rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  std::vector<Eigen::MatrixXd> a;
  std::vector<Eigen::VectorXd> b;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    a.emplace_back(rates[i] * rot);
    b.emplace_back(offsets[i]);
  }
  auto sys = linear(std::move(a), std::move(b));
  sys.name_ = "affine_rotation";
  return sys;
}

namespace {

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

// Value, gradient and Hessian (in s) of c * prod s_m^{p_m}.
struct Monomial {
  double value;
  Eigen::VectorXd grad;
  Eigen::MatrixXd hess;
};

Monomial eval_monomial(const VectorFieldSystem::PolynomialTerm& t, const Eigen::VectorXd& s,
                       bool need_hess) {
  const Eigen::Index e = s.size();
  auto prod_except = [&](Eigen::Index skip1, int drop1, Eigen::Index skip2, int drop2) {
    double r = t.coefficient;
    for (Eigen::Index m = 0; m < e; ++m) {
      int p = t.powers[static_cast<std::size_t>(m)];
      if (m == skip1) p -= drop1;
      if (m == skip2) p -= drop2;
      if (p < 0) return 0.0;
      r *= ipow(s(m), p);
    }
    return r;
  };
  Monomial out{prod_except(-1, 0, -1, 0), Eigen::VectorXd::Zero(e), Eigen::MatrixXd()};
  for (Eigen::Index l = 0; l < e; ++l) {
    const int pl = t.powers[static_cast<std::size_t>(l)];
    if (pl > 0) out.grad(l) = pl * prod_except(l, 1, -1, 0);
  }
  if (need_hess) {
    out.hess = Eigen::MatrixXd::Zero(e, e);
    for (Eigen::Index l = 0; l < e; ++l) {
      const int pl = t.powers[static_cast<std::size_t>(l)];
      if (pl == 0) continue;
      for (Eigen::Index m = 0; m < e; ++m) {
        const int pm = t.powers[static_cast<std::size_t>(m)];
        if (l == m) {
          if (pl >= 2) out.hess(l, l) = pl * (pl - 1) * prod_except(l, 2, -1, 0);
        } else if (pm > 0) {
          out.hess(l, m) = pl * pm * prod_except(l, 1, m, 1);
        }
      }
    }
  }
  return out;
}

}  // namespace

VectorFieldSystem VectorFieldSystem::polynomial(Eigen::Index state_dim, std::size_t driver_dim,
                                                std::vector<PolynomialTerm> terms, double cutoff) {
  bool drift = false;
  for (const auto& t : terms) {
    if (t.field > driver_dim) throw InvalidInput("polynomial system: field index out of range");
    if (t.component < 0 || t.component >= state_dim) {
      throw InvalidInput("polynomial system: component index out of range");
    }
    if (static_cast<Eigen::Index>(t.powers.size()) != state_dim) {
      throw InvalidInput("polynomial system: one exponent per state coordinate required");
    }
    int deg = 0;
    for (int p : t.powers) {
      if (p < 0) throw InvalidInput("polynomial system: negative exponent");
      deg += p;
    }
    if (deg > 3) throw InvalidInput("polynomial system: total degree must be <= 3");
    if (t.field == 0 && t.coefficient != 0.0) drift = true;
  }
  const bool use_cutoff = cutoff > 0.0 && std::isfinite(cutoff);

  // s(y), s'(y), s''(y) componentwise.
  auto squash = [use_cutoff, cutoff](const Eigen::VectorXd& y, Eigen::VectorXd& s,
                                     Eigen::VectorXd& ds, Eigen::VectorXd& dds) {
    const Eigen::Index e = y.size();
    s.resize(e);
    ds.resize(e);
    dds.resize(e);
    for (Eigen::Index m = 0; m < e; ++m) {
      if (!use_cutoff) {
        s(m) = y(m);
        ds(m) = 1.0;
        dds(m) = 0.0;
      } else {
        const double th = std::tanh(y(m) / cutoff);
        s(m) = cutoff * th;
        ds(m) = 1.0 - th * th;
        dds(m) = -2.0 * th * ds(m) / cutoff;
      }
    }
  };

  auto field = [terms, squash, state_dim](std::size_t i, const Eigen::VectorXd& y) {
    Eigen::VectorXd s, ds, dds;
    squash(y, s, ds, dds);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(state_dim);
    for (const auto& t : terms) {
      if (t.field == i) out(t.component) += eval_monomial(t, s, false).value;
    }
    return out;
  };
  auto jac = [terms, squash, state_dim](std::size_t i, const Eigen::VectorXd& y) {
    Eigen::VectorXd s, ds, dds;
    squash(y, s, ds, dds);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(state_dim, state_dim);
    for (const auto& t : terms) {
      if (t.field != i) continue;
      const auto mono = eval_monomial(t, s, false);
      out.row(t.component) += (mono.grad.array() * ds.array()).matrix().transpose();
    }
    return out;
  };
  auto sec = [terms, squash, state_dim](std::size_t i, const Eigen::VectorXd& y,
                                        const Eigen::VectorXd& v) {
    Eigen::VectorXd s, ds, dds;
    squash(y, s, ds, dds);
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(state_dim, state_dim);
    for (const auto& t : terms) {
      if (t.field != i) continue;
      const auto mono = eval_monomial(t, s, true);
      // d^2/dy_l dy_m = H_lm s'_l s'_m + delta_lm g_l s''_l, contracted with v_m.
      for (Eigen::Index l = 0; l < state_dim; ++l) {
        double acc = mono.grad(l) * dds(l) * v(l);
        for (Eigen::Index m = 0; m < state_dim; ++m) acc += mono.hess(l, m) * ds(l) * ds(m) * v(m);
        out(t.component, l) += acc;
      }
    }
    return out;
  };
  return {state_dim, driver_dim, field, jac, sec, drift, "polynomial"};
}

std::vector<VectorFieldSystem::PolynomialTerm> parse_polynomial_terms(std::istream& in,
                                                                      Eigen::Index state_dim) {
  std::vector<VectorFieldSystem::PolynomialTerm> terms;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    VectorFieldSystem::PolynomialTerm t;
    long component = 0;
    ls >> t.field >> component >> t.coefficient;
    t.component = static_cast<Eigen::Index>(component);
    t.powers.resize(static_cast<std::size_t>(state_dim));
    for (auto& p : t.powers) ls >> p;
    std::string rest;
    if (!ls || (ls >> rest)) {
      throw InvalidInput("polynomial terms: malformed line " + std::to_string(lineno) +
                         " (expected: field component coefficient p_1 .. p_e)");
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

}  // namespace roughdens
