#include "slpkit/robustcons.hpp"

#include <cmath>
#include <stdexcept>

#include "slpkit/mat2.hpp"

namespace slp {

std::string_view method_name(RobustMethod m) {
  switch (m) {
    case RobustMethod::NonRobust: return "non_robust";
    case RobustMethod::WorstCase: return "worst_case";
    case RobustMethod::SafeApprox1: return "safe_approx1";
    case RobustMethod::SafeApprox2: return "safe_approx2";
    case RobustMethod::SphereBounding: return "sphere_bounding";
  }
  return "unknown";
}

std::optional<RobustMethod> method_from_name(std::string_view name) {
  if (name == "non_robust") return RobustMethod::NonRobust;
  if (name == "worst_case") return RobustMethod::WorstCase;
  if (name == "safe_approx1") return RobustMethod::SafeApprox1;
  if (name == "safe_approx2") return RobustMethod::SafeApprox2;
  if (name == "sphere_bounding") return RobustMethod::SphereBounding;
  return std::nullopt;
}

AffineResidual residual(const CirMatrix& cir, const Eigen::Matrix2Xd& h_hat,
                        const Eigen::Vector2d& symbol, double sigma, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("residual: gamma must be >= 0");
  if (!(sigma > 0.0)) throw std::invalid_argument("residual: sigma must be > 0");
  AffineResidual r;
  r.m = sigma * std::sqrt(gamma) * (cir.a * symbol);
  r.w = cir.a * h_hat;
  return r;
}

namespace {

double stochastic_coeff(RobustMethod method, double upsilon) {
  switch (method) {
    case RobustMethod::SafeApprox1: return rho_coeff(upsilon);
    case RobustMethod::SafeApprox2: return psi_coeff(upsilon);
    case RobustMethod::SphereBounding: return alpha_coeff(upsilon);
    default: throw std::invalid_argument("not a stochastic method");
  }
}

}  // namespace

ConstraintSet build_constraints(RobustMethod method, std::span<const UserContext> users,
                                const RobustParams& params) {
  ConstraintSet cs;
  cs.method = method;

  const bool stochastic = method == RobustMethod::SafeApprox1 ||
                          method == RobustMethod::SafeApprox2 ||
                          method == RobustMethod::SphereBounding;
  if (method == RobustMethod::WorstCase && !(params.epsilon > 0.0)) {
    throw std::invalid_argument("build_constraints: worst_case requires epsilon > 0");
  }
  if (stochastic) {
    if (!(params.xi > 0.0)) {
      throw std::invalid_argument("build_constraints: stochastic methods require xi > 0");
    }
    if (!(params.upsilon > 0.0 && params.upsilon <= 0.5)) {
      throw std::domain_error("build_constraints: upsilon must lie in (0, 1/2]");
    }
  }

  for (const UserContext& user : users) {
    const AffineResidual res = residual(user.cir, user.h_hat, user.symbol, user.sigma, user.gamma);

    switch (method) {
      case RobustMethod::NonRobust: {
        // Rows of A*H_hat*u >= sigma*sqrt(gamma)*A*s.
        for (int j = 0; j < 2; ++j) {
          LinearConstraint lc;
          lc.c = res.w.row(j).transpose();
          lc.d = res.m(j);
          cs.linear.push_back(std::move(lc));
        }
        break;
      }
      case RobustMethod::WorstCase: {
        // ||u|| <= (a_j' H_hat u - sigma*sqrt(gamma) a_j' s) / (eps*||a_j||)
        for (int j = 0; j < 2; ++j) {
          const double scale = 1.0 / (params.epsilon * user.cir.a.row(j).norm());
          SocConstraint sc;
          sc.f = scale * res.w.row(j).transpose();
          sc.g = -scale * res.m(j);
          cs.soc.push_back(std::move(sc));
        }
        break;
      }
      default: {
        const double beta = stochastic_coeff(method, params.upsilon);
        const Eigen::Matrix2d v = inv_sqrt_2x2(user.cir.a * user.cir.a.transpose());
        const Eigen::Matrix2Xd vw = v * res.w;
        const Eigen::Vector2d vm = v * res.m;
        const double scale = std::sqrt(2.0) / (beta * params.xi);
        for (int j = 0; j < 2; ++j) {
          SocConstraint sc;
          sc.f = scale * vw.row(j).transpose();
          sc.g = -scale * vm(j);
          cs.soc.push_back(std::move(sc));
        }
        break;
      }
    }
  }
  return cs;
}

bool check_feasible(const Eigen::VectorXd& u, const ConstraintSet& cs, double tol) {
  for (const LinearConstraint& lc : cs.linear) {
    if (lc.c.size() != u.size()) throw std::invalid_argument("check_feasible: dimension mismatch");
    if (lc.c.dot(u) < lc.d - tol) return false;
  }
  const double norm = u.norm();
  for (const SocConstraint& sc : cs.soc) {
    if (sc.f.size() != u.size()) throw std::invalid_argument("check_feasible: dimension mismatch");
    if (norm > sc.f.dot(u) + sc.g + tol) return false;
  }
  return true;
}

TightnessReport compare_tightness(double upsilon) {
  TightnessReport report;
  report.upsilon = upsilon;
  report.rho = rho_coeff(upsilon);
  report.psi = psi_coeff(upsilon);
  report.alpha = alpha_coeff(upsilon);

  // Larger coefficient => smaller feasible set. alpha is the largest on the
  // whole domain; rho and psi cross near upsilon ~ 0.12.
  if (report.psi <= report.rho) {
    report.tightest = RobustMethod::SafeApprox2;
    report.nesting = {RobustMethod::SphereBounding, RobustMethod::SafeApprox1,
                      RobustMethod::SafeApprox2};
  } else {
    report.tightest = RobustMethod::SafeApprox1;
    report.nesting = {RobustMethod::SphereBounding, RobustMethod::SafeApprox2,
                      RobustMethod::SafeApprox1};
  }
  return report;
}

}  // namespace slp
