#include "slpkit/precoder.hpp"

#include <cmath>
#include <stdexcept>

namespace slp {

void SlpInstance::validate() const {
  if (n_antennas < 1) throw std::invalid_argument("SlpInstance: need at least one antenna");
  if (users.empty()) throw std::invalid_argument("SlpInstance: need at least one user");
  if (n_users() > n_antennas) {
    throw std::invalid_argument("SlpInstance: requires K <= N (users cannot exceed antennas)");
  }
  for (const UserContext& u : users) {
    if (u.h_hat.cols() != 2 * n_antennas) {
      throw std::invalid_argument("SlpInstance: channel lift must be 2 x 2N");
    }
  }
}

ConicProblem assemble(const SlpInstance& instance, RobustMethod method,
                      const RobustParams& params) {
  instance.validate();
  const ConstraintSet cs = build_constraints(method, instance.users, params);

  const int nu = 2 * instance.n_antennas;  // real transmit dimension
  const int n = nu + 1;                    // variables (u, t)
  const int l = static_cast<int>(cs.linear.size());
  const int n_soc = static_cast<int>(cs.soc.size());
  const int block = nu + 1;  // every SOC block is (head, u)
  const int m = l + (1 + n_soc) * block;

  ConicProblem p;
  p.c = Eigen::VectorXd::Zero(n);
  p.c(nu) = 1.0;
  p.a = Eigen::MatrixXd::Zero(m, n);
  p.b = Eigen::VectorXd::Zero(m);
  p.cones.orthant = l;
  p.cones.soc.assign(1 + n_soc, block);

  int row = 0;
  for (const LinearConstraint& lc : cs.linear) {
    p.a.row(row).head(nu) = -lc.c.transpose();
    p.b(row) = -lc.d;
    ++row;
  }
  // Power epigraph block: s = (t, u).
  p.a(row, nu) = -1.0;
  p.a.block(row + 1, 0, nu, nu) = -Eigen::MatrixXd::Identity(nu, nu);
  row += block;
  for (const SocConstraint& sc : cs.soc) {
    p.a.row(row).head(nu) = -sc.f.transpose();
    p.b(row) = sc.g;
    p.a.block(row + 1, 0, nu, nu) = -Eigen::MatrixXd::Identity(nu, nu);
    row += block;
  }
  return p;
}

PrecoderOutput solve_slp(const SlpInstance& instance, RobustMethod method,
                         const RobustParams& params, const SolverSettings& settings) {
  const ConicProblem p = assemble(instance, method, params);
  const SolveResult r = solve(p, settings);

  PrecoderOutput out;
  out.status = r.status;
  out.iterations = r.iterations;
  out.residuals = r.residuals;
  if (r.status == SolveStatus::Optimal) {
    const int nu = 2 * instance.n_antennas;
    out.u = r.x.head(nu);
    out.norm_t = r.x(nu);
    out.power = out.norm_t * out.norm_t;
  }
  return out;
}

ComplexityBound complexity_bound(int n_antennas, int n_users, DesignProblem which) {
  if (n_users < 1 || n_antennas < n_users) {
    throw std::invalid_argument("complexity_bound: requires N >= K >= 1");
  }
  const double n = n_antennas;
  const double k = n_users;
  const double v = 2.0 * n + 1.0;  // variable count
  ComplexityBound cb;
  if (which == DesignProblem::NonRobust) {
    cb.value = 2.0 * std::sqrt(2.0 * k + 2.0) * (v * v * v + (2.0 * k + 1.0) * v * (n + 1.0));
  } else {
    cb.value = 2.0 * std::sqrt(4.0 * k + 3.0) *
               (v * v * v + 4.0 * k * n * n * v + v * (n + 1.0));
  }
  return cb;
}

}  // namespace slp
