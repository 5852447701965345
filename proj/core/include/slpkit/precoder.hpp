#pragma once

#include <limits>
#include <vector>

#include "slpkit/robustcons.hpp"
#include "slpkit/socp.hpp"

namespace slp {

/// One symbol slot's design inputs: per-user channel-estimate lifts, intended
/// symbols, region matrices, noise levels and SINR targets.
struct SlpInstance {
  int n_antennas = 0;
  std::vector<UserContext> users;

  int n_users() const { return static_cast<int>(users.size()); }
  void validate() const;  // dimension consistency and K <= N
};

struct PrecoderOutput {
  SolveStatus status = SolveStatus::IterLimit;
  Eigen::VectorXd u;  // real 2N transmit vector, set when Optimal
  double power = std::numeric_limits<double>::quiet_NaN();   // t*^2, watts
  double norm_t = std::numeric_limits<double>::quiet_NaN();  // t* = ||u||
  int iterations = 0;
  Residuals residuals;
};

/// Epigraph form over x = (u, t): minimize t with one SOC row ||u|| <= t;
/// each SOC constraint becomes its own cone block (f'u + g, u) and each
/// linear row lands in the orthant. Power is recovered as t*^2.
ConicProblem assemble(const SlpInstance& instance, RobustMethod method,
                      const RobustParams& params);

/// Assembles, solves, and extracts the transmit vector. Infeasibility is an
/// expected outcome for robust methods and is passed through as a status.
PrecoderOutput solve_slp(const SlpInstance& instance, RobustMethod method,
                         const RobustParams& params, const SolverSettings& settings = {});

enum class DesignProblem { NonRobust, Robust };  // P1 / P2

/// Analytic interior-point complexity bound for the design problem, with the
/// O(.) constant taken as 1. The bound scales with the reported multiplier
/// (the accuracy factor ln(1/eps)), which is not folded into the value.
struct ComplexityBound {
  double value = 0.0;
  const char* multiplier = "ln(1/eps)";
};

ComplexityBound complexity_bound(int n_antennas, int n_users, DesignProblem which);

}  // namespace slp
