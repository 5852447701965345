#pragma once

#include <iosfwd>
#include <limits>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace slp {

/// Cone of the slack vector s: first `orthant` coordinates nonnegative,
/// followed by second-order cone blocks of the listed dimensions (>= 2 each,
/// first coordinate of a block is the cone height).
struct ConeSpec {
  int orthant = 0;
  std::vector<int> soc;

  int rows() const;
};

/// Standard-form cone program
///   minimize c'x  subject to  A x + s = b,  s in K.
/// Dense data; intended for desk-scale problems (tens of variables,
/// a few hundred rows).
struct ConicProblem {
  Eigen::VectorXd c;
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  ConeSpec cones;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, IterLimit };

std::string_view status_name(SolveStatus s);

struct Residuals {
  double primal = std::numeric_limits<double>::quiet_NaN();
  double dual = std::numeric_limits<double>::quiet_NaN();
  double gap = std::numeric_limits<double>::quiet_NaN();
};

struct SolveResult {
  SolveStatus status = SolveStatus::IterLimit;
  Eigen::VectorXd x;            // solution (Optimal) or unbounded ray (DualInfeasible)
  Eigen::VectorXd y;            // dual vector (Optimal)
  Eigen::VectorXd s;            // primal slack (Optimal)
  Eigen::VectorXd certificate;  // primal-infeasibility certificate, scaled so b'y = -1
  double objective = std::numeric_limits<double>::quiet_NaN();
  int iterations = 0;
  Residuals residuals;
};

struct SolverSettings {
  int max_iterations = 50000;
  double tolerance = 1e-8;         // relative primal/dual residual and gap
  double infeas_tolerance = 1e-7;  // normalized certificate residual
  double relaxation = 1.5;         // over-relaxation factor in (0, 2)
  bool normalize = true;           // Ruiz-style data equilibration
  int infeas_consecutive = 10;     // consecutive certificate hits required
};

/// Euclidean projection onto the second-order cone {(t, z) : ||z|| <= t}.
Eigen::VectorXd project_soc(const Eigen::VectorXd& v);

/// Homogeneous self-dual embedding solved by operator-splitting iterations:
/// one cached LU solve, a cone projection, and a dual update per iteration.
/// Optimality and infeasibility are always certified against the original
/// (unscaled) problem data. Deterministic for identical inputs and settings.
SolveResult solve(const ConicProblem& problem, const SolverSettings& settings = {});

/// Self-describing text dump (dimensions, cone spec, 17-significant-digit
/// entries) for cross-checking a problem against external solvers.
void dump_problem(const ConicProblem& problem, std::ostream& os);

}  // namespace slp
