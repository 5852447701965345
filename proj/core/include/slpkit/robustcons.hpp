#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "slpkit/geometry.hpp"
#include "slpkit/specfun.hpp"

namespace slp {

enum class RobustMethod {
  NonRobust,
  WorstCase,      // norm-bounded uncertainty, Cauchy-Schwarz infimum
  SafeApprox1,    // probability bounding, coefficient rho
  SafeApprox2,    // arrow-matrix safe bound, coefficient psi
  SphereBounding, // chi-square ball benchmark, coefficient alpha
};

std::string_view method_name(RobustMethod m);
std::optional<RobustMethod> method_from_name(std::string_view name);

/// Certain part of the region inequality, w(u) = m - W*u with
/// m = sigma*sqrt(gamma)*A*s and W = A*H_hat.
struct AffineResidual {
  Eigen::Vector2d m;
  Eigen::Matrix2Xd w;

  Eigen::Vector2d eval(const Eigen::VectorXd& u) const { return m - w * u; }
};

AffineResidual residual(const CirMatrix& cir, const Eigen::Matrix2Xd& h_hat,
                        const Eigen::Vector2d& symbol, double sigma, double gamma);

/// ||u|| <= f'u + g
struct SocConstraint {
  Eigen::VectorXd f;
  double g = 0.0;
};

/// c'u >= d
struct LinearConstraint {
  Eigen::VectorXd c;
  double d = 0.0;
};

struct ConstraintSet {
  RobustMethod method = RobustMethod::NonRobust;
  std::vector<SocConstraint> soc;
  std::vector<LinearConstraint> linear;
};

/// Per-user data needed to form that user's region constraints.
struct UserContext {
  CirMatrix cir;
  Eigen::Matrix2Xd h_hat;   // 2 x 2N channel-estimate lift
  Eigen::Vector2d symbol;
  double sigma = 1.0;       // noise standard deviation
  double gamma = 1.0;       // SINR target (linear)
};

struct RobustParams {
  double epsilon = 0.0;  // WorstCase radius
  double xi = 0.0;       // Gaussian error standard deviation
  double upsilon = 0.0;  // violation probability, (0, 1/2]
};

/// Emits the chosen method's constraints over the real transmit vector.
/// NonRobust yields 2K linear rows; every robust method yields 2K SOC rows
/// (the probability-bounding entrywise-max form expands exactly into its
/// two rows, since the shared coefficient is positive).
ConstraintSet build_constraints(RobustMethod method, std::span<const UserContext> users,
                                const RobustParams& params);

/// Every linear row c'u >= d - tol and every SOC row ||u|| <= f'u + g + tol.
bool check_feasible(const Eigen::VectorXd& u, const ConstraintSet& cs, double tol);

/// Coefficient comparison at one violation probability: smaller coefficient
/// means a looser constraint, hence a larger feasible set.
struct TightnessReport {
  double upsilon = 0.0;
  double rho = 0.0;
  double psi = 0.0;
  double alpha = 0.0;
  RobustMethod tightest = RobustMethod::SafeApprox2;  // smallest coefficient
  // Feasible-set inclusion chain, smallest set first.
  std::array<RobustMethod, 3> nesting{};
};

TightnessReport compare_tightness(double upsilon);

}  // namespace slp
