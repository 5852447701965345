#pragma once

namespace slp {

/// Inverse complementary error function on (0, 2).
///
/// Seeded with an inverse-normal rational approximation (Acklam) and refined
/// by Newton iterations against std::erfc; deep-tail inputs switch to a
/// log-domain Newton step so the residual stays below 1e-13 relative all the
/// way down to y ~ 1e-300. Throws std::domain_error outside (0, 2).
double erfc_inv(double y);

// Conservatism coefficients of the three stochastic robust constraint
// families, all defined for violation probability upsilon in (0, 1/2].
// Each is strictly positive and strictly decreasing on that interval.
double rho_coeff(double upsilon);    // probability bounding:  -sqrt(2)*erfc_inv(2*sqrt(1-u))
double psi_coeff(double upsilon);    // arrow-matrix safe bound: erfc_inv(u/4)
double alpha_coeff(double upsilon);  // sphere bounding: sqrt of the 2-dof chi-square quantile, sqrt(-2*ln u)

}  // namespace slp
