#pragma once

#include <Eigen/Dense>

namespace slp {

/// True when m is (numerically) symmetric positive definite.
/// Uses the trace/determinant test with the guard det >= 1e-12 * trace^2,
/// which rejects near-collinear Gram matrices.
bool is_spd_2x2(const Eigen::Matrix2d& m);

/// Principal square root of an SPD 2x2 matrix, closed form:
/// sqrt(m) = (m + sqrt(det(m)) I) / sqrt(trace(m) + 2 sqrt(det(m))).
Eigen::Matrix2d sqrt_2x2(const Eigen::Matrix2d& m);

/// Inverse principal square root of an SPD 2x2 matrix.
/// Throws std::invalid_argument on a singular or indefinite input.
Eigen::Matrix2d inv_sqrt_2x2(const Eigen::Matrix2d& m);

}  // namespace slp
