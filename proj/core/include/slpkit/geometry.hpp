#pragma once

#include <vector>

#include <Eigen/Dense>

namespace slp {

enum class ConstellationKind { Psk, Custom };

/// A finite constellation with unit average power, points as (real, imag).
struct Constellation {
  ConstellationKind kind = ConstellationKind::Psk;
  int psk_order = 0;  // M for PSK, 0 otherwise
  std::vector<Eigen::Vector2d> points;

  int size() const { return static_cast<int>(points.size()); }
};

/// M-PSK constellation: M unit-circle points at angles 2*pi*m/M, m = 0..M-1.
/// M = 2 would give coincident region boundaries (singular A), so M >= 3.
Constellation psk_constellation(int order);

/// Custom constellation from explicit points; validates unit average power.
/// Region matrices for custom constellations must be supplied by the caller.
Constellation custom_constellation(std::vector<Eigen::Vector2d> points);

/// Two-row region description of one constellation point: the rows of `a`
/// are the unit inner normals of the two distance-preserving boundaries,
/// so membership of y at scale mu reads a*y >= mu * a*s entrywise.
struct CirMatrix {
  Eigen::Matrix2d a;
  int symbol_index = 0;
};

/// Region matrix for PSK point k: boundary normals at angles
/// theta_k -/+ (pi/2 - pi/M). Throws for custom constellations.
CirMatrix dpcir_matrix(const Constellation& c, int symbol);

/// Maximum-likelihood detection: index of the nearest constellation point.
/// Ties resolve to the lowest index.
int ml_detect(const Constellation& c, const Eigen::Vector2d& y);

}  // namespace slp
