#include "slpkit/geometry.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace slp {

Constellation psk_constellation(int order) {
  if (order < 3) {
    throw std::invalid_argument("psk_constellation: order must be >= 3");
  }
  Constellation c;
  c.kind = ConstellationKind::Psk;
  c.psk_order = order;
  c.points.reserve(order);
  for (int m = 0; m < order; ++m) {
    const double theta = 2.0 * std::numbers::pi * m / order;
    c.points.emplace_back(std::cos(theta), std::sin(theta));
  }
  return c;
}

Constellation custom_constellation(std::vector<Eigen::Vector2d> points) {
  if (points.empty()) {
    throw std::invalid_argument("custom_constellation: empty point set");
  }
  double mean_power = 0.0;
  for (const auto& p : points) mean_power += p.squaredNorm();
  mean_power /= static_cast<double>(points.size());
  if (std::abs(mean_power - 1.0) > 1e-12) {
    throw std::invalid_argument("custom_constellation: points must have unit average power");
  }
  Constellation c;
  c.kind = ConstellationKind::Custom;
  c.points = std::move(points);
  return c;
}

CirMatrix dpcir_matrix(const Constellation& c, int symbol) {
  if (c.kind != ConstellationKind::Psk) {
    throw std::invalid_argument(
        "dpcir_matrix: automatic region construction is only available for PSK; "
        "supply CirMatrix values for custom constellations");
  }
  if (symbol < 0 || symbol >= c.size()) {
    throw std::invalid_argument("dpcir_matrix: symbol index out of range");
  }
  const int m = c.psk_order;
  const double theta = 2.0 * std::numbers::pi * symbol / m;
  const double offset = std::numbers::pi / 2.0 - std::numbers::pi / m;
  CirMatrix cir;
  cir.symbol_index = symbol;
  cir.a << std::cos(theta - offset), std::sin(theta - offset),
           std::cos(theta + offset), std::sin(theta + offset);
  return cir;
}

int ml_detect(const Constellation& c, const Eigen::Vector2d& y) {
  if (c.points.empty()) {
    throw std::invalid_argument("ml_detect: empty constellation");
  }
  int best = 0;
  double best_dist = (y - c.points[0]).squaredNorm();
  for (int k = 1; k < c.size(); ++k) {
    const double d = (y - c.points[k]).squaredNorm();
    if (d < best_dist) {
      best_dist = d;
      best = k;
    }
  }
  return best;
}

}  // namespace slp
