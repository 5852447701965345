#include "slpkit/mat2.hpp"

#include <cmath>
#include <stdexcept>

namespace slp {

bool is_spd_2x2(const Eigen::Matrix2d& m) {
  const double tr = m.trace();
  const double det = m.determinant();
  return tr > 0.0 && det > 1e-12 * tr * tr;
}

Eigen::Matrix2d sqrt_2x2(const Eigen::Matrix2d& m) {
  if (!is_spd_2x2(m)) {
    throw std::invalid_argument("sqrt_2x2: singular Gram matrix (input not SPD)");
  }
  const double sd = std::sqrt(m.determinant());
  return (m + sd * Eigen::Matrix2d::Identity()) / std::sqrt(m.trace() + 2.0 * sd);
}

Eigen::Matrix2d inv_sqrt_2x2(const Eigen::Matrix2d& m) {
  const Eigen::Matrix2d s = sqrt_2x2(m);
  const double det = s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
  Eigen::Matrix2d inv;
  inv << s(1, 1), -s(0, 1), -s(1, 0), s(0, 0);
  return inv / det;
}

}  // namespace slp
