#include "slpkit/uncertainty.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "slpkit/mat2.hpp"

namespace slp {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

std::uint64_t substream_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path) {
  std::uint64_t s = splitmix64(root);
  for (std::uint64_t tag : path) {
    s = splitmix64(s ^ (0x9E3779B97F4A7C15ULL * (tag + 1)));
  }
  return s;
}

double Rng::gaussian() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // u1 in (0, 1] so the log is finite.
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

int Rng::uniform_int(int bound) {
  if (bound <= 0) throw std::invalid_argument("Rng::uniform_int: bound must be positive");
  const int v = static_cast<int>(uniform() * bound);
  return v < bound ? v : bound - 1;
}

Eigen::Matrix2Xd t_transform(const Eigen::RowVectorXcd& h) {
  const Eigen::Index n = h.size();
  Eigen::Matrix2Xd out(2, 2 * n);
  out.block(0, 0, 1, n) = h.real();
  out.block(0, n, 1, n) = -h.imag();
  out.block(1, 0, 1, n) = h.imag();
  out.block(1, n, 1, n) = h.real();
  return out;
}

UncertaintyModel UncertaintyModel::spherical(double epsilon) {
  if (epsilon < 0.0) throw std::invalid_argument("spherical uncertainty: radius must be >= 0");
  UncertaintyModel m;
  m.kind = UncertaintyKind::Spherical;
  m.epsilon = epsilon;
  return m;
}

UncertaintyModel UncertaintyModel::gaussian(double xi2) {
  if (xi2 < 0.0) throw std::invalid_argument("gaussian uncertainty: variance must be >= 0");
  UncertaintyModel m;
  m.kind = UncertaintyKind::Gaussian;
  m.xi2 = xi2;
  return m;
}

Eigen::RowVectorXcd sample_channel(Rng& rng, int n) {
  Eigen::RowVectorXcd h(n);
  constexpr double scale = 0.7071067811865476;  // per-entry complex variance 1
  for (int i = 0; i < n; ++i) {
    h(i) = std::complex<double>(scale * rng.gaussian(), scale * rng.gaussian());
  }
  return h;
}

Eigen::RowVectorXcd sample_spherical_error(Rng& rng, int n, double epsilon, SphericalMode mode) {
  if (epsilon < 0.0) throw std::invalid_argument("sample_spherical_error: radius must be >= 0");
  Eigen::RowVectorXcd dir(n);
  for (int i = 0; i < n; ++i) {
    dir(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
  }
  const double norm = dir.norm();
  if (epsilon == 0.0 || norm == 0.0) return Eigen::RowVectorXcd::Zero(n);
  double radius = epsilon;
  if (mode == SphericalMode::Ball) {
    // Uniform density over the 2N-real-dimensional ball.
    radius *= std::pow(rng.uniform(), 1.0 / (2.0 * n));
  }
  return dir * (radius / norm);
}

Eigen::RowVectorXcd sample_gaussian_error(Rng& rng, int n, double xi2) {
  if (xi2 < 0.0) throw std::invalid_argument("sample_gaussian_error: variance must be >= 0");
  Eigen::RowVectorXcd e(n);
  const double scale = std::sqrt(0.5 * xi2);
  for (int i = 0; i < n; ++i) {
    e(i) = std::complex<double>(scale * rng.gaussian(), scale * rng.gaussian());
  }
  return e;
}

Eigen::Matrix2d q_covariance(const CirMatrix& cir, const Eigen::VectorXd& u, double xi2) {
  return 0.5 * xi2 * u.squaredNorm() * (cir.a * cir.a.transpose());
}

Eigen::Matrix2d whitening_matrix(const CirMatrix& cir, const Eigen::VectorXd& u, double xi) {
  const double norm = u.norm();
  if (!(norm > 0.0) || !(xi > 0.0)) {
    throw std::invalid_argument("whitening_matrix: degenerate whitening (zero xi or zero vector)");
  }
  return (std::sqrt(2.0) / (xi * norm)) * inv_sqrt_2x2(cir.a * cir.a.transpose());
}

}  // namespace slp
