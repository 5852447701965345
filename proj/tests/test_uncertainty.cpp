#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "slpkit/geometry.hpp"
#include "slpkit/mat2.hpp"
#include "slpkit/uncertainty.hpp"

using namespace slp;

namespace {

Eigen::VectorXd random_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = rng.gaussian();
  return v;
}

// Random region matrix with an SPD Gram: two unit rows at a random relative
// angle away from 0 and pi.
Eigen::Matrix2d random_region_rows(Rng& rng) {
  const double a1 = 2.0 * M_PI * rng.uniform();
  const double rel = 0.3 + 2.4 * rng.uniform();  // keep away from collinear
  Eigen::Matrix2d a;
  a << std::cos(a1), std::sin(a1), std::cos(a1 + rel), std::sin(a1 + rel);
  return a;
}

}  // namespace

TEST_CASE("t_transform structure and complex product") {
  Eigen::RowVectorXcd h1(1);
  h1 << std::complex<double>(1, 0);
  CHECK((t_transform(h1) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);

  h1 << std::complex<double>(0, 1);
  Eigen::Matrix2d j;
  j << 0, -1, 1, 0;
  CHECK((t_transform(h1) - j).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(substream_seed(5, {0}));
  for (int rep = 0; rep < 50; ++rep) {
    const int n = 1 + rng.uniform_int(8);
    const Eigen::RowVectorXcd h = sample_channel(rng, n);
    Eigen::VectorXcd u(n);
    for (int i = 0; i < n; ++i) u(i) = std::complex<double>(rng.gaussian(), rng.gaussian());
    Eigen::VectorXd u_real(2 * n);
    u_real.head(n) = u.real();
    u_real.tail(n) = u.imag();
    const std::complex<double> direct = (h * u)(0);
    const Eigen::Vector2d lifted = t_transform(h) * u_real;
    CHECK(std::abs(lifted(0) - direct.real()) < 1e-12);
    CHECK(std::abs(lifted(1) - direct.imag()) < 1e-12);
    // Frobenius relation ||T(h)||_F = sqrt(2)*||h||
    CHECK(std::abs(t_transform(h).norm() - std::sqrt(2.0) * h.norm()) < 1e-12);
  }
}

TEST_CASE("channel sampler statistics and determinism") {
  Rng rng(substream_seed(7, {1}));
  const int draws = 250000;
  const int n = 4;
  double mean_re = 0, mean_im = 0, var_entry = 0;
  for (int d = 0; d < draws; ++d) {
    const Eigen::RowVectorXcd h = sample_channel(rng, n);
    for (int i = 0; i < n; ++i) {
      mean_re += h(i).real();
      mean_im += h(i).imag();
      var_entry += std::norm(h(i));
    }
  }
  const double count = static_cast<double>(draws) * n;
  mean_re /= count;
  mean_im /= count;
  var_entry /= count;
  CHECK(std::abs(var_entry - 1.0) < 0.01);          // 1% of unit complex variance
  const double five_sigma = 5.0 / std::sqrt(count);  // per-part std is ~1/sqrt(2)
  CHECK(std::abs(mean_re) < five_sigma);
  CHECK(std::abs(mean_im) < five_sigma);

  Rng a(substream_seed(11, {2}));
  Rng b(substream_seed(11, {2}));
  for (int rep = 0; rep < 10; ++rep) {
    CHECK((sample_channel(a, 6) - sample_channel(b, 6)).norm() == 0.0);
  }
  Rng c(substream_seed(11, {3}));
  CHECK((sample_channel(a, 6) - sample_channel(c, 6)).norm() != 0.0);
}

TEST_CASE("spherical error sampler") {
  Rng rng(substream_seed(13, {0}));
  CHECK(sample_spherical_error(rng, 5, 0.0, SphericalMode::Surface).norm() == 0.0);
  for (int rep = 0; rep < 1000; ++rep) {
    const double eps = 0.25;
    CHECK(std::abs(sample_spherical_error(rng, 3, eps, SphericalMode::Surface).norm() - eps) <
          1e-12);
  }
  // Ball mode, N=2 (4 real dims): E||e||^2 = eps^2 * 2N/(2N+2) = (2/3) eps^2.
  const double eps = 0.9;
  double acc = 0;
  const int draws = 1000000;
  for (int d = 0; d < draws; ++d) {
    acc += sample_spherical_error(rng, 2, eps, SphericalMode::Ball).squaredNorm();
  }
  acc /= draws;
  const double want = eps * eps * 2.0 / 3.0;
  CHECK(std::abs(acc - want) / want < 0.01);
  CHECK_THROWS_AS(sample_spherical_error(rng, 2, -1.0, SphericalMode::Ball),
                  std::invalid_argument);
}

TEST_CASE("gaussian error sampler") {
  Rng rng(substream_seed(17, {0}));
  CHECK(sample_gaussian_error(rng, 4, 0.0).norm() == 0.0);
  const double xi2 = 0.05;
  double var = 0;
  const int draws = 250000;
  for (int d = 0; d < draws; ++d) {
    const Eigen::RowVectorXcd e = sample_gaussian_error(rng, 4, xi2);
    var += e.squaredNorm();
  }
  var /= draws * 4;
  CHECK(std::abs(var - xi2) / xi2 < 0.01);

  Rng a(substream_seed(19, {0}));
  Rng b(substream_seed(19, {0}));
  CHECK((sample_gaussian_error(a, 5, 0.3) - sample_gaussian_error(b, 5, 0.3)).norm() == 0.0);
}

TEST_CASE("q covariance closed form and Monte Carlo") {
  CirMatrix cir;
  cir.a = Eigen::Matrix2d::Identity();
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(4);
  unit(1) = 1.0;
  CHECK((q_covariance(cir, unit, 2.0) - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() <
        1e-15);
  CHECK(q_covariance(cir, Eigen::VectorXd::Zero(4), 2.0).cwiseAbs().maxCoeff() == 0.0);

  // Monte Carlo check of the covariance identity for a random region matrix.
  Rng rng(substream_seed(23, {0}));
  const int n = 3;
  cir.a = random_region_rows(rng);
  const Eigen::VectorXd u = random_vector(rng, 2 * n);
  const double xi2 = 0.7;
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  const int draws = 1000000;
  for (int d = 0; d < draws; ++d) {
    const Eigen::RowVectorXcd e = sample_gaussian_error(rng, n, xi2);
    const Eigen::Vector2d q = cir.a * (t_transform(e) * u);
    acc += q * q.transpose();
  }
  acc /= draws;
  const Eigen::Matrix2d want = q_covariance(cir, u, xi2);
  CHECK((acc - want).norm() / want.norm() < 0.01);
}

TEST_CASE("whitening matrix") {
  CirMatrix cir;
  cir.a = Eigen::Matrix2d::Identity();
  Eigen::VectorXd unit = Eigen::VectorXd::Zero(2);
  unit(0) = 1.0;
  const Eigen::Matrix2d w = whitening_matrix(cir, unit, std::sqrt(2.0));
  CHECK((w - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(substream_seed(29, {0}));
  for (int rep = 0; rep < 30; ++rep) {
    cir.a = random_region_rows(rng);
    const Eigen::VectorXd u = random_vector(rng, 8);
    const double xi = 0.1 + rng.uniform();
    const Eigen::Matrix2d x = whitening_matrix(cir, u, xi);
    CHECK((x - x.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::Matrix2d cov = q_covariance(cir, u, xi * xi);
    CHECK((x * cov * x - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
  }

  // Whitened samples have identity covariance.
  cir.a = random_region_rows(rng);
  const Eigen::VectorXd u = random_vector(rng, 6);
  const double xi = 0.4;
  const Eigen::Matrix2d x = whitening_matrix(cir, u, xi);
  Eigen::Matrix2d acc = Eigen::Matrix2d::Zero();
  const int draws = 1000000;
  for (int d = 0; d < draws; ++d) {
    const Eigen::RowVectorXcd e = sample_gaussian_error(rng, 3, xi * xi);
    const Eigen::Vector2d qw = x * (cir.a * (t_transform(e) * u));
    acc += qw * qw.transpose();
  }
  acc /= draws;
  CHECK((acc - Eigen::Matrix2d::Identity()).norm() / std::sqrt(2.0) < 0.01);

  CHECK_THROWS_AS(whitening_matrix(cir, Eigen::VectorXd::Zero(6), 0.4), std::invalid_argument);
  CHECK_THROWS_AS(whitening_matrix(cir, u, 0.0), std::invalid_argument);
}

TEST_CASE("block covariance identity, deterministic matrix form") {
  // (u' kron A) Q (u kron A') = 1/2 xi^2 ||u||^2 A A' with the exact block
  // covariance of the lifted error: Q = 1/2 xi^2 [I, I_N kron J2; ., I].
  Rng rng(substream_seed(31, {0}));
  Eigen::Matrix2d j2;
  j2 << 0, 1, -1, 0;
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 1 + rng.uniform_int(6);
    const Eigen::Matrix2d a = random_region_rows(rng);
    const Eigen::VectorXd u = random_vector(rng, 2 * n);
    const double xi = 0.05 + rng.uniform();

    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(4 * n, 4 * n);
    q.topLeftCorner(2 * n, 2 * n).setIdentity();
    q.bottomRightCorner(2 * n, 2 * n).setIdentity();
    Eigen::MatrixXd jn = Eigen::MatrixXd::Zero(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) jn.block(2 * i, 2 * i, 2, 2) = j2;
    q.topRightCorner(2 * n, 2 * n) = jn;
    q.bottomLeftCorner(2 * n, 2 * n) = jn.transpose();
    q *= 0.5 * xi * xi;

    Eigen::MatrixXd lift(2, 4 * n);  // u' kron A
    for (int i = 0; i < 2 * n; ++i) lift.block(0, 2 * i, 2, 2) = u(i) * a;

    const Eigen::Matrix2d lhs = lift * q * lift.transpose();
    const Eigen::Matrix2d rhs = 0.5 * xi * xi * u.squaredNorm() * (a * a.transpose());
    CHECK((lhs - rhs).norm() / rhs.norm() < 1e-10);
  }
}

TEST_CASE("substream derivation is order independent") {
  const auto s1 = substream_seed(1234, {7, 3});
  const auto s2 = substream_seed(1234, {7, 3});
  CHECK(s1 == s2);
  CHECK(s1 != substream_seed(1234, {3, 7}));
  CHECK(s1 != substream_seed(1235, {7, 3}));
  CHECK(substream_seed(1234, {7}) != substream_seed(1234, {8}));
}
