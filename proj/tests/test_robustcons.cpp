#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slpkit/geometry.hpp"
#include "slpkit/mat2.hpp"
#include "slpkit/robustcons.hpp"
#include "slpkit/uncertainty.hpp"

using namespace slp;

namespace {

// Independent oracle: bisection on std::erfc, which is strictly decreasing.
double erfc_inv_bisect(double y) {
  double lo = -30.0, hi = 30.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (std::erfc(mid) > y) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<UserContext> random_users(Rng& rng, int n, int k, double gamma) {
  const Constellation c = psk_constellation(8);
  std::vector<UserContext> users;
  for (int i = 0; i < k; ++i) {
    UserContext u;
    const int s = rng.uniform_int(8);
    u.cir = dpcir_matrix(c, s);
    u.symbol = c.points[s];
    u.h_hat = t_transform(sample_channel(rng, n));
    u.sigma = 1.0;
    u.gamma = gamma;
    users.push_back(std::move(u));
  }
  return users;
}

Eigen::VectorXd random_vector(Rng& rng, int n, double scale) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = scale * rng.gaussian();
  return v;
}

}  // namespace

TEST_CASE("erfc_inv values and residuals") {
  CHECK(erfc_inv(1.0) == 0.0);
  CHECK(std::abs(erfc_inv(0.0125) - 1.766) < 1e-3);                 // bisection-oracle level
  CHECK(std::abs(erfc_inv(0.0125) - 1.7661444783637517) < 1e-12);   // frozen
  CHECK(std::abs(erfc_inv(0.0125) - erfc_inv_bisect(0.0125)) < 1e-12);

  // reflection identity
  for (double y : {0.0506, 0.3, 0.9, 1.2}) {
    CHECK(std::abs(erfc_inv(2.0 - y) + erfc_inv(y)) < 1e-13);
  }

  // relative residual across the domain, including the deep tail
  for (double y = 1e-300; y < 2.0; y *= 3.7) {
    const double x = erfc_inv(y);
    CHECK(std::abs(std::erfc(x) - y) <= 1e-13 * std::max(y, 1e-300));
  }
  for (double y : {1.5, 1.9, 1.99, 1.999999}) {
    CHECK(std::abs(std::erfc(erfc_inv(y)) - y) <= 1e-13 * y);
  }

  CHECK_THROWS_AS(erfc_inv(0.0), std::domain_error);
  CHECK_THROWS_AS(erfc_inv(2.0), std::domain_error);
  CHECK_THROWS_AS(erfc_inv(-0.5), std::domain_error);
  CHECK_THROWS_AS(erfc_inv(2.5), std::domain_error);
}

TEST_CASE("conservatism coefficients") {
  // frozen reference values at upsilon = 0.05
  CHECK(std::abs(rho_coeff(0.05) - 1.9545083272139916) < 1e-12);
  CHECK(std::abs(psi_coeff(0.05) - 1.7661444783637517) < 1e-12);
  CHECK(std::abs(alpha_coeff(0.05) - 2.4477468306808166) < 1e-12);
  CHECK(std::abs(alpha_coeff(0.05) - std::sqrt(-2.0 * std::log(0.05))) < 1e-15);

  // ordering flips across the crossover; alpha stays largest
  CHECK(psi_coeff(0.05) < rho_coeff(0.05));
  CHECK(rho_coeff(0.05) < alpha_coeff(0.05));
  CHECK(std::abs(rho_coeff(0.2) - 1.2504214910006979) < 1e-12);
  CHECK(std::abs(psi_coeff(0.2) - 1.3859038243496782) < 1e-12);
  CHECK(rho_coeff(0.2) < psi_coeff(0.2));

  double prev_r = 1e300, prev_p = 1e300, prev_a = 1e300;
  double cross_lo = 0.0, cross_hi = 0.0;
  for (int i = 1; i <= 100; ++i) {
    const double u = 0.5 * i / 100.0;
    const double r = rho_coeff(u);
    const double p = psi_coeff(u);
    const double a = alpha_coeff(u);
    CHECK(r > 0.0);
    CHECK(p > 0.0);
    CHECK(a > 0.0);
    CHECK(r < prev_r);
    CHECK(p < prev_p);
    CHECK(a < prev_a);
    CHECK(a > r);
    CHECK(a > p);
    if (u <= 0.10) CHECK(p < r);
    if (u >= 0.14) CHECK(r < p);
    if (p < r) cross_lo = u;
    if (cross_hi == 0.0 && r < p) cross_hi = u;
    prev_r = r;
    prev_p = p;
    prev_a = a;
  }
  CHECK(cross_lo >= 0.10);
  CHECK(cross_hi <= 0.14);

  CHECK_THROWS_AS(rho_coeff(0.0), std::domain_error);
  CHECK_THROWS_AS(psi_coeff(0.6), std::domain_error);
  CHECK_THROWS_AS(alpha_coeff(-0.1), std::domain_error);
}

TEST_CASE("inverse square root, 2x2") {
  CHECK((inv_sqrt_2x2(Eigen::Matrix2d::Identity()) - Eigen::Matrix2d::Identity())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
  Eigen::Matrix2d d;
  d << 4, 0, 0, 9;
  Eigen::Matrix2d want;
  want << 0.5, 0, 0, 1.0 / 3.0;
  CHECK((inv_sqrt_2x2(d) - want).cwiseAbs().maxCoeff() < 1e-14);

  Rng rng(substream_seed(3, {0}));
  for (int rep = 0; rep < 100; ++rep) {
    Eigen::Matrix2d b;
    b << rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian();
    const Eigen::Matrix2d spd = b * b.transpose() + 0.05 * Eigen::Matrix2d::Identity();
    const Eigen::Matrix2d x = inv_sqrt_2x2(spd);
    CHECK((x * spd * x - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((x - x.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  }

  Eigen::Matrix2d singular;
  singular << 1, 1, 1, 1;
  CHECK_THROWS_AS(inv_sqrt_2x2(singular), std::invalid_argument);
  Eigen::Matrix2d negdef = -Eigen::Matrix2d::Identity();
  CHECK_THROWS_AS(inv_sqrt_2x2(negdef), std::invalid_argument);
  CHECK(!is_spd_2x2(singular));
  CHECK(is_spd_2x2(d));
}

TEST_CASE("affine residual") {
  CirMatrix cir;
  cir.a = Eigen::Matrix2d::Identity();
  const Eigen::Matrix2Xd eye = Eigen::Matrix2d::Identity();
  const Eigen::Vector2d s(0.6, 0.8);

  // gamma = 0 makes the certain part vanish at u = 0
  CHECK(residual(cir, eye, s, 1.0, 0.0).m.cwiseAbs().maxCoeff() == 0.0);

  // N=1, identity channel: w(u) = sqrt(gamma) s - u
  const AffineResidual r = residual(cir, eye, s, 1.0, 9.0);
  Rng rng(substream_seed(4, {0}));
  for (int rep = 0; rep < 20; ++rep) {
    const Eigen::VectorXd u = random_vector(rng, 2, 2.0);
    const Eigen::Vector2d direct = 3.0 * s - u;
    CHECK((r.eval(u) - direct).cwiseAbs().maxCoeff() < 1e-12);
  }

  // scaling the channel estimate scales W linearly
  const AffineResidual r2 = residual(cir, 2.5 * eye, s, 1.0, 9.0);
  CHECK((r2.w - 2.5 * r.w).cwiseAbs().maxCoeff() < 1e-14);
  CHECK_THROWS_AS(residual(cir, eye, s, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("non-robust constraints, single user closed form") {
  UserContext u;
  u.cir.a = Eigen::Matrix2d::Identity();
  u.symbol = Eigen::Vector2d(1, 1) / std::sqrt(2.0);
  u.h_hat = Eigen::Matrix2d::Identity();
  u.sigma = 1.0;
  u.gamma = 3.0;
  const std::vector<UserContext> users = {u};

  const ConstraintSet cs = build_constraints(RobustMethod::NonRobust, users, {});
  REQUIRE(cs.linear.size() == 2);
  CHECK(cs.soc.empty());
  const double bound = std::sqrt(u.gamma / 2.0);
  for (int j = 0; j < 2; ++j) {
    CHECK((cs.linear[j].c - Eigen::Matrix2d::Identity().row(j).transpose()).norm() < 1e-14);
    CHECK(std::abs(cs.linear[j].d - bound) < 1e-14);
  }
  CHECK(check_feasible(Eigen::Vector2d(bound, bound), cs, 1e-12));
  CHECK_FALSE(check_feasible(Eigen::Vector2d(bound - 1e-6, bound), cs, 1e-9));
}

TEST_CASE("constraint counts per method") {
  Rng rng(substream_seed(6, {0}));
  const auto users = random_users(rng, 4, 3, 2.0);
  RobustParams p;
  p.epsilon = 0.1;
  p.xi = 0.2;
  p.upsilon = 0.05;
  CHECK(build_constraints(RobustMethod::NonRobust, users, p).linear.size() == 6);
  for (RobustMethod m : {RobustMethod::WorstCase, RobustMethod::SafeApprox1,
                         RobustMethod::SafeApprox2, RobustMethod::SphereBounding}) {
    const ConstraintSet cs = build_constraints(m, users, p);
    CHECK(cs.soc.size() == 6);
    CHECK(cs.linear.empty());
  }

  CHECK_THROWS_AS(build_constraints(RobustMethod::WorstCase, users, RobustParams{}),
                  std::invalid_argument);
  RobustParams bad;
  bad.xi = 0.2;
  bad.upsilon = 0.7;
  CHECK_THROWS_AS(build_constraints(RobustMethod::SafeApprox2, users, bad), std::domain_error);
  bad.upsilon = 0.05;
  bad.xi = 0.0;
  CHECK_THROWS_AS(build_constraints(RobustMethod::SafeApprox2, users, bad),
                  std::invalid_argument);
}

TEST_CASE("worst case approaches non-robust as the radius shrinks") {
  Rng rng(substream_seed(8, {0}));
  for (int rep = 0; rep < 100; ++rep) {
    const auto users = random_users(rng, 3, 3, 1.5);
    const ConstraintSet nr = build_constraints(RobustMethod::NonRobust, users, {});
    const Eigen::VectorXd u = random_vector(rng, 6, 1.5);

    double margin = 1e300;
    for (const LinearConstraint& lc : nr.linear) margin = std::min(margin, lc.c.dot(u) - lc.d);
    if (margin <= 1e-6) continue;  // need strict non-robust feasibility

    RobustParams p;
    p.epsilon = 0.9 * margin / u.norm();
    const ConstraintSet wc = build_constraints(RobustMethod::WorstCase, users, p);
    CHECK(check_feasible(u, wc, 1e-12));
  }
}

TEST_CASE("sphere bounding rows are scaled arrow-bound rows") {
  Rng rng(substream_seed(9, {0}));
  const auto users = random_users(rng, 4, 2, 2.0);
  RobustParams p;
  p.xi = 0.3;
  p.upsilon = 0.05;
  const ConstraintSet a2 = build_constraints(RobustMethod::SafeApprox2, users, p);
  const ConstraintSet b = build_constraints(RobustMethod::SphereBounding, users, p);
  const double ratio = alpha_coeff(0.05) / psi_coeff(0.05);
  for (std::size_t i = 0; i < a2.soc.size(); ++i) {
    CHECK((a2.soc[i].f - ratio * b.soc[i].f).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(std::abs(a2.soc[i].g - ratio * b.soc[i].g) < 1e-10);
  }
}

TEST_CASE("entrywise-max form equals the two emitted rows") {
  Rng rng(substream_seed(10, {0}));
  const double upsilon = 0.05;
  const double xi = 0.25;
  int checked = 0;
  for (int rep = 0; rep < 10000; ++rep) {
    const auto users = random_users(rng, 2, 1, 1.0 + 3.0 * rng.uniform());
    RobustParams p;
    p.xi = xi;
    p.upsilon = upsilon;
    const ConstraintSet a1 = build_constraints(RobustMethod::SafeApprox1, users, p);
    REQUIRE(a1.soc.size() == 2);
    const Eigen::VectorXd u = random_vector(rng, 4, 2.0);

    // Scalar max form evaluated independently of the builder.
    const UserContext& usr = users[0];
    const AffineResidual res =
        residual(usr.cir, usr.h_hat, usr.symbol, usr.sigma, usr.gamma);
    const Eigen::Matrix2d v = inv_sqrt_2x2(usr.cir.a * usr.cir.a.transpose());
    const Eigen::Vector2d vw = v * res.eval(u);
    const double rhs = (-std::sqrt(2.0) / (rho_coeff(upsilon) * xi)) * vw.maxCoeff();
    const double lhs = u.norm();

    if (std::abs(lhs - rhs) < 1e-9) continue;  // skip knife-edge draws
    const bool max_form = lhs <= rhs;
    const bool rows = check_feasible(u, a1, 0.0);
    CHECK(max_form == rows);
    ++checked;
  }
  CHECK(checked > 9000);
}

TEST_CASE("feasibility nesting at small violation probability") {
  Rng rng(substream_seed(12, {0}));
  RobustParams p;
  p.xi = 0.08;
  p.upsilon = 0.05;
  int b_feasible = 0;
  for (int rep = 0; rep < 1000; ++rep) {
    const auto users = random_users(rng, 3, 2, 0.5);
    const Eigen::VectorXd u = random_vector(rng, 6, 3.0);
    const ConstraintSet sb = build_constraints(RobustMethod::SphereBounding, users, p);
    if (!check_feasible(u, sb, 0.0)) continue;
    ++b_feasible;
    CHECK(check_feasible(u, build_constraints(RobustMethod::SafeApprox1, users, p), 1e-12));
    CHECK(check_feasible(u, build_constraints(RobustMethod::SafeApprox2, users, p), 1e-12));
  }
  CHECK(b_feasible > 10);
}

TEST_CASE("feasible points have nonnegative row right-hand sides") {
  // Necessary-condition form: at any feasible point of a stochastic method,
  // every SOC row's right-hand side is nonnegative, i.e. the whitened certain
  // part is entrywise nonpositive.
  Rng rng(substream_seed(14, {0}));
  RobustParams p;
  p.xi = 0.08;
  p.upsilon = 0.1;
  int feasible = 0;
  for (int rep = 0; rep < 2000; ++rep) {
    const auto users = random_users(rng, 3, 2, 0.5);
    const Eigen::VectorXd u = random_vector(rng, 6, 3.0);
    for (RobustMethod m : {RobustMethod::SafeApprox1, RobustMethod::SafeApprox2,
                           RobustMethod::SphereBounding}) {
      const ConstraintSet cs = build_constraints(m, users, p);
      if (!check_feasible(u, cs, 0.0)) continue;
      ++feasible;
      for (const SocConstraint& sc : cs.soc) {
        CHECK(sc.f.dot(u) + sc.g >= 0.0);
      }
      // Equivalent whitened statement via the whitening transform.
      for (const UserContext& usr : users) {
        const AffineResidual res =
            residual(usr.cir, usr.h_hat, usr.symbol, usr.sigma, usr.gamma);
        const Eigen::Vector2d wbar = whitening_matrix(usr.cir, u, p.xi) * res.eval(u);
        CHECK(wbar.maxCoeff() <= 1e-12);
      }
    }
  }
  CHECK(feasible > 20);
}

TEST_CASE("check_feasible edge cases") {
  ConstraintSet empty;
  CHECK(check_feasible(Eigen::VectorXd::Zero(4), empty, 0.0));

  Rng rng(substream_seed(15, {0}));
  const auto users = random_users(rng, 3, 3, 2.0);
  const ConstraintSet nr = build_constraints(RobustMethod::NonRobust, users, {});
  CHECK_FALSE(check_feasible(Eigen::VectorXd::Zero(6), nr, 1e-9));  // m > 0 at the origin

  CHECK_THROWS_AS(check_feasible(Eigen::VectorXd::Zero(4), nr, 0.0), std::invalid_argument);
}

TEST_CASE("tightness comparison") {
  const TightnessReport low = compare_tightness(0.05);
  CHECK(low.tightest == RobustMethod::SafeApprox2);
  CHECK(low.nesting[0] == RobustMethod::SphereBounding);
  CHECK(low.nesting[1] == RobustMethod::SafeApprox1);
  CHECK(low.nesting[2] == RobustMethod::SafeApprox2);

  const TightnessReport high = compare_tightness(0.2);
  CHECK(high.tightest == RobustMethod::SafeApprox1);
  CHECK(high.nesting[1] == RobustMethod::SafeApprox2);

  CHECK_THROWS_AS(compare_tightness(0.7), std::domain_error);

  CHECK(method_name(RobustMethod::SafeApprox2) == "safe_approx2");
  CHECK(method_from_name("sphere_bounding") == RobustMethod::SphereBounding);
  CHECK(!method_from_name("nope").has_value());
}
