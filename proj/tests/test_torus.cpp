#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "cordflow/torus.hpp"

using namespace cordflow;

namespace {

Vec3 fd_partial_s(const TorusSurface& t, const SurfacePoint& p, double h) {
  auto f = [&](double s) { return t.point({s, p.theta}); };
  return (-f(p.s + 2 * h) + 8.0 * f(p.s + h) - 8.0 * f(p.s - h) + f(p.s - 2 * h)) /
         (12.0 * h);
}

Vec3 fd_partial_theta(const TorusSurface& t, const SurfacePoint& p, double h) {
  auto f = [&](double th) { return t.point({p.s, th}); };
  return (-f(p.theta + 2 * h) + 8.0 * f(p.theta + h) - 8.0 * f(p.theta - h) +
          f(p.theta - 2 * h)) /
         (12.0 * h);
}

}  // namespace

TEST_CASE("standard torus point: Gamma(0,0) = (2,0,0)") {
  ClosedCurve circle = make_circle(3.0);
  TorusSurface t(circle, 1.0);
  CHECK((t.point({0.0, 0.0}) - Vec3(2, 0, 0)).norm() < 1e-12);
  // theta=0 sits on the inner equator; the outer equator is theta=pi.
  CHECK((t.point({0.0, kPi}) - Vec3(4, 0, 0)).norm() < 1e-12);
}

TEST_CASE("analytic partials match finite differences") {
  ClosedCurve tref = make_trefoil();
  TorusSurface t(tref, 0.2);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> us(0.0, tref.length()), uth(0.0, kTwoPi);
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    SurfacePoint p{us(rng), uth(rng)};
    auto pp = t.point_partials(p);
    worst = std::max(worst, (pp.d_s - fd_partial_s(t, p, 1e-3)).norm());
    worst = std::max(worst, (pp.d_theta - fd_partial_theta(t, p, 1e-3)).norm());
  }
  CHECK(worst < 1e-7);
}

TEST_CASE("d_theta has norm eps; both partials orthogonal to v") {
  ClosedCurve ell = make_ellipse(3.0, 2.0);
  TorusSurface t(ell, 0.5);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> us(0.0, ell.length()), uth(0.0, kTwoPi);
  for (int i = 0; i < 1000; ++i) {
    SurfacePoint p{us(rng), uth(rng)};
    auto pp = t.point_partials(p);
    Vec3 v = t.unit_normal(p);
    REQUIRE(std::abs(pp.d_theta.norm() - 0.5) < 1e-10);
    REQUIRE(std::abs(pp.d_s.dot(v)) < 1e-10);
    REQUIRE(std::abs(pp.d_theta.dot(v)) < 1e-10);
  }
}

TEST_CASE("curvatures on the standard torus") {
  ClosedCurve circle = make_circle(3.0);
  TorusSurface t(circle, 1.0);
  SECTION("inner equator: gauss = -1/2 (classical oracle)") {
    auto r = t.curvatures({1.0, 0.0});
    CHECK(r.gauss == Catch::Approx(-0.5).margin(1e-12));
  }
  SECTION("theta = pi/2: gauss = 0") {
    auto r = t.curvatures({2.0, kPi / 2.0});
    CHECK(std::abs(r.gauss) < 1e-12);
  }
  SECTION("k_m = -1/eps at random points") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> us(0.0, circle.length()), uth(0.0, kTwoPi);
    for (int i = 0; i < 100; ++i) {
      auto r = t.curvatures({us(rng), uth(rng)});
      REQUIRE(r.k_m == Catch::Approx(-1.0).margin(1e-12));
    }
  }
}

TEST_CASE("gauss = k_M * k_m and det H / det G consistency") {
  ClosedCurve tref = make_trefoil();
  TorusSurface t(tref, 0.15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> us(0.0, tref.length()), uth(0.0, kTwoPi);
  for (int i = 0; i < 300; ++i) {
    SurfacePoint p{us(rng), uth(rng)};
    auto r = t.curvatures(p);
    REQUIRE(std::abs(r.gauss - r.k_M * r.k_m) < 1e-8);
    Eigen::Matrix2d G, H;
    t.fundamental_forms(p, G, H);
    REQUIRE(std::abs(H.determinant() / G.determinant() - r.gauss) < 1e-8);
  }
}

TEST_CASE("fundamental forms") {
  SECTION("tau == 0 curve: G diagonal (d^2, eps^2)") {
    ClosedCurve ell = make_ellipse(3.0, 2.0);
    TorusSurface t(ell, 0.5);
    Eigen::Matrix2d G, H;
    t.fundamental_forms({1.0, 0.7}, G, H);
    CHECK(std::abs(G(0, 1)) < 1e-12);
    CHECK(G(1, 1) == Catch::Approx(0.25).margin(1e-12));
  }
  SECTION("standard torus theta=0: G = [[4/9,0],[0,1]]") {
    ClosedCurve circle = make_circle(3.0);
    TorusSurface t(circle, 1.0);
    Eigen::Matrix2d G, H;
    t.fundamental_forms({0.3, 0.0}, G, H);
    CHECK(G(0, 0) == Catch::Approx(4.0 / 9.0).margin(1e-12));
    CHECK(std::abs(G(0, 1)) < 1e-12);
    CHECK(G(1, 1) == Catch::Approx(1.0).margin(1e-12));
  }
  SECTION("finite-difference metric matches G at 1000 points") {
    ClosedCurve tref = make_trefoil();
    TorusSurface t(tref, 0.2);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> us(0.0, tref.length()), uth(0.0, kTwoPi);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
      SurfacePoint p{us(rng), uth(rng)};
      Eigen::Matrix2d G, H;
      t.fundamental_forms(p, G, H);
      Vec3 ds = fd_partial_s(t, p, 1e-3);
      Vec3 dth = fd_partial_theta(t, p, 1e-3);
      worst = std::max(worst, std::abs(ds.dot(ds) - G(0, 0)));
      worst = std::max(worst, std::abs(ds.dot(dth) - G(0, 1)));
      worst = std::max(worst, std::abs(dth.dot(dth) - G(1, 1)));
    }
    CHECK(worst < 1e-7);
  }
}

TEST_CASE("principal directions: g-orthonormal, w_M x w_m = +v in ambient space") {
  ClosedCurve tref = make_trefoil();
  TorusSurface t(tref, 0.2);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> us(0.0, tref.length()), uth(0.0, kTwoPi);
  for (int i = 0; i < 200; ++i) {
    SurfacePoint p{us(rng), uth(rng)};
    auto r = t.curvatures(p);
    Eigen::Matrix2d G, H;
    t.fundamental_forms(p, G, H);
    REQUIRE(std::abs(r.w_M.dot(G * r.w_M) - 1.0) < 1e-8);
    REQUIRE(std::abs(r.w_m.dot(G * r.w_m) - 1.0) < 1e-8);
    REQUIRE(std::abs(r.w_M.dot(G * r.w_m)) < 1e-8);
    Eigen::Vector2d lhsM = G.inverse() * H * r.w_M;
    REQUIRE((lhsM - r.k_M * r.w_M).norm() < 1e-8);
    Eigen::Vector2d lhsm = G.inverse() * H * r.w_m;
    REQUIRE((lhsm - r.k_m * r.w_m).norm() < 1e-8);
    auto pp = t.point_partials(p);
    Vec3 wM = r.w_M(0) * pp.d_s + r.w_M(1) * pp.d_theta;
    Vec3 wm = r.w_m(0) * pp.d_s + r.w_m(1) * pp.d_theta;
    REQUIRE((wM.cross(wm) - t.unit_normal(p)).norm() < 1e-8);
  }
}

TEST_CASE("standard chart conversion round trip") {
  const double R = 3.0;
  StandardChartPoint q{1.2, 0.7};
  SurfacePoint p = from_standard_chart(q, R);
  StandardChartPoint back = to_standard_chart(p, R);
  CHECK(back.s_angle == Catch::Approx(q.s_angle).margin(1e-14));
  CHECK(back.theta_outer == Catch::Approx(q.theta_outer).margin(1e-14));
  ClosedCurve circle = make_circle(R);
  TorusSurface t(circle, 1.0);
  Vec3 chart_pt(std::cos(q.s_angle) * (R + std::cos(q.theta_outer)),
                std::sin(q.s_angle) * (R + std::cos(q.theta_outer)),
                std::sin(q.theta_outer));
  CHECK((t.point(p) - chart_pt).norm() < 1e-12);
}

TEST_CASE("eps bound enforced") {
  ClosedCurve ell = make_ellipse(3.0, 2.0);
  CHECK_THROWS_AS(TorusSurface(ell, 1.5), std::invalid_argument);
}
