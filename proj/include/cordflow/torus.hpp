#pragma once

// The tube torus around a closed curve: Gamma_eps(s,theta) = gamma(s) + eps*v,
// v = cos(theta) n(s) + sin(theta) b(s). theta = 0 points along +n, which for
// a circle is the inner equator. Curvatures and fundamental forms in the
// (d_s, d_theta) coordinate basis.

#include <stdexcept>

#include "cordflow/curve.hpp"

namespace cordflow {

struct SurfacePoint {
  double s = 0.0;
  double theta = 0.0;
};

inline double wrap_angle(double th) { return th - kTwoPi * std::floor(th / kTwoPi); }

struct CurvatureReport {
  double gauss = 0.0;
  double k_M = 0.0;
  double k_m = 0.0;
  Vec2 w_M = Vec2::Zero();  // components in the (d_s, d_theta) basis
  Vec2 w_m = Vec2::Zero();
};

class TorusSurface {
 public:
  TorusSurface(const ClosedCurve& curve, double eps) : curve_(&curve), eps_(eps) {
    if (eps <= 0.0) throw std::invalid_argument("eps must be positive");
    if (eps >= curve.eps_good() / 0.9)
      throw std::invalid_argument("eps exceeds the tube radius bound min 1/kappa");
  }

  const ClosedCurve& curve() const { return *curve_; }
  double eps() const { return eps_; }

  Vec3 unit_normal(const FrenetData& f, double theta) const {
    return std::cos(theta) * f.normal + std::sin(theta) * f.binormal;
  }
  Vec3 unit_normal(const SurfacePoint& p) const {
    return unit_normal(curve_->frenet(p.s), p.theta);
  }
  // v_perp = d v / d theta
  Vec3 normal_perp(const FrenetData& f, double theta) const {
    return -std::sin(theta) * f.normal + std::cos(theta) * f.binormal;
  }

  Vec3 point(const SurfacePoint& p) const {
    const FrenetData f = curve_->frenet(p.s);
    return f.point + eps_ * unit_normal(f, p.theta);
  }

  struct PointAndPartials {
    Vec3 point;
    Vec3 d_s;      // (1 - eps cos(theta) kappa) T + eps tau v_perp
    Vec3 d_theta;  // eps v_perp
  };

  PointAndPartials point_partials(const SurfacePoint& p) const {
    const FrenetData f = curve_->frenet(p.s);
    const Vec3 v = unit_normal(f, p.theta);
    const Vec3 vp = normal_perp(f, p.theta);
    const double d = 1.0 - eps_ * std::cos(p.theta) * f.kappa;
    PointAndPartials out;
    out.point = f.point + eps_ * v;
    out.d_s = d * f.tangent + eps_ * f.tau * vp;
    out.d_theta = eps_ * vp;
    return out;
  }

  double shape_factor(const FrenetData& f, double theta) const {
    return 1.0 - eps_ * std::cos(theta) * f.kappa;
  }

  CurvatureReport curvatures(const SurfacePoint& p) const {
    const FrenetData f = curve_->frenet(p.s);
    const double d = shape_factor(f, p.theta);
    CurvatureReport r;
    r.gauss = -f.kappa * std::cos(p.theta) / (eps_ * d);
    r.k_M = f.kappa * std::cos(p.theta) / d;
    r.k_m = -1.0 / eps_;
    r.w_M = Vec2(-1.0 / d, f.tau / d);
    r.w_m = Vec2(0.0, 1.0 / eps_);
    return r;
  }

  // First and second fundamental forms in the (d_s, d_theta) basis.
  void fundamental_forms(const SurfacePoint& p, Eigen::Matrix2d& G,
                         Eigen::Matrix2d& H) const {
    const FrenetData f = curve_->frenet(p.s);
    const double d = shape_factor(f, p.theta);
    const double t = f.tau;
    G << d * d + eps_ * eps_ * t * t, eps_ * eps_ * t, eps_ * eps_ * t, eps_ * eps_;
    H << f.kappa * std::cos(p.theta) * d - eps_ * t * t, -eps_ * t, -eps_ * t, -eps_;
  }

  // Directional derivatives of the principal curvatures along w_M, w_m
  // (those of k_m vanish identically for the tube).
  struct CurvatureDerivatives {
    double dM_kM = 0.0;  // grad_{w_M} k_M
    double dm_kM = 0.0;  // grad_{w_m} k_M
    double dM_km = 0.0;
    double dm_km = 0.0;
  };

  CurvatureDerivatives curvature_derivatives(const SurfacePoint& p) const {
    const FrenetData f = curve_->frenet(p.s);
    const double d = shape_factor(f, p.theta);
    CurvatureDerivatives cd;
    cd.dM_kM = -(curve_->kappa_ds(p.s) * std::cos(p.theta) +
                 f.tau * f.kappa * std::sin(p.theta)) /
               (d * d * d);
    cd.dm_kM = -f.kappa * std::sin(p.theta) / (eps_ * d * d);
    return cd;
  }

 private:
  const ClosedCurve* curve_;
  double eps_;
};

// Chart used by the closed-form standard-torus computations:
// (cos(se)(R + cos(te)), sin(se)(R + cos(te)), sin(te)) with se the raw angle.
// Relative to our conventions se = s/R (circle of radius R) and te = pi - theta.
struct StandardChartPoint {
  double s_angle = 0.0;
  double theta_outer = 0.0;
};

inline SurfacePoint from_standard_chart(const StandardChartPoint& q, double R) {
  return SurfacePoint{R * q.s_angle, kPi - q.theta_outer};
}

inline StandardChartPoint to_standard_chart(const SurfacePoint& p, double R) {
  return StandardChartPoint{p.s / R, kPi - p.theta};
}

}  // namespace cordflow
