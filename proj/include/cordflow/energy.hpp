#pragma once

// Endpoint energies E_0(s1,s2) = |P|^2/2 on K x K and E_eps on the tube
// torus, their gradients with respect to the pullback metric, and Hessians
// at critical points. The negative gradient flow of these energies drives
// everything downstream.

#include <Eigen/Eigenvalues>

#include "cordflow/chords.hpp"

namespace cordflow {

using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat4 = Eigen::Matrix4d;

// ---- knot level ----

inline double knot_energy(const ClosedCurve& k, const Chord0& c) {
  return 0.5 * (k.point(c.s2) - k.point(c.s1)).squaredNorm();
}

// gradient of E_0 in the flat chart (arc length is an isometry)
inline Vec2 knot_gradient(const ClosedCurve& k, const Chord0& c) {
  const Vec3 P = k.point(c.s2) - k.point(c.s1);
  return Vec2(-P.dot(k.tangent(c.s1)), P.dot(k.tangent(c.s2)));
}

inline Mat2 knot_hessian(const ClosedCurve& k, const Chord0& c) {
  const FrenetData a = k.frenet(c.s1);
  const FrenetData b = k.frenet(c.s2);
  const Vec3 P = b.point - a.point;
  Mat2 H;
  H(0, 0) = 1.0 - a.kappa * P.dot(a.normal);
  H(0, 1) = H(1, 0) = -a.tangent.dot(b.tangent);
  H(1, 1) = 1.0 + b.kappa * P.dot(b.normal);
  return H;
}

// ---- torus level ----

inline double torus_energy(const TorusSurface& t, const ChordE& c) {
  const ChordFrames f = chord_frames(t.curve(), t.eps(), c);
  return 0.5 * f.chord_eps.squaredNorm();
}

// Coordinate partials (dE/ds1, dE/dth1, dE/ds2, dE/dth2).
inline Vec4 torus_energy_partials(const ChordFrames& f, double eps) {
  const Vec3 pe1 = f.P + eps * f.v2;  // chord with the eps*v1 part dropped
  const Vec3 pe2 = f.P - eps * f.v1;
  Vec4 g;
  g(0) = -pe1.dot(f.d1 * f.f1.tangent + eps * f.f1.tau * f.v1p);
  g(1) = -eps * pe1.dot(f.v1p);
  g(2) = pe2.dot(f.d2 * f.f2.tangent + eps * f.f2.tau * f.v2p);
  g(3) = eps * pe2.dot(f.v2p);
  return g;
}

// Pullback metric of the product embedding, block diagonal 2x2 + 2x2.
inline Mat4 torus_metric(const ChordFrames& f, double eps) {
  Mat4 G = Mat4::Zero();
  auto block = [&](int o, double d, double tau) {
    G(o, o) = d * d + eps * eps * tau * tau;
    G(o, o + 1) = G(o + 1, o) = eps * eps * tau;
    G(o + 1, o + 1) = eps * eps;
  };
  block(0, f.d1, f.f1.tau);
  block(2, f.d2, f.f2.tau);
  return G;
}

// Metric gradient of E_eps (closed form; equals G^{-1} * partials).
inline Vec4 torus_gradient(const ChordFrames& f, double eps) {
  const Vec3 pe1 = f.P + eps * f.v2;
  const Vec3 pe2 = f.P - eps * f.v1;
  const double a1 = pe1.dot(f.f1.tangent);
  const double a2 = pe2.dot(f.f2.tangent);
  Vec4 g;
  g(0) = -a1 / f.d1;
  g(1) = f.f1.tau * a1 / f.d1 - pe1.dot(f.v1p) / eps;
  g(2) = a2 / f.d2;
  g(3) = -f.f2.tau * a2 / f.d2 + pe2.dot(f.v2p) / eps;
  return g;
}

inline Vec4 torus_gradient(const TorusSurface& t, const ChordE& c) {
  return torus_gradient(chord_frames(t.curve(), t.eps(), c), t.eps());
}

// Coordinate Hessian of E_eps, valid at critical points (including the full
// diagonal), where the first-derivative terms it omits vanish.
inline Mat4 torus_hessian_critical(const TorusSurface& t, const ChordE& c) {
  const double eps = t.eps();
  const ChordFrames f = chord_frames(t.curve(), eps, c);
  const Vec3 pe1 = f.P + eps * f.v2;
  const Vec3 pe2 = f.P - eps * f.v1;
  const double t1 = f.f1.tau, t2 = f.f2.tau;
  Mat4 H;
  H(0, 0) = -f.d1 * (-1.0 + f.f1.kappa * pe1.dot(f.f1.normal)) +
            eps * t1 * t1 * pe1.dot(f.v1);
  H(0, 1) = eps * t1 * pe1.dot(f.v1);
  H(0, 2) = -f.d1 * f.d2 * f.f2.tangent.dot(f.f1.tangent) -
            eps * t1 * f.d2 * f.f2.tangent.dot(f.v1p) -
            eps * t2 * f.d1 * f.v2p.dot(f.f1.tangent) -
            eps * eps * t1 * t2 * f.v1p.dot(f.v2p);
  H(0, 3) = -eps * f.d1 * f.v2p.dot(f.f1.tangent) - eps * eps * t1 * f.v2p.dot(f.v1p);
  H(1, 1) = eps * pe1.dot(f.v1);
  H(1, 2) = -eps * f.d2 * f.f2.tangent.dot(f.v1p) - eps * eps * t2 * f.v2p.dot(f.v1p);
  H(1, 3) = -eps * eps * f.v2p.dot(f.v1p);
  H(2, 2) = f.d2 * (1.0 + f.f2.kappa * pe2.dot(f.f2.normal)) -
            eps * t2 * t2 * pe2.dot(f.v2);
  H(2, 3) = -eps * t2 * pe2.dot(f.v2);
  H(3, 3) = -eps * pe2.dot(f.v2);
  H(1, 0) = H(0, 1);
  H(2, 0) = H(0, 2);
  H(3, 0) = H(0, 3);
  H(2, 1) = H(1, 2);
  H(3, 1) = H(1, 3);
  H(3, 2) = H(2, 3);
  return H;
}

// Eigenvalues of the metric Hessian G^{-1} H (generalized symmetric problem),
// ascending, with eigenvectors as columns.
inline void metric_spectrum(const Mat4& H, const Mat4& G, Vec4& eigs, Mat4& vecs) {
  Eigen::GeneralizedSelfAdjointEigenSolver<Mat4> es(H, G);
  eigs = es.eigenvalues();
  vecs = es.eigenvectors();
}

struct BottReport {
  Vec4 eigs = Vec4::Zero();           // metric Hessian spectrum, ascending
  double kernel_angle = 0.0;          // max angle of the 0-eigenspace to span{(1,0,1,0),(0,1,0,1)}
  int coordinate_rank = 0;            // rank of the plain coordinate Hessian
};

// Spectrum {0,0,2,2} of the metric Hessian along the full diagonal.
inline BottReport diagonal_bott_check(const TorusSurface& t, double s, double theta) {
  const ChordE c{s, theta, s, theta};
  const Mat4 H = torus_hessian_critical(t, c);
  const Mat4 G = torus_metric(chord_frames(t.curve(), t.eps(), c), t.eps());
  BottReport r;
  Mat4 vecs;
  metric_spectrum(H, G, r.eigs, vecs);
  // kernel = two smallest eigenvalues; compare against span{ds1+ds2, dth1+dth2}
  Eigen::Matrix<double, 4, 2> span;
  span << 1, 0, 0, 1, 1, 0, 0, 1;
  double worst = 0.0;
  for (int i = 0; i < 2; ++i) {
    Vec4 v = vecs.col(i);
    // residual of v against the span (flat projection)
    Eigen::Matrix2d StS = span.transpose() * span;
    Eigen::Vector2d coef = StS.ldlt().solve(span.transpose() * v);
    Vec4 res = v - span * coef;
    worst = std::max(worst, std::asin(std::min(1.0, res.norm() / v.norm())));
  }
  r.kernel_angle = worst;
  Eigen::FullPivLU<Mat4> lu(H);
  lu.setThreshold(1e-9);
  r.coordinate_rank = static_cast<int>(lu.rank());
  return r;
}

}  // namespace cordflow
