#pragma once

// Outward-pointing chord space M_{K,eps}. A chord is outward-pointing when
// the chord vector has nonnegative dot product with the outward normal at
// both endpoints:
//   F_i = < Gamma(s2,th2) - Gamma(s1,th1), v(s_i,th_i) >,   i = 1,2.
// Both F's use the same (forward) chord vector; at the second endpoint an
// interior chord pierces the surface and exits outward. This is the sign
// convention under which the selected critical sheet <P,v_1>>0, <P,v_2>>0
// lies in the interior of M.

#include <optional>
#include <stdexcept>

#include "cordflow/torus.hpp"

namespace cordflow {

struct Chord0 {
  double s1 = 0.0;
  double s2 = 0.0;
};

struct ChordE {
  double s1 = 0.0, theta1 = 0.0;
  double s2 = 0.0, theta2 = 0.0;

  SurfacePoint start() const { return {s1, theta1}; }
  SurfacePoint end() const { return {s2, theta2}; }
  ChordE reversed() const { return {s2, theta2, s1, theta1}; }
};

struct DiagonalChord : std::runtime_error {
  explicit DiagonalChord(const std::string& what) : std::runtime_error(what) {}
};

struct FPair {
  double f1 = 0.0;
  double f2 = 0.0;
};

// eps = 0 degenerates to the knot-level functions with Gamma_0 = gamma.
inline FPair f1_f2(const ClosedCurve& curve, double eps, const ChordE& c) {
  const FrenetData fa = curve.frenet(c.s1);
  const FrenetData fb = curve.frenet(c.s2);
  const Vec3 v1 = std::cos(c.theta1) * fa.normal + std::sin(c.theta1) * fa.binormal;
  const Vec3 v2 = std::cos(c.theta2) * fb.normal + std::sin(c.theta2) * fb.binormal;
  const Vec3 chord = (fb.point + eps * v2) - (fa.point + eps * v1);
  return FPair{chord.dot(v1), chord.dot(v2)};
}

inline FPair f1_f2(const TorusSurface& surface, const ChordE& c) {
  return f1_f2(surface.curve(), surface.eps(), c);
}

enum class ChordClass { Interior, BoundaryF1, BoundaryF2, Corner, Outside };

inline ChordClass in_M(const TorusSurface& surface, const ChordE& c, double tol) {
  const ClosedCurve& k = surface.curve();
  const double dth = std::abs(std::remainder(c.theta1 - c.theta2, kTwoPi));
  if (k.circ_dist(c.s1, c.s2) < tol && dth < tol)
    throw DiagonalChord("chord is within tol of the full diagonal");
  const FPair f = f1_f2(surface, c);
  const bool z1 = std::abs(f.f1) <= tol, z2 = std::abs(f.f2) <= tol;
  if (z1 && z2) return ChordClass::Corner;
  if (z1 && f.f2 > 0.0) return ChordClass::BoundaryF1;
  if (z2 && f.f1 > 0.0) return ChordClass::BoundaryF2;
  if (f.f1 > 0.0 && f.f2 > 0.0) return ChordClass::Interior;
  return ChordClass::Outside;
}

// Knot chord vector P = gamma(s2) - gamma(s1) and friends, cached per chord.
struct ChordFrames {
  FrenetData f1, f2;
  Vec3 P;         // knot-level chord vector
  Vec3 v1, v2;    // outward normals
  Vec3 v1p, v2p;  // d v / d theta
  double d1 = 1.0, d2 = 1.0;
  Vec3 chord_eps;  // Gamma(s2,th2) - Gamma(s1,th1)
};

inline ChordFrames chord_frames(const ClosedCurve& curve, double eps, const ChordE& c) {
  ChordFrames out;
  out.f1 = curve.frenet(c.s1);
  out.f2 = curve.frenet(c.s2);
  out.P = out.f2.point - out.f1.point;
  const double c1 = std::cos(c.theta1), s1 = std::sin(c.theta1);
  const double c2 = std::cos(c.theta2), s2 = std::sin(c.theta2);
  out.v1 = c1 * out.f1.normal + s1 * out.f1.binormal;
  out.v2 = c2 * out.f2.normal + s2 * out.f2.binormal;
  out.v1p = -s1 * out.f1.normal + c1 * out.f1.binormal;
  out.v2p = -s2 * out.f2.normal + c2 * out.f2.binormal;
  out.d1 = 1.0 - eps * c1 * out.f1.kappa;
  out.d2 = 1.0 - eps * c2 * out.f2.kappa;
  out.chord_eps = out.P + eps * (out.v2 - out.v1);
  return out;
}

}  // namespace cordflow
