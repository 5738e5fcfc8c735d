#pragma once

// Special pairs: ordered pairs (s1,s2) where the tangent line at one endpoint
// passes through the other. They bound the bifurcation locus R and are the
// obstruction cycles counted by H_1 of the chord space.

#include <vector>

#include "cordflow/energy.hpp"

namespace cordflow {

enum class SpecialKind { S1Special, S2Special };

struct SpecialPair {
  SpecialKind kind = SpecialKind::S1Special;
  double s1 = 0.0;
  double s2 = 0.0;
  double residual = 0.0;  // norm of P minus its tangential component at s_k
};

namespace detail {

// Residual components of P against the normal plane at the tangency endpoint.
inline Vec2 special_residual(const ClosedCurve& k, SpecialKind kind, double s1,
                             double s2) {
  const FrenetData fa = k.frenet(kind == SpecialKind::S1Special ? s1 : s2);
  const Vec3 P = k.point(s2) - k.point(s1);
  return Vec2(P.dot(fa.normal), P.dot(fa.binormal));
}

inline bool newton_special(const ClosedCurve& k, SpecialKind kind, double& s1,
                           double& s2) {
  for (int it = 0; it < 60; ++it) {
    Vec2 r = special_residual(k, kind, s1, s2);
    if (r.norm() < 1e-12) return true;
    const double h = 1e-6 * k.length();
    Eigen::Matrix2d J;
    J.col(0) = (special_residual(k, kind, s1 + h, s2) -
                special_residual(k, kind, s1 - h, s2)) /
               (2 * h);
    J.col(1) = (special_residual(k, kind, s1, s2 + h) -
                special_residual(k, kind, s1, s2 - h)) /
               (2 * h);
    Vec2 d = J.fullPivLu().solve(r);
    if (!d.allFinite() || d.norm() > 0.2 * k.length()) return false;
    s1 -= d(0);
    s2 -= d(1);
  }
  return special_residual(k, kind, s1, s2).norm() < 1e-10;
}

}  // namespace detail

// Grid scan for sign-change cells of the 2-component residual, Newton polish,
// dedup within 1e-5 * T. Newton divergence on a seed is skipped, not fatal.
inline std::vector<SpecialPair> find_special_pairs(const ClosedCurve& k, int grid_n,
                                                   double diag_exclusion = 0.02) {
  const double T = k.length();
  std::vector<SpecialPair> out;
  for (SpecialKind kind : {SpecialKind::S1Special, SpecialKind::S2Special}) {
    // cache residual rows to avoid recomputing grid corners
    std::vector<Vec2> row(grid_n + 1), next(grid_n + 1);
    auto fill_row = [&](int i, std::vector<Vec2>& r) {
      const double s1 = T * i / grid_n;
      for (int j = 0; j <= grid_n; ++j)
        r[j] = detail::special_residual(k, kind, s1, T * j / grid_n);
    };
    fill_row(0, row);
    for (int i = 0; i < grid_n; ++i) {
      fill_row(i + 1, next);
      const double s1 = T * (i + 0.5) / grid_n;
      for (int j = 0; j < grid_n; ++j) {
        const double s2 = T * (j + 0.5) / grid_n;
        if (k.circ_dist(s1, s2) < diag_exclusion * T) continue;
        const Vec2 c00 = row[j], c01 = row[j + 1], c10 = next[j], c11 = next[j + 1];
        auto changes = [&](int comp) {
          double a = c00(comp), b = c01(comp), c = c10(comp), d = c11(comp);
          double lo = std::min({a, b, c, d}), hi = std::max({a, b, c, d});
          return lo <= 0.0 && hi >= 0.0;
        };
        if (!changes(0) || !changes(1)) continue;
        double p1 = s1, p2 = s2;
        if (!detail::newton_special(k, kind, p1, p2)) continue;
        p1 = k.wrap(p1);
        p2 = k.wrap(p2);
        if (k.circ_dist(p1, p2) < diag_exclusion * T) continue;
        bool dup = false;
        for (const auto& q : out)
          if (q.kind == kind && k.circ_dist(q.s1, p1) < 1e-5 * T &&
              k.circ_dist(q.s2, p2) < 1e-5 * T) {
            dup = true;
            break;
          }
        if (dup) continue;
        SpecialPair sp;
        sp.kind = kind;
        sp.s1 = p1;
        sp.s2 = p2;
        sp.residual = detail::special_residual(k, kind, p1, p2).norm();
        out.push_back(sp);
      }
      std::swap(row, next);
    }
  }
  return out;
}

// rank H_1 of the off-diagonal chord space = 1 + number of special points.
struct H1Report {
  int rank = 0;
  int special_points = 0;        // both kinds, as points of the configuration torus
  int tangency_incidences = 0;   // unordered geometric tangent-line events
  bool unknot_consistent = false;
};

inline H1Report h1_rank(const ClosedCurve& k, int grid_n = 1024) {
  auto sp = find_special_pairs(k, grid_n);
  H1Report r;
  r.special_points = static_cast<int>(sp.size());
  r.tangency_incidences = r.special_points / 2;
  r.rank = 1 + r.special_points;
  r.unknot_consistent = (r.rank == 1);
  return r;
}

}  // namespace cordflow
