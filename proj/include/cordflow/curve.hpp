#pragma once

// Closed space curves given by finite Fourier series per coordinate, with an
// arc-length reparametrization table. All downstream geometry assumes unit
// speed, so every public accessor takes arc length and chain-rules through
// the inverse of the cumulative-length map.

#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cordflow {

using Vec3 = Eigen::Vector3d;
using Vec2 = Eigen::Vector2d;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct VanishingCurvature : std::runtime_error {
  explicit VanishingCurvature(const std::string& what) : std::runtime_error(what) {}
};

// One coordinate x(u) = a0 + sum_k ( ca[k] cos(k w u) + sa[k] sin(k w u) ).
struct FourierCoord {
  double a0 = 0.0;
  std::vector<double> ca;  // ca[k-1] multiplies cos(k w u)
  std::vector<double> sa;  // sa[k-1] multiplies sin(k w u)

  double eval(double wu_base, int deriv, double w) const {
    // wu_base = w*u. Derivative of order `deriv` with respect to u.
    double acc = (deriv == 0) ? a0 : 0.0;
    const std::size_t n = std::max(ca.size(), sa.size());
    for (std::size_t k = 1; k <= n; ++k) {
      const double kw = static_cast<double>(k) * w;
      const double arg = static_cast<double>(k) * wu_base;
      double c = (k <= ca.size()) ? ca[k - 1] : 0.0;
      double s = (k <= sa.size()) ? sa[k - 1] : 0.0;
      double factor = 1.0;
      for (int d = 0; d < deriv; ++d) factor *= kw;
      switch (deriv % 4) {
        case 0: acc += factor * (c * std::cos(arg) + s * std::sin(arg)); break;
        case 1: acc += factor * (-c * std::sin(arg) + s * std::cos(arg)); break;
        case 2: acc += factor * (-c * std::cos(arg) - s * std::sin(arg)); break;
        case 3: acc += factor * (c * std::sin(arg) - s * std::cos(arg)); break;
      }
    }
    return acc;
  }
};

struct FrenetData {
  double s = 0.0;
  Vec3 point = Vec3::Zero();
  Vec3 tangent = Vec3::Zero();
  Vec3 normal = Vec3::Zero();
  Vec3 binormal = Vec3::Zero();
  double kappa = 0.0;
  double tau = 0.0;
};

class ClosedCurve {
 public:
  ClosedCurve(std::array<FourierCoord, 3> coords, double raw_period,
              std::string name = "custom")
      : coords_(std::move(coords)), raw_period_(raw_period), name_(std::move(name)) {
    if (raw_period_ <= 0.0) throw std::invalid_argument("raw_period must be positive");
    build_tables();
  }

  const std::string& name() const { return name_; }
  double raw_period() const { return raw_period_; }
  double length() const { return total_length_; }

  // d^k gamma / du^k at raw parameter u, k <= 4.
  Vec3 raw_point(double u, int deriv = 0) const {
    const double w = kTwoPi / raw_period_;
    const double wu = w * u;
    return Vec3(coords_[0].eval(wu, deriv, w), coords_[1].eval(wu, deriv, w),
                coords_[2].eval(wu, deriv, w));
  }

  double speed(double u) const { return raw_point(u, 1).norm(); }

  // Cumulative arc length from u=0, extended periodically.
  double arc_length_of(double u) const {
    double wraps = std::floor(u / raw_period_);
    double frac = u - wraps * raw_period_;
    return wraps * total_length_ + arc_interp(frac);
  }

  // Inverse of the arc-length map; s may be any real, result in [0, raw_period).
  double raw_param(double s) const {
    double wrapped = s - total_length_ * std::floor(s / total_length_);
    // Hermite seed from the uniform inversion table, then Newton polish.
    const std::size_t n = inv_u_.size() - 1;
    double x = wrapped / total_length_ * static_cast<double>(n);
    std::size_t i = std::min(static_cast<std::size_t>(x), n - 1);
    double h = total_length_ / static_cast<double>(n);
    double tloc = (wrapped - static_cast<double>(i) * h) / h;
    double u0 = inv_u_[i], u1 = inv_u_[i + 1];
    double m0 = h / speed_at_inv_[i], m1 = h / speed_at_inv_[i + 1];
    double t2 = tloc * tloc, t3 = t2 * tloc;
    double u = (2 * t3 - 3 * t2 + 1) * u0 + (t3 - 2 * t2 + tloc) * m0 +
               (-2 * t3 + 3 * t2) * u1 + (t3 - t2) * m1;
    for (int it = 0; it < 3; ++it) {
      double err = arc_length_of(u) - wrapped;
      if (std::abs(err) < 1e-13 * total_length_) break;
      u -= err / speed(u);
    }
    return u - raw_period_ * std::floor(u / raw_period_);
  }

  Vec3 point(double s) const { return raw_point(raw_param(s)); }

  // Unit tangent via chain rule.
  Vec3 tangent(double s) const {
    Vec3 d1 = raw_point(raw_param(s), 1);
    return d1 / d1.norm();
  }

  FrenetData frenet(double s) const {
    const double u = raw_param(s);
    const Vec3 g1 = raw_point(u, 1);
    const Vec3 g2 = raw_point(u, 2);
    const Vec3 g3 = raw_point(u, 3);
    const double sp = g1.norm();
    const Vec3 c = g1.cross(g2);
    const double cn = c.norm();
    FrenetData f;
    f.s = s - total_length_ * std::floor(s / total_length_);
    f.point = raw_point(u);
    f.tangent = g1 / sp;
    f.kappa = cn / (sp * sp * sp);
    if (f.kappa < 1e-9)
      throw VanishingCurvature(name_ + ": kappa < 1e-9 at s=" + std::to_string(s));
    f.binormal = c / cn;
    f.normal = f.binormal.cross(f.tangent);
    f.tau = c.dot(g3) / (cn * cn);
    return f;
  }

  double kappa(double s) const {
    const double u = raw_param(s);
    const Vec3 g1 = raw_point(u, 1);
    const Vec3 g2 = raw_point(u, 2);
    const double sp = g1.norm();
    return g1.cross(g2).norm() / (sp * sp * sp);
  }

  // d(kappa)/ds, used by the principal-curvature derivative formulas.
  double kappa_ds(double s) const {
    const double u = raw_param(s);
    const Vec3 g1 = raw_point(u, 1);
    const Vec3 g2 = raw_point(u, 2);
    const Vec3 g3 = raw_point(u, 3);
    const double sp = g1.norm();
    const Vec3 c = g1.cross(g2);
    const double cn = c.norm();
    const double spd = g1.dot(g2) / sp;
    const double dk_du = c.dot(g1.cross(g3)) / (cn * sp * sp * sp) -
                         3.0 * cn * spd / (sp * sp * sp * sp);
    return dk_du / sp;
  }

  double tau(double s) const {
    const double u = raw_param(s);
    const Vec3 g1 = raw_point(u, 1);
    const Vec3 g2 = raw_point(u, 2);
    const Vec3 g3 = raw_point(u, 3);
    const Vec3 c = g1.cross(g2);
    return c.dot(g3) / c.squaredNorm();
  }

  // Flat distance on R/TZ.
  double circ_dist(double s1, double s2) const {
    double d = std::fmod(std::abs(s1 - s2), total_length_);
    return std::min(d, total_length_ - d);
  }

  double wrap(double s) const { return s - total_length_ * std::floor(s / total_length_); }

  // min_s 1/kappa(s), scaled by a 0.9 safety factor.
  double eps_good() const {
    double kmax = 0.0;
    const int n = 4096;
    for (int i = 0; i < n; ++i) {
      double u = raw_period_ * static_cast<double>(i) / n;
      const Vec3 g1 = raw_point(u, 1);
      const Vec3 g2 = raw_point(u, 2);
      const double sp = g1.norm();
      kmax = std::max(kmax, g1.cross(g2).norm() / (sp * sp * sp));
    }
    if (kmax < 1e-12) throw VanishingCurvature(name_ + ": curvature vanishes everywhere?");
    return 0.9 / kmax;
  }

  struct GenericityReport {
    double min_kappa = 0.0;
    double min_gap = 0.0;  // min pairwise distance of non-adjacent samples
    bool embedded = false;
    bool positive_curvature = false;
  };

  GenericityReport genericity(int n = 512) const {
    GenericityReport r;
    std::vector<Vec3> pts(n);
    for (int i = 0; i < n; ++i) pts[i] = raw_point(raw_period_ * i / n);
    r.min_gap = std::numeric_limits<double>::max();
    for (int i = 0; i < n; ++i)
      for (int j = i + 2; j < n; ++j) {
        if (i == 0 && j == n - 1) continue;
        r.min_gap = std::min(r.min_gap, (pts[i] - pts[j]).norm());
      }
    r.min_kappa = std::numeric_limits<double>::max();
    for (int i = 0; i < 4096; ++i) {
      double u = raw_period_ * static_cast<double>(i) / 4096;
      const Vec3 g1 = raw_point(u, 1);
      const Vec3 g2 = raw_point(u, 2);
      const double sp = g1.norm();
      r.min_kappa = std::min(r.min_kappa, g1.cross(g2).norm() / (sp * sp * sp));
    }
    r.embedded = r.min_gap > 0.0;
    r.positive_curvature = r.min_kappa > 0.0;
    return r;
  }

 private:
  void build_tables() {
    // Composite 4-point Gauss-Legendre over 1024 intervals (4096 speed evals).
    static const double gl_x[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
    static const double gl_w[4] = {0.3478548451374538, 0.6521451548625461,
                                   0.6521451548625461, 0.3478548451374538};
    const int n_int = 1024;
    arc_u_.resize(n_int + 1);
    arc_s_.resize(n_int + 1);
    arc_u_[0] = 0.0;
    arc_s_[0] = 0.0;
    const double h = raw_period_ / n_int;
    double acc = 0.0;
    for (int i = 0; i < n_int; ++i) {
      const double a = i * h;
      double piece = 0.0;
      for (int q = 0; q < 4; ++q) piece += gl_w[q] * speed(a + 0.5 * h * (1.0 + gl_x[q]));
      acc += 0.5 * h * piece;
      arc_u_[i + 1] = (i + 1) * h;
      arc_s_[i + 1] = acc;
    }
    total_length_ = acc;
    for (int i = 1; i <= n_int; ++i)
      if (arc_s_[i] <= arc_s_[i - 1])
        throw std::runtime_error("arc table not strictly increasing");

    // Uniform inversion table u(s) on 8192 nodes, Newton to 1e-12.
    const int n_inv = 8192;
    inv_u_.resize(n_inv + 1);
    speed_at_inv_.resize(n_inv + 1);
    double u = 0.0;
    for (int i = 0; i <= n_inv; ++i) {
      const double s_target = total_length_ * i / n_inv;
      if (i == n_inv) {
        u = raw_period_;
      } else {
        for (int it = 0; it < 50; ++it) {
          double err = arc_interp(std::min(u, raw_period_)) - s_target;
          double du = err / speed(u);
          u -= du;
          u = std::clamp(u, 0.0, raw_period_);
          if (std::abs(du) < 1e-14 * raw_period_) break;
        }
      }
      inv_u_[i] = u;
      speed_at_inv_[i] = speed(u);
    }
  }

  // Monotone cubic-Hermite read of the cumulative table (exact slopes = speed).
  double arc_interp(double u) const {
    const std::size_t n = arc_u_.size() - 1;
    double x = u / raw_period_ * static_cast<double>(n);
    std::size_t i = std::min(static_cast<std::size_t>(std::max(x, 0.0)), n - 1);
    double h = raw_period_ / static_cast<double>(n);
    double t = (u - arc_u_[i]) / h;
    double s0 = arc_s_[i], s1 = arc_s_[i + 1];
    double m0 = speed(arc_u_[i]) * h, m1 = speed(arc_u_[i + 1]) * h;
    double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * s0 + (t3 - 2 * t2 + t) * m0 +
           (-2 * t3 + 3 * t2) * s1 + (t3 - t2) * m1;
  }

  std::array<FourierCoord, 3> coords_;
  double raw_period_;
  std::string name_;
  double total_length_ = 0.0;
  std::vector<double> arc_u_, arc_s_;
  std::vector<double> inv_u_, speed_at_inv_;
};

// ---- presets ----

inline ClosedCurve make_circle(double radius) {
  std::array<FourierCoord, 3> c;
  c[0].ca = {radius};
  c[1].sa = {radius};
  return ClosedCurve(std::move(c), kTwoPi, "circle");
}

inline ClosedCurve make_ellipse(double a, double b) {
  std::array<FourierCoord, 3> c;
  c[0].ca = {a};
  c[1].sa = {b};
  return ClosedCurve(std::move(c), kTwoPi, "ellipse");
}

// Dimpled limacon r = a(1 + c cos u) with a small z-wiggle so that the space
// curvature never vanishes. Invariant under the rotation (y,z) -> (-y,-z).
inline ClosedCurve make_nonconvex_unknot() {
  const double a = 2.0, c = 0.7, dz = 0.35;
  std::array<FourierCoord, 3> f;
  // x = a cos u + a c cos^2 u = a c/2 + a cos u + a c/2 cos 2u
  f[0].a0 = a * c / 2.0;
  f[0].ca = {a, a * c / 2.0};
  // y = a sin u + a c sin u cos u = a sin u + a c/2 sin 2u
  f[1].sa = {a, a * c / 2.0};
  // z = dz sin 2u
  f[2].sa = {0.0, dz};
  return ClosedCurve(std::move(f), kTwoPi, "nonconvex_unknot");
}

inline ClosedCurve make_torus_knot(int p, int q, double R = 2.0, double r = 0.5) {
  // ((R + r cos qu) cos pu, (R + r cos qu) sin pu, r sin qu)
  std::array<FourierCoord, 3> f;
  int n = std::max(p + q, std::abs(p - q));
  f[0].ca.assign(n, 0.0);
  f[1].sa.assign(n, 0.0);
  f[0].ca[p - 1] += R;
  f[1].sa[p - 1] += R;
  // r cos qu cos pu = r/2 [cos((q-p)u) + cos((q+p)u)]
  auto add_cos = [&](std::vector<double>& v, int k, double val) {
    if (k == 0) return;  // handled via a0
    if (static_cast<int>(v.size()) < std::abs(k)) v.resize(std::abs(k), 0.0);
    v[std::abs(k) - 1] += val;
  };
  auto add_sin = [&](std::vector<double>& v, int k, double val) {
    if (k == 0) return;
    if (static_cast<int>(v.size()) < std::abs(k)) v.resize(std::abs(k), 0.0);
    v[std::abs(k) - 1] += (k > 0 ? val : -val);
  };
  if (q == p) f[0].a0 += r / 2.0;
  add_cos(f[0].ca, q - p, r / 2.0);
  add_cos(f[0].ca, q + p, r / 2.0);
  // r cos qu sin pu = r/2 [sin((p+q)u) + sin((p-q)u)]
  add_sin(f[1].sa, p + q, r / 2.0);
  add_sin(f[1].sa, p - q, r / 2.0);
  f[2].sa.assign(q, 0.0);
  f[2].sa[q - 1] = r;
  return ClosedCurve(std::move(f), kTwoPi,
                     "torus_knot_" + std::to_string(p) + "_" + std::to_string(q));
}

inline ClosedCurve make_trefoil() { return make_torus_knot(2, 3); }

inline ClosedCurve make_preset(const std::string& name) {
  if (name == "circle") return make_circle(3.0);
  if (name == "ellipse") return make_ellipse(3.0, 2.0);
  if (name == "nonconvex_unknot") return make_nonconvex_unknot();
  if (name == "trefoil") return make_trefoil();
  throw std::invalid_argument("unknown preset: " + name);
}

}  // namespace cordflow
