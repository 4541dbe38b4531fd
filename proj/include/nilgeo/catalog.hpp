#ifndef NILGEO_CATALOG_HPP
#define NILGEO_CATALOG_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/lie_algebra.hpp"
#include "nilgeo/matrix.hpp"
#include "nilgeo/numeric.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace nilgeo {

// ---------------------------------------------------------------------------
// Built-in metric Lie algebras
// ---------------------------------------------------------------------------
//
//  h3_riemannian   Heisenberg algebra, definite metric (classical H-type)
//  h3_lorentz      Heisenberg algebra with <e1,e1> = -1
//  rxh3            R x h3 nilmanifold model; <n0,e3> = 1/2, null n0 and e3
//  oscillator4     solvable oscillator algebra with its ad-invariant metric
//  iso7            7-dimensional isometry algebra of the 4-dim model
//                  (identity placeholder metric; only its bracket structure
//                  is meaningful)
//  free3_neutral   free 2-step algebra on 3 generators, neutral ad-invariant
//                  metric, totally isotropic center
//  h6_htype        6-dimensional H-type algebra with 2-dimensional center

inline std::vector<std::string> builtin_algebra_names()
{
  return {"h3_riemannian", "h3_lorentz", "rxh3", "oscillator4",
          "iso7", "free3_neutral", "h6_htype"};
}

inline MetricLieAlgebra builtin_algebra(const std::string& name)
{
  if (name == "h3_riemannian" || name == "h3_lorentz") {
    AlgebraBuilder b(3);
    b.names({"e1", "e2", "e3"});
    b.bracket(0, 1, 2, 1);
    b.metric_identity();
    if (name == "h3_lorentz")
      b.metric(0, 0, -1);
    return b.build();
  }
  if (name == "rxh3") {
    AlgebraBuilder b(4);
    b.names({"n0", "e1", "e2", "e3"});
    b.bracket(1, 2, 3, 1);
    b.metric(0, 3, Rational(1, 2));
    b.metric(1, 1, 1);
    b.metric(2, 2, 1);
    return b.build();
  }
  if (name == "oscillator4") {
    AlgebraBuilder b(4);
    b.names({"f0", "e1", "e2", "e3"});
    b.bracket(0, 1, 2, 1);
    b.bracket(0, 2, 1, -1);
    b.bracket(1, 2, 3, 1);
    b.metric(0, 3, 1);
    b.metric(1, 1, 1);
    b.metric(2, 2, 1);
    return b.build();
  }
  if (name == "iso7") {
    AlgebraBuilder b(7);
    b.names({"f0", "f1", "f2", "e0", "e1", "e2", "e3"});
    b.bracket(0, 1, 2, 1);  // [f0,f1] = f2
    b.bracket(0, 2, 1, -1); // [f0,f2] = -f1
    b.bracket(0, 4, 5, 1);  // [f0,e1] = e2
    b.bracket(0, 5, 4, -1); // [f0,e2] = -e1
    b.bracket(1, 5, 6, 1);  // [f1,e2] = e3
    b.bracket(2, 4, 6, -1); // [f2,e1] = -e3
    b.bracket(3, 4, 5, 1);  // [e0,e1] = e2
    b.bracket(3, 5, 4, -1); // [e0,e2] = -e1
    b.bracket(4, 5, 6, 1);  // [e1,e2] = e3
    b.metric_identity();
    return b.build();
  }
  if (name == "free3_neutral") {
    AlgebraBuilder b(6);
    b.names({"e1", "e2", "e3", "e4", "e5", "e6"});
    b.bracket(0, 1, 3, 1); // [e1,e2] = e4
    b.bracket(0, 2, 4, 1); // [e1,e3] = e5
    b.bracket(1, 2, 5, 1); // [e2,e3] = e6
    b.metric(0, 5, 1);
    b.metric(2, 3, 1);
    b.metric(1, 4, -1);
    return b.build();
  }
  if (name == "h6_htype") {
    AlgebraBuilder b(6);
    b.names({"v1", "v2", "v3", "v4", "z1", "z2"});
    b.bracket(0, 1, 4, 1);  // [v1,v2] = z1
    b.bracket(2, 3, 4, 1);  // [v3,v4] = z1
    b.bracket(0, 2, 5, 1);  // [v1,v3] = z2
    b.bracket(1, 3, 5, -1); // [v2,v4] = -z2
    b.metric_identity();
    return b.build();
  }
  throw std::invalid_argument("unknown catalog algebra: " + name);
}

/// The 4-dimensional nilpotent algebra sitting inside iso7 as
/// span{f0 - e0, e1, e2, e3}.
inline Subspace iso7_embedded_nilalgebra()
{
  RVec a(7, Rational(0)), b(7, Rational(0)), c(7, Rational(0)), d(7, Rational(0));
  a[0] = 1;
  a[3] = -1;
  b[4] = 1;
  c[5] = 1;
  d[6] = 1;
  return Subspace::span(7, {a, b, c, d});
}

// ---------------------------------------------------------------------------
// Coordinate charts and smooth maps (floating point; verification level)
// ---------------------------------------------------------------------------

struct CoordinateChart {
  std::size_t dim = 0;
  std::function<DMatrix(const DVec&)> metric_at;
};

struct SmoothMap {
  std::size_t dim = 0;
  std::function<DVec(const DVec&)> apply;
  std::function<DMatrix(const DVec&)> closed_form_jacobian; ///< may be empty
  bool has_closed_form_jacobian = false;

  DMatrix jacobian_at(const DVec& p, double fd_step = 1e-6) const
  {
    if (has_closed_form_jacobian)
      return closed_form_jacobian(p);
    DMatrix j(dim, dim);
    for (std::size_t c = 0; c < dim; ++c) {
      DVec plus(p), minus(p);
      plus[c] += fd_step;
      minus[c] -= fd_step;
      DVec fp = apply(plus);
      DVec fm = apply(minus);
      for (std::size_t r = 0; r < dim; ++r)
        j(r, c) = (fp[r] - fm[r]) / (2 * fd_step);
    }
    return j;
  }
};

/// Lorentzian metric of the 4-dimensional model in coordinates (t, x, y, z):
/// g = dt(dz + y/2 dx - x/2 dy) + dx^2 + dy^2 with the symmetric-product
/// convention g(dt,dz) = 1/2.
inline CoordinateChart chart_m4()
{
  CoordinateChart chart;
  chart.dim = 4;
  chart.metric_at = [](const DVec& p) {
    double x = p[1], y = p[2];
    DMatrix g(4, 4);
    g(0, 3) = g(3, 0) = 0.5;
    g(0, 1) = g(1, 0) = y / 4.0;
    g(0, 2) = g(2, 0) = -x / 4.0;
    g(1, 1) = 1.0;
    g(2, 2) = 1.0;
    return g;
  };
  return chart;
}

/// Neutral metric of the 6-dimensional model: g = dx1 dx6 + dx3 dx4 - dx2 dx5
/// with coefficient 1 on each pair, matching the induced metric on the free
/// 2-step algebra (<e1,e6> = <e3,e4> = -<e2,e5> = 1).
inline CoordinateChart chart_m6()
{
  CoordinateChart chart;
  chart.dim = 6;
  chart.metric_at = [](const DVec&) {
    DMatrix g(6, 6);
    g(0, 5) = g(5, 0) = 1.0;
    g(2, 3) = g(3, 2) = 1.0;
    g(1, 4) = g(4, 1) = -1.0;
    return g;
  };
  return chart;
}

inline CoordinateChart builtin_chart(const std::string& name)
{
  if (name == "chartM4")
    return chart_m4();
  if (name == "chartM6")
    return chart_m6();
  throw std::invalid_argument("unknown catalog chart: " + name);
}

namespace detail {

inline void rotate2(double angle, double x, double y, double& ox, double& oy)
{
  ox = std::cos(angle) * x - std::sin(angle) * y;
  oy = std::sin(angle) * x + std::cos(angle) * y;
}

// x^T J y with J = [[0,1],[-1,0]]
inline double symp(double x1, double y1, double x2, double y2)
{
  return x1 * y2 - y1 * x2;
}

} // namespace detail

/// Nilpotent-group left translation L^N_(t1,v1,z1).
inline SmoothMap ln_map(double t1, double x1, double y1, double z1)
{
  SmoothMap m;
  m.dim = 4;
  m.apply = [=](const DVec& p) {
    return DVec{t1 + p[0], x1 + p[1], y1 + p[2],
                z1 + p[3] + 0.5 * detail::symp(x1, y1, p[1], p[2])};
  };
  m.closed_form_jacobian = [=](const DVec&) {
    DMatrix j = DMatrix::identity(4);
    j(3, 1) = -0.5 * y1;
    j(3, 2) = 0.5 * x1;
    return j;
  };
  m.has_closed_form_jacobian = true;
  return m;
}

/// Solvable-group left translation L^G_(t1,v1,z1).
inline SmoothMap lg_map(double t1, double x1, double y1, double z1)
{
  SmoothMap m;
  m.dim = 4;
  m.apply = [=](const DVec& p) {
    double rx, ry;
    detail::rotate2(t1, p[1], p[2], rx, ry);
    return DVec{t1 + p[0], x1 + rx, y1 + ry, z1 + p[3] + 0.5 * detail::symp(x1, y1, rx, ry)};
  };
  m.closed_form_jacobian = [=](const DVec&) {
    DMatrix j = DMatrix::identity(4);
    j(1, 1) = std::cos(t1);
    j(1, 2) = -std::sin(t1);
    j(2, 1) = std::sin(t1);
    j(2, 2) = std::cos(t1);
    j(3, 1) = 0.5 * (x1 * std::sin(t1) - y1 * std::cos(t1));
    j(3, 2) = 0.5 * (x1 * std::cos(t1) + y1 * std::sin(t1));
    return j;
  };
  m.has_closed_form_jacobian = true;
  return m;
}

/// Inner automorphism chi_g of the solvable group, g = (t0, v0, z0).
inline SmoothMap chi_map(double t0, double x0, double y0, double z0)
{
  (void)z0; // central parameter acts trivially
  SmoothMap m;
  m.dim = 4;
  m.apply = [=](const DVec& p) {
    double t = p[0];
    double rx, ry;     // R(t0) v
    detail::rotate2(t0, p[1], p[2], rx, ry);
    double sx, sy;     // R(t) v0
    detail::rotate2(t, x0, y0, sx, sy);
    double vx = x0 + rx - sx;
    double vy = y0 + ry - sy;
    double z = p[3] + 0.5 * detail::symp(x0, y0, rx, ry) - 0.5 * detail::symp(x0, y0, sx, sy) -
               0.5 * detail::symp(rx, ry, sx, sy);
    return DVec{t, vx, vy, z};
  };
  return m;
}

/// The three reflections fixing the identity of the 4-dimensional model.
inline SmoothMap psi_map(int which)
{
  SmoothMap m;
  m.dim = 4;
  if (which == 1) {
    m.apply = [](const DVec& p) { return DVec{-p[0], -p[1], p[2], -p[3]}; };
  } else if (which == 2) {
    m.apply = [](const DVec& p) {
      double rx, ry;
      detail::rotate2(-p[0], p[1], p[2], rx, ry);
      return DVec{-p[0], rx, ry, -p[3]};
    };
  } else if (which == 3) {
    m.apply = [](const DVec& p) {
      double rx, ry;
      detail::rotate2(-p[0], p[1], p[2], rx, ry);
      return DVec{p[0], -rx, ry, p[3]};
    };
  } else {
    throw std::invalid_argument("psi index must be 1, 2 or 3");
  }
  return m;
}

/// Exact differential of psi_k at the identity, on the basis (n0, e1, e2, e3).
inline RMatrix psi_differential_at_identity(int which)
{
  RMatrix a(4, 4);
  switch (which) {
    case 1:
      a(0, 0) = -1;
      a(1, 1) = -1;
      a(2, 2) = 1;
      a(3, 3) = -1;
      return a;
    case 2:
      a(0, 0) = -1;
      a(1, 1) = 1;
      a(2, 2) = 1;
      a(3, 3) = -1;
      return a;
    case 3:
      a(0, 0) = 1;
      a(1, 1) = -1;
      a(2, 2) = 1;
      a(3, 3) = 1;
      return a;
    default:
      throw std::invalid_argument("psi index must be 1, 2 or 3");
  }
}

/// The hyperbolic splitting-preserving isometry family of the 6-dimensional
/// model.
inline SmoothMap ftau_map(double tau)
{
  double c = std::cosh(tau), s = std::sinh(tau);
  SmoothMap m;
  m.dim = 6;
  m.apply = [=](const DVec& p) {
    return DVec{c * p[0] + s * p[2], p[1],          s * p[0] + c * p[2],
                c * p[3] - s * p[5], p[4],          -s * p[3] + c * p[5]};
  };
  m.closed_form_jacobian = [=](const DVec&) {
    DMatrix j(6, 6);
    j(0, 0) = c;
    j(0, 2) = s;
    j(1, 1) = 1;
    j(2, 0) = s;
    j(2, 2) = c;
    j(3, 3) = c;
    j(3, 5) = -s;
    j(4, 4) = 1;
    j(5, 3) = -s;
    j(5, 5) = c;
    return j;
  };
  m.has_closed_form_jacobian = true;
  return m;
}

/// Exact differential of F^tau at 0 on the basis (e1..e6), with the
/// hyperbolic pair parametrized rationally: cosh tau = (lam + 1/lam)/2,
/// sinh tau = (lam - 1/lam)/2 for lam = e^tau. Any positive rational lam
/// gives an exact point of O(1,1), so the exact-arithmetic checks can run on
/// it directly.
inline RMatrix ftau_differential(const Rational& lam)
{
  if (lam <= 0)
    throw PreconditionError("hyperbolic parameter must be positive");
  Rational c = (lam + 1 / lam) / 2;
  Rational s = (lam - 1 / lam) / 2;
  RMatrix j(6, 6);
  j(0, 0) = c;
  j(0, 2) = s;
  j(1, 1) = 1;
  j(2, 0) = s;
  j(2, 2) = c;
  j(3, 3) = c;
  j(3, 5) = -s;
  j(4, 4) = 1;
  j(5, 3) = -s;
  j(5, 5) = c;
  return j;
}

inline SmoothMap identity_map(std::size_t dim)
{
  SmoothMap m;
  m.dim = dim;
  m.apply = [](const DVec& p) { return p; };
  m.closed_form_jacobian = [dim](const DVec&) { return DMatrix::identity(dim); };
  m.has_closed_form_jacobian = true;
  return m;
}

/// (f . g)(p) = f(g(p)) with the chain-rule Jacobian.
inline SmoothMap compose_maps(const SmoothMap& f, const SmoothMap& g)
{
  if (f.dim != g.dim)
    throw DimensionMismatchError("composed map dimensions");
  SmoothMap m;
  m.dim = f.dim;
  m.apply = [f, g](const DVec& p) { return f.apply(g.apply(p)); };
  if (f.has_closed_form_jacobian && g.has_closed_form_jacobian) {
    m.closed_form_jacobian = [f, g](const DVec& p) {
      return f.closed_form_jacobian(g.apply(p)) * g.closed_form_jacobian(p);
    };
    m.has_closed_form_jacobian = true;
  }
  return m;
}

// ---------------------------------------------------------------------------
// Manifold-level verification
// ---------------------------------------------------------------------------

struct PullbackCheck {
  bool ok = false;
  double max_defect = 0.0;
  double tolerance = 0.0;
};

/// Checks J^T g(f(p)) J = g(p) at every sample point. Closed-form Jacobians
/// are held to 1e-10, finite-difference ones to 1e-6.
inline PullbackCheck pullback_isometry_check(const CoordinateChart& chart, const SmoothMap& f,
                                             const std::vector<DVec>& points)
{
  if (chart.dim != f.dim)
    throw DimensionMismatchError("chart and map dimensions");
  PullbackCheck out;
  out.tolerance = f.has_closed_form_jacobian ? 1e-10 : 1e-6;
  for (const auto& p : points) {
    DMatrix j = f.jacobian_at(p);
    DMatrix lhs = j.transposed() * chart.metric_at(f.apply(p)) * j;
    DMatrix g = chart.metric_at(p);
    for (std::size_t r = 0; r < chart.dim; ++r)
      for (std::size_t c = 0; c < chart.dim; ++c)
        out.max_defect = std::max(out.max_defect, std::abs(lhs(r, c) - g(r, c)));
  }
  out.ok = out.max_defect <= out.tolerance;
  return out;
}

inline std::vector<DVec> sample_points(std::size_t dim, std::size_t count, unsigned seed,
                                       double radius = 2.0)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-radius, radius);
  std::vector<DVec> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    DVec p(dim);
    for (auto& x : p)
      x = dist(rng);
    out.push_back(std::move(p));
  }
  return out;
}

struct OrbitCheck {
  bool ok = false;
  double max_t_defect = 0.0;       ///< orbit maps must fix the t coordinate
  double max_target_defect = 0.0;  ///< fiber targets must be reachable
};

/// The maximal connected normal nilpotent subgroup of the isometry group of
/// the 4-dimensional model acts through L^G_(0,w,z) . chi_(0,v,0). Its
/// orbits are exactly the level sets {t = t0}: every generator fixes t, and
/// any (v*, z*) in the fiber is reachable by solving the affine action
/// formulas for (w, z).
inline OrbitCheck nilradical_orbit_check(std::size_t n_points, std::size_t n_targets,
                                         unsigned seed)
{
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  OrbitCheck out;

  for (std::size_t i = 0; i < n_points; ++i) {
    DVec p{dist(rng), dist(rng), dist(rng), dist(rng)};
    SmoothMap gen = compose_maps(lg_map(0.0, dist(rng), dist(rng), dist(rng)),
                                 chi_map(0.0, dist(rng), dist(rng), 0.0));
    DVec q = gen.apply(p);
    out.max_t_defect = std::max(out.max_t_defect, std::abs(q[0] - p[0]));
  }

  for (std::size_t i = 0; i < n_targets; ++i) {
    DVec base{dist(rng), dist(rng), dist(rng), dist(rng)};
    DVec target{base[0], dist(rng), dist(rng), dist(rng)};
    double v0x = dist(rng), v0y = dist(rng);
    SmoothMap inner = chi_map(0.0, v0x, v0y, 0.0);
    DVec mid = inner.apply(base);
    double wx = target[1] - mid[1];
    double wy = target[2] - mid[2];
    double z1 = target[3] - mid[3] - 0.5 * detail::symp(wx, wy, mid[1], mid[2]);
    SmoothMap gen = compose_maps(lg_map(0.0, wx, wy, z1), inner);
    DVec reached = gen.apply(base);
    for (std::size_t c = 0; c < 4; ++c)
      out.max_target_defect = std::max(out.max_target_defect, std::abs(reached[c] - target[c]));
  }

  out.ok = out.max_t_defect <= 1e-12 && out.max_target_defect <= 1e-12;
  return out;
}

} // namespace nilgeo

#endif
