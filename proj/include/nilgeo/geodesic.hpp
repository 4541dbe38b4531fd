#ifndef NILGEO_GEODESIC_HPP
#define NILGEO_GEODESIC_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/geometry.hpp"
#include "nilgeo/lie_algebra.hpp"
#include "nilgeo/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace nilgeo {

/// Sampled geodesic through the identity of a 2-step group with
/// non-degenerate center, in exponential coordinates n = exp(b + a) with
/// b in v and a in z. Coordinates are taken in the split's bases.
struct GeodesicCurve {
  SplitAlgebra split;
  RVec initial_v; ///< w = b'(0), ambient coordinates
  RVec initial_z; ///< u = a'(0), ambient coordinates
  DVec times;
  std::vector<DVec> b_samples; ///< v-coordinates per sample
  std::vector<DVec> a_samples; ///< z-coordinates per sample
  DVec residuals;              ///< finite-difference defect per sample (0 at ends)
  double max_residual = 0.0;
};

namespace detail {

/// Shared evaluation state: b'(t) = exp(t J) w with J = j(a'(0)) constant,
/// and b(t) through the augmented exponential
/// exp(t [[J, w], [0, 0]]) = [[exp(tJ), integral of exp(sJ) w], [0, 1]].
struct GeodesicEvaluator {
  DMatrix j;                     // m x m
  DVec w0;                       // v-coords of w
  DVec u0;                       // z-coords of u
  std::vector<DMatrix> z_tensor; // z_tensor[k](a,b) = z_k-component of [v_a, v_b]
  std::size_t m, p;

  GeodesicEvaluator(const SplitAlgebra& split, const RVec& w_ambient, const RVec& u_ambient)
  {
    m = split.dim_v();
    p = split.dim_z();
    auto [wv, wz] = split.split_coordinates(w_ambient);
    auto [uv, uz] = split.split_coordinates(u_ambient);
    if (!is_zero_vector(wz))
      throw PreconditionError("initial v-velocity must lie in the complement v");
    if (!is_zero_vector(uv))
      throw PreconditionError("initial z-velocity must lie in the center z");
    w0 = to_double(wv);
    u0 = to_double(uz);
    JFamily jf = j_family(split);
    j = to_double(jf.j_from_z_coords(uz));
    const auto& alg = split.algebra();
    z_tensor.assign(p, DMatrix(m, m));
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        RVec br = bracket(alg, split.complement().basis_vector(a),
                          split.complement().basis_vector(b));
        auto [bv, bz] = split.split_coordinates(br);
        if (!is_zero_vector(bv))
          throw NotTwoStepError("brackets of complement vectors must land in the center");
        for (std::size_t k = 0; k < p; ++k) {
          z_tensor[k](a, b) = to_double(bz[k]);
          z_tensor[k](b, a) = -z_tensor[k](a, b);
        }
      }
  }

  DVec bdot(double t) const { return expm(j * t) * w0; }

  /// b(t) by the augmented exponential; used for integrand evaluation.
  DVec b_closed(double t) const
  {
    DMatrix aug(m + 1, m + 1);
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t k = 0; k < m; ++k)
        aug(i, k) = j(i, k) * t;
      aug(i, m) = w0[i] * t;
    }
    DMatrix e = expm(aug);
    DVec out(m);
    for (std::size_t i = 0; i < m; ++i)
      out[i] = e(i, m);
    return out;
  }

  /// z-coordinates of [x, y] for v-coordinate vectors x, y.
  DVec bracket_z(const DVec& x, const DVec& y) const
  {
    DVec out(p, 0.0);
    for (std::size_t k = 0; k < p; ++k) {
      double acc = 0;
      for (std::size_t a = 0; a < m; ++a)
        for (std::size_t b = 0; b < m; ++b)
          acc += x[a] * z_tensor[k](a, b) * y[b];
      out[k] = acc;
    }
    return out;
  }

  /// a'(t) = u - 1/2 [b'(t), b(t)].
  DVec adot(double t) const
  {
    DVec br = bracket_z(bdot(t), b_closed(t));
    DVec out(p);
    for (std::size_t k = 0; k < p; ++k)
      out[k] = u0[k] - 0.5 * br[k];
    return out;
  }
};

} // namespace detail

/// Finite-difference defect of the geodesic system at the interior samples:
/// |b'' - j(a'(0)) b'| + |a' + 1/2 [b', b] - a'(0)| with three-point centered
/// differences (diagnostic Euclidean norm). Needs at least 5 samples.
inline double geodesic_residual(const GeodesicCurve& curve)
{
  if (curve.times.size() < 5)
    throw PreconditionError("geodesic residual needs at least 5 samples");
  detail::GeodesicEvaluator eval(curve.split, curve.initial_v, curve.initial_z);
  double worst = 0;
  for (std::size_t s = 1; s + 1 < curve.times.size(); ++s) {
    double t0 = curve.times[s - 1], t1 = curve.times[s], t2 = curve.times[s + 1];
    DVec bdot(eval.m), bddot(eval.m), adot(eval.p);
    for (std::size_t i = 0; i < eval.m; ++i) {
      bdot[i] = fd_first(t0, curve.b_samples[s - 1][i], t1, curve.b_samples[s][i], t2,
                         curve.b_samples[s + 1][i], t1);
      bddot[i] = fd_second(t0, curve.b_samples[s - 1][i], t1, curve.b_samples[s][i], t2,
                           curve.b_samples[s + 1][i]);
    }
    for (std::size_t k = 0; k < eval.p; ++k)
      adot[k] = fd_first(t0, curve.a_samples[s - 1][k], t1, curve.a_samples[s][k], t2,
                         curve.a_samples[s + 1][k], t1);
    DVec first = eval.j * bdot;
    double defect = 0;
    double acc = 0;
    for (std::size_t i = 0; i < eval.m; ++i) {
      double d = bddot[i] - first[i];
      acc += d * d;
    }
    defect += std::sqrt(acc);
    DVec br = eval.bracket_z(bdot, curve.b_samples[s]);
    acc = 0;
    for (std::size_t k = 0; k < eval.p; ++k) {
      double d = adot[k] + 0.5 * br[k] - eval.u0[k];
      acc += d * d;
    }
    defect += std::sqrt(acc);
    worst = std::max(worst, defect);
  }
  return worst;
}

/// Constructs the geodesic through the identity with initial velocity w + u,
/// w in v and u in z (both in ambient coordinates). b'(t) = exp(t j(u)) w in
/// closed form; b and a follow by adaptive Simpson quadrature between
/// samples (absolute tolerance `quad_tol` per step).
inline GeodesicCurve geodesic(const SplitAlgebra& split, const RVec& w, const RVec& u,
                              const DVec& t_grid, double quad_tol = 1e-11)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("the geodesic system requires v = z-perp");
  auto report = validate(split.algebra());
  if (!report.nilpotency_step || *report.nilpotency_step > 2)
    throw NotTwoStepError("the geodesic system is derived for 2-step algebras");
  for (std::size_t s = 1; s < t_grid.size(); ++s)
    if (!(t_grid[s] > t_grid[s - 1]))
      throw PreconditionError("time grid must be strictly increasing");

  detail::GeodesicEvaluator eval(split, w, u);
  GeodesicCurve curve{split, w, u, t_grid, {}, {}, {}, 0.0};

  double t_prev = 0.0;
  DVec b_acc(eval.m, 0.0);
  DVec a_acc(eval.p, 0.0);
  for (double t : t_grid) {
    if (t != t_prev) {
      DVec db = integrate_adaptive_simpson([&](double s) { return eval.bdot(s); }, t_prev, t,
                                           quad_tol);
      DVec da = integrate_adaptive_simpson([&](double s) { return eval.adot(s); }, t_prev, t,
                                           quad_tol);
      b_acc = b_acc + db;
      a_acc = a_acc + da;
      t_prev = t;
    }
    curve.b_samples.push_back(b_acc);
    curve.a_samples.push_back(a_acc);
  }

  curve.residuals.assign(t_grid.size(), 0.0);
  if (t_grid.size() >= 5) {
    for (std::size_t s = 1; s + 1 < t_grid.size(); ++s) {
      double t0 = t_grid[s - 1], t1 = t_grid[s], t2 = t_grid[s + 1];
      DVec bdot(eval.m), bddot(eval.m), adot(eval.p);
      for (std::size_t i = 0; i < eval.m; ++i) {
        bdot[i] = fd_first(t0, curve.b_samples[s - 1][i], t1, curve.b_samples[s][i], t2,
                           curve.b_samples[s + 1][i], t1);
        bddot[i] = fd_second(t0, curve.b_samples[s - 1][i], t1, curve.b_samples[s][i], t2,
                             curve.b_samples[s + 1][i]);
      }
      for (std::size_t k = 0; k < eval.p; ++k)
        adot[k] = fd_first(t0, curve.a_samples[s - 1][k], t1, curve.a_samples[s][k], t2,
                           curve.a_samples[s + 1][k], t1);
      DVec first = eval.j * bdot;
      double acc = 0;
      for (std::size_t i = 0; i < eval.m; ++i) {
        double d = bddot[i] - first[i];
        acc += d * d;
      }
      double defect = std::sqrt(acc);
      DVec br = eval.bracket_z(bdot, curve.b_samples[s]);
      acc = 0;
      for (std::size_t k = 0; k < eval.p; ++k) {
        double d = adot[k] + 0.5 * br[k] - eval.u0[k];
        acc += d * d;
      }
      defect += std::sqrt(acc);
      curve.residuals[s] = defect;
      curve.max_residual = std::max(curve.max_residual, defect);
    }
  }
  return curve;
}

/// Analytic velocities of the closed-form construction at time t, for
/// verification: (b'(t), b(t), a'(t)).
struct GeodesicState {
  DVec bdot;
  DVec b;
  DVec adot;
};

inline GeodesicState geodesic_state(const SplitAlgebra& split, const RVec& w, const RVec& u,
                                    double t)
{
  detail::GeodesicEvaluator eval(split, w, u);
  return {eval.bdot(t), eval.b_closed(t), eval.adot(t)};
}

/// Geodesics of a bi-invariant metric through the identity are the
/// one-parameter groups: straight rays in exponential coordinates. The
/// connection defect 1/2 [u, u] is checked exactly.
struct BiinvariantRay {
  RVec direction;
  DVec times;
  std::vector<DVec> samples;
  bool connection_defect_zero = false;
};

inline BiinvariantRay biinvariant_geodesic(const MetricLieAlgebra& alg, const RVec& u,
                                           const DVec& t_grid)
{
  if (!is_ad_invariant(alg))
    throw NotBiInvariantError("one-parameter-group geodesics require a bi-invariant metric");
  BiinvariantRay ray;
  ray.direction = u;
  ray.times = t_grid;
  DVec ud = to_double(u);
  for (double t : t_grid) {
    DVec sample(ud.size());
    for (std::size_t i = 0; i < ud.size(); ++i)
      sample[i] = t * ud[i];
    ray.samples.push_back(std::move(sample));
  }
  ray.connection_defect_zero = is_zero_vector(levi_civita(alg, u, u));
  return ray;
}

} // namespace nilgeo

#endif
