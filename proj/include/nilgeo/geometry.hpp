#ifndef NILGEO_GEOMETRY_HPP
#define NILGEO_GEOMETRY_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/lie_algebra.hpp"
#include "nilgeo/matrix.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace nilgeo {

/// Metric adjoint of ad_u: the unique map with <ad*_u w, v> = <w, [u, v]>,
/// computed exactly as g^{-1} (ad_u)^T g.
inline RMatrix ad_star(const MetricLieAlgebra& alg, const RVec& u)
{
  return alg.metric_inverse() * alg.ad(u).transposed() * alg.metric();
}

/// The family of skew maps j(w) : v -> v, w in the center, defined by
/// <j(w)u, u'> = <w, [u, u']>. Maps are stored in the complement-basis
/// coordinates of the split.
class JFamily {
public:
  JFamily(SplitAlgebra split, std::vector<RMatrix> maps)
    : split_(std::move(split)), maps_(std::move(maps))
  {
  }

  const SplitAlgebra& split() const { return split_; }
  std::size_t count() const { return maps_.size(); }

  /// j of the k-th center basis vector, as an m x m matrix on v-coordinates.
  const RMatrix& map(std::size_t k) const { return maps_[k]; }

  /// j extended linearly to a center vector given in z-coordinates.
  RMatrix j_from_z_coords(const RVec& z_coords) const
  {
    if (z_coords.size() != maps_.size())
      throw DimensionMismatchError("j-map coefficient count");
    RMatrix out(split_.dim_v(), split_.dim_v());
    for (std::size_t k = 0; k < maps_.size(); ++k)
      if (z_coords[k] != 0)
        out = out + z_coords[k] * maps_[k];
    return out;
  }

  /// j of an ambient vector, which must lie in the center.
  RMatrix j(const RVec& w_ambient) const
  {
    auto coords = split_.center_space().coordinates(w_ambient);
    if (!coords)
      throw PreconditionError("j-map argument is not a central vector");
    return j_from_z_coords(*coords);
  }

private:
  SplitAlgebra split_;
  std::vector<RMatrix> maps_;
};

/// Builds the j-family of an orthogonal split (v = z-perp, center
/// non-degenerate): j(z_k) = G_v^{-1} S_k^T with S_k[a][b] = <z_k, [v_a, v_b]>.
inline JFamily j_family(const SplitAlgebra& split)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("j-maps require the orthogonal splitting v = z-perp");
  const auto& alg = split.algebra();
  std::size_t m = split.dim_v();
  RMatrix gram_v_inv = m > 0 ? inverse(split.gram_v()) : RMatrix(0, 0);
  std::vector<RMatrix> maps;
  maps.reserve(split.dim_z());
  for (std::size_t k = 0; k < split.dim_z(); ++k) {
    RVec zk = split.center_space().basis_vector(k);
    RMatrix s(m, m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = a + 1; b < m; ++b) {
        Rational value = alg.inner(zk, bracket(alg, split.complement().basis_vector(a),
                                               split.complement().basis_vector(b)));
        s(a, b) = value;
        s(b, a) = -value;
      }
    maps.push_back(gram_v_inv * s.transposed());
  }
  return JFamily(split, std::move(maps));
}

/// Levi-Civita connection on left-invariant fields:
/// 2 nabla_u w = [u, w] - ad*_u w - ad*_w u. Valid for any non-degenerate
/// metric (no splitting assumptions).
inline RVec levi_civita(const MetricLieAlgebra& alg, const RVec& u, const RVec& w)
{
  RVec uw = bracket(alg, u, w);
  RVec a = ad_star(alg, u) * w;
  RVec b = ad_star(alg, w) * u;
  RVec out(alg.dim());
  for (std::size_t i = 0; i < alg.dim(); ++i)
    out[i] = (uw[i] - a[i] - b[i]) / 2;
  return out;
}

/// Case-split form of the connection for an orthogonal split of a 2-step
/// algebra: nabla_u w = 1/2 [u,w] for u,w in v; -1/2 j(w)u mixed; 0 on the
/// center. Used as a cross-check of the general formula.
inline RVec levi_civita_split(const SplitAlgebra& split, const JFamily& jf,
                              const RVec& u, const RVec& w)
{
  auto [uv, uz] = split.split_coordinates(u);
  auto [wv, wz] = split.split_coordinates(w);
  const auto& alg = split.algebra();
  RVec out(alg.dim(), Rational(0));
  // v-v part
  RVec term = bracket(alg, split.v_to_ambient(uv), split.v_to_ambient(wv));
  for (std::size_t i = 0; i < alg.dim(); ++i)
    out[i] += term[i] / 2;
  // u in v, w in z: -1/2 j(w) u, plus the symmetric mixed case
  RVec mixed1 = jf.j_from_z_coords(wz) * uv;
  RVec mixed2 = jf.j_from_z_coords(uz) * wv;
  RVec mixed_ambient = split.v_to_ambient(mixed1) + split.v_to_ambient(mixed2);
  for (std::size_t i = 0; i < alg.dim(); ++i)
    out[i] -= mixed_ambient[i] / 2;
  // z-z part vanishes
  return out;
}

/// Curvature operator R(u, w) = -1/4 ad([u, w]) of a bi-invariant metric.
inline RMatrix curvature_biinvariant(const MetricLieAlgebra& alg, const RVec& u, const RVec& w)
{
  if (!is_ad_invariant(alg))
    throw NotBiInvariantError("the curvature formula R(u,w) = -1/4 ad([u,w]) needs ad-invariance");
  return Rational(-1, 4) * alg.ad(bracket(alg, u, w));
}

/// Ricci data of a 2-step algebra with non-degenerate center. The operator
/// preserves both blocks; on v it is  1/2 sum_k (1/q_k) j(c_k)^2  over an
/// exact orthogonal center basis {c_k} with <c_k, c_k> = q_k (equivalent to
/// the orthonormal-basis form but free of square roots), and on z it solves
/// <Rc u, u'> = -1/4 trace(j(u) j(u')).
struct RicciData {
  RMatrix op;      ///< operator on the ambient basis
  RMatrix form;    ///< Ric(x_i, x_j) = <Rc x_i, x_j>
  Rational scalar; ///< trace of the operator
  RMatrix block_v; ///< operator block in v-coordinates
  RMatrix block_z; ///< operator block in z-coordinates
};

inline RicciData ricci(const SplitAlgebra& split, PivotRule rule = PivotRule::MaxAbs)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("the Ricci block formulas require v = z-perp");
  if (!is_two_step_nilpotent(split.algebra()))
    throw NotTwoStepError("the Ricci block formulas require a 2-step nilpotent algebra");

  JFamily jf = j_family(split);
  std::size_t m = split.dim_v();
  std::size_t p = split.dim_z();

  OrthogonalBasis center_basis = orthogonalize(split.gram_z(), rule);
  RMatrix block_v(m, m);
  for (std::size_t k = 0; k < p; ++k) {
    RMatrix jk = jf.j_from_z_coords(center_basis.vectors[k]);
    block_v = block_v + (Rational(1, 2) / center_basis.norms[k]) * (jk * jk);
  }

  RMatrix ric_z(p, p);
  for (std::size_t k = 0; k < p; ++k)
    for (std::size_t l = k; l < p; ++l) {
      Rational value = Rational(-1, 4) * (jf.map(k) * jf.map(l)).trace();
      ric_z(k, l) = value;
      ric_z(l, k) = value;
    }
  RMatrix block_z = p > 0 ? inverse(split.gram_z()) * ric_z : RMatrix(0, 0);

  // Assemble on the ambient basis via the split basis change.
  std::size_t n = split.algebra().dim();
  RMatrix columns(n, n);
  for (std::size_t a = 0; a < m; ++a) {
    RVec v = split.complement().basis_vector(a);
    for (std::size_t i = 0; i < n; ++i)
      columns(i, a) = v[i];
  }
  for (std::size_t a = 0; a < p; ++a) {
    RVec z = split.center_space().basis_vector(a);
    for (std::size_t i = 0; i < n; ++i)
      columns(i, m + a) = z[i];
  }
  RMatrix block_diag(n, n);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      block_diag(a, b) = block_v(a, b);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b)
      block_diag(m + a, m + b) = block_z(a, b);

  RicciData out;
  out.op = columns * block_diag * inverse(columns);
  out.form = out.op.transposed() * split.algebra().metric();
  out.scalar = out.op.trace();
  out.block_v = std::move(block_v);
  out.block_z = std::move(block_z);
  return out;
}

} // namespace nilgeo

#endif
