#ifndef NILGEO_LIE_ALGEBRA_HPP
#define NILGEO_LIE_ALGEBRA_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/matrix.hpp"
#include "nilgeo/rational.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilgeo {

// ---------------------------------------------------------------------------
// Subspace
// ---------------------------------------------------------------------------

/// Linear subspace of Q^n, stored as the reduced row echelon basis of its
/// span so that equal subspaces compare equal.
class Subspace {
public:
  Subspace() : ambient_(0) {}

  /// Span of the given vectors (rows); dependent generators are allowed and
  /// reduced away.
  static Subspace span(std::size_t ambient_dim, const std::vector<RVec>& vectors)
  {
    RMatrix m(vectors.size(), ambient_dim);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
      if (vectors[i].size() != ambient_dim)
        throw DimensionMismatchError("subspace generator length");
      m.set_row(i, vectors[i]);
    }
    return from_rows(m);
  }

  static Subspace from_rows(RMatrix m)
  {
    std::size_t ambient = m.cols();
    std::size_t r = rref(m);
    RMatrix basis(r, ambient);
    for (std::size_t i = 0; i < r; ++i)
      basis.set_row(i, m.row(i));
    Subspace s;
    s.ambient_ = ambient;
    s.basis_ = std::move(basis);
    return s;
  }

  static Subspace zero(std::size_t ambient_dim)
  {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = RMatrix(0, ambient_dim);
    return s;
  }

  static Subspace full(std::size_t ambient_dim)
  {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = RMatrix::identity(ambient_dim);
    return s;
  }

  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const RMatrix& basis() const { return basis_; }
  RVec basis_vector(std::size_t i) const { return basis_.row(i); }

  bool operator==(const Subspace& other) const
  {
    return ambient_ == other.ambient_ && basis_ == other.basis_;
  }
  bool operator!=(const Subspace& other) const { return !(*this == other); }

  bool contains(const RVec& v) const
  {
    if (v.size() != ambient_)
      throw DimensionMismatchError("membership test vector length");
    if (is_zero_vector(v))
      return true;
    RMatrix stacked(dim() + 1, ambient_);
    for (std::size_t i = 0; i < dim(); ++i)
      stacked.set_row(i, basis_.row(i));
    stacked.set_row(dim(), v);
    return rank(stacked) == dim();
  }

  bool contains(const Subspace& other) const
  {
    if (other.ambient_ != ambient_)
      throw DimensionMismatchError("containment test ambient dimensions");
    for (std::size_t i = 0; i < other.dim(); ++i)
      if (!contains(other.basis_vector(i)))
        return false;
    return true;
  }

  Subspace sum(const Subspace& other) const
  {
    if (other.ambient_ != ambient_)
      throw DimensionMismatchError("subspace sum ambient dimensions");
    return from_rows(vstack(basis_, other.basis_));
  }

  /// Coordinates of v in this basis; empty optional when v is outside.
  std::optional<RVec> coordinates(const RVec& v) const
  {
    RVec coords;
    if (!solve_linear(basis_.transposed(), v, coords))
      return std::nullopt;
    return coords;
  }

private:
  std::size_t ambient_;
  RMatrix basis_;
};

// ---------------------------------------------------------------------------
// MetricLieAlgebra
// ---------------------------------------------------------------------------

/// Finite-dimensional Lie algebra with exact structure constants
/// [x_i, x_j] = sum_k c[i][j][k] x_k and a non-degenerate symmetric bilinear
/// form given on the same basis. Immutable after construction.
class MetricLieAlgebra {
public:
  MetricLieAlgebra(std::vector<std::string> basis_names,
                   std::vector<Rational> structure, // flat [i][j][k], row-major
                   RMatrix metric)
    : dim_(basis_names.size()),
      names_(std::move(basis_names)),
      structure_(std::move(structure)),
      metric_(std::move(metric))
  {
    if (structure_.size() != dim_ * dim_ * dim_)
      throw DimensionMismatchError("structure constant tensor size");
    if (metric_.rows() != dim_ || metric_.cols() != dim_)
      throw DimensionMismatchError("metric matrix size");
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (c(i, j, k) != -c(j, i, k))
            throw PreconditionError("structure constants are not antisymmetric at (" +
                                    std::to_string(i) + "," + std::to_string(j) + ")");
    if (!metric_.is_symmetric())
      throw PreconditionError("metric matrix is not symmetric");
    if (determinant(metric_) == 0)
      throw PreconditionError("metric matrix is degenerate");
    metric_inverse_ = inverse(metric_);
    ad_.reserve(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      RMatrix m(dim_, dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          m(k, j) = c(i, j, k); // column j = [x_i, x_j]
      ad_.push_back(std::move(m));
    }
  }

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const RMatrix& metric() const { return metric_; }
  const RMatrix& metric_inverse() const { return metric_inverse_; }

  const Rational& c(std::size_t i, std::size_t j, std::size_t k) const
  {
    return structure_[(i * dim_ + j) * dim_ + k];
  }

  /// [x_i, x_j] as a coordinate vector.
  RVec bracket_basis(std::size_t i, std::size_t j) const
  {
    RVec out(dim_);
    for (std::size_t k = 0; k < dim_; ++k)
      out[k] = c(i, j, k);
    return out;
  }

  /// Matrix of ad_u, column j = [u, x_j].
  RMatrix ad(const RVec& u) const
  {
    if (u.size() != dim_)
      throw DimensionMismatchError("ad argument length");
    RMatrix m(dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i] == 0)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          m(k, j) += u[i] * c(i, j, k);
    }
    return m;
  }

  const RMatrix& ad_basis(std::size_t i) const { return ad_[i]; }

  Rational inner(const RVec& u, const RVec& v) const
  {
    if (u.size() != dim_ || v.size() != dim_)
      throw DimensionMismatchError("inner product argument length");
    Rational acc(0);
    for (std::size_t i = 0; i < dim_; ++i) {
      if (u[i] == 0)
        continue;
      for (std::size_t j = 0; j < dim_; ++j)
        acc += u[i] * metric_(i, j) * v[j];
    }
    return acc;
  }

  bool operator==(const MetricLieAlgebra& other) const
  {
    return dim_ == other.dim_ && structure_ == other.structure_ && metric_ == other.metric_;
  }

private:
  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<Rational> structure_;
  RMatrix metric_;
  RMatrix metric_inverse_;
  std::vector<RMatrix> ad_;
};

/// Incremental construction helper; indices are 0-based, antisymmetry and the
/// symmetric closure of the metric are applied automatically.
class AlgebraBuilder {
public:
  explicit AlgebraBuilder(std::size_t dim)
    : dim_(dim), structure_(dim * dim * dim, Rational(0)), metric_(dim, dim)
  {
    names_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i)
      names_.push_back("x" + std::to_string(i + 1));
  }

  AlgebraBuilder& names(std::vector<std::string> n)
  {
    if (n.size() != dim_)
      throw DimensionMismatchError("basis name count");
    names_ = std::move(n);
    return *this;
  }

  AlgebraBuilder& bracket(std::size_t i, std::size_t j, std::size_t k, const Rational& value)
  {
    check_index(i);
    check_index(j);
    check_index(k);
    structure_[(i * dim_ + j) * dim_ + k] = value;
    structure_[(j * dim_ + i) * dim_ + k] = -value;
    return *this;
  }

  AlgebraBuilder& metric(std::size_t i, std::size_t j, const Rational& value)
  {
    check_index(i);
    check_index(j);
    metric_(i, j) = value;
    metric_(j, i) = value;
    return *this;
  }

  AlgebraBuilder& metric_identity()
  {
    for (std::size_t i = 0; i < dim_; ++i)
      metric_(i, i) = 1;
    return *this;
  }

  MetricLieAlgebra build() const { return MetricLieAlgebra(names_, structure_, metric_); }

private:
  void check_index(std::size_t i) const
  {
    if (i >= dim_)
      throw DimensionMismatchError("basis index " + std::to_string(i) + " out of range");
  }

  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<Rational> structure_;
  RMatrix metric_;
};

// ---------------------------------------------------------------------------
// Core operations
// ---------------------------------------------------------------------------

/// Bilinear extension of the structure constants.
inline RVec bracket(const MetricLieAlgebra& alg, const RVec& u, const RVec& v)
{
  std::size_t n = alg.dim();
  if (u.size() != n || v.size() != n)
    throw DimensionMismatchError("bracket argument length");
  RVec out(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (u[i] == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (v[j] == 0)
        continue;
      Rational f = u[i] * v[j];
      for (std::size_t k = 0; k < n; ++k)
        out[k] += f * alg.c(i, j, k);
    }
  }
  return out;
}

/// Span of all brackets [x_i, x_j] (the derived subalgebra).
inline Subspace derived_subalgebra(const MetricLieAlgebra& alg)
{
  std::vector<RVec> gens;
  for (std::size_t i = 0; i < alg.dim(); ++i)
    for (std::size_t j = i + 1; j < alg.dim(); ++j)
      gens.push_back(alg.bracket_basis(i, j));
  return Subspace::span(alg.dim(), gens);
}

namespace detail {

inline Subspace bracket_span(const MetricLieAlgebra& alg, const Subspace& a, const Subspace& b)
{
  std::vector<RVec> gens;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j)
      gens.push_back(bracket(alg, a.basis_vector(i), b.basis_vector(j)));
  return Subspace::span(alg.dim(), gens);
}

} // namespace detail

struct ValidationReport {
  bool jacobi_ok = false;
  std::optional<int> nilpotency_step; ///< empty when the algebra is not nilpotent
  bool solvable = false;
};

/// Checks the Jacobi identity on all basis triples and computes the lower
/// central and derived series.
inline ValidationReport validate(const MetricLieAlgebra& alg)
{
  ValidationReport report;
  std::size_t n = alg.dim();
  report.jacobi_ok = true;
  for (std::size_t i = 0; i < n && report.jacobi_ok; ++i)
    for (std::size_t j = 0; j < n && report.jacobi_ok; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RVec xi(n, Rational(0)), xj(n, Rational(0)), xk(n, Rational(0));
        xi[i] = 1;
        xj[j] = 1;
        xk[k] = 1;
        RVec sum = bracket(alg, bracket(alg, xi, xj), xk) +
                   bracket(alg, bracket(alg, xj, xk), xi) +
                   bracket(alg, bracket(alg, xk, xi), xj);
        if (!is_zero_vector(sum)) {
          report.jacobi_ok = false;
          break;
        }
      }

  // Lower central series: g_1 = g, g_{s+1} = [g, g_s].
  Subspace whole = Subspace::full(n);
  Subspace term = whole;
  for (int step = 1; step <= static_cast<int>(n) + 1; ++step) {
    Subspace next = detail::bracket_span(alg, whole, term);
    if (next.dim() == 0) {
      report.nilpotency_step = step;
      break;
    }
    if (next.dim() == term.dim() && term.contains(next))
      break; // series stabilized without vanishing
    term = next;
  }

  // Derived series.
  Subspace d = whole;
  for (std::size_t step = 0; step <= n + 1; ++step) {
    Subspace next = detail::bracket_span(alg, d, d);
    if (next.dim() == 0) {
      report.solvable = true;
      break;
    }
    if (next.dim() == d.dim() && d.contains(next))
      break;
    d = next;
  }
  return report;
}

inline bool is_two_step_nilpotent(const MetricLieAlgebra& alg)
{
  auto report = validate(alg);
  return report.nilpotency_step.has_value() && *report.nilpotency_step == 2;
}

/// Exact kernel of u -> ([u, x_j])_j.
inline Subspace center(const MetricLieAlgebra& alg)
{
  std::size_t n = alg.dim();
  RMatrix stacked(n * n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        stacked(j * n + k, i) = alg.c(i, j, k);
  return Subspace::from_rows(nullspace(stacked));
}

struct MetricRestriction {
  RMatrix gram;
  bool nondegenerate = false;
  std::optional<std::pair<int, int>> signature; ///< (positive, negative) when nondegenerate
};

struct OrthogonalBasis {
  std::vector<RVec> vectors;   ///< exact mutually orthogonal vectors
  std::vector<Rational> norms; ///< <b_i, b_i>, all non-zero
};

struct PseudoOrthonormalBasis {
  std::vector<DVec> vectors; ///< unit-normalized, inexact
  std::vector<int> signs;    ///< <b_i, b_i> = signs[i]
  bool approximate = true;   ///< the sqrt normalization is the only inexact step
};

enum class PivotRule { MaxAbs, FirstNonZero };

/// Exact orthogonalization of a non-degenerate symmetric Gram matrix by
/// symmetric pivoting. The returned vectors are coefficient rows in the
/// coordinates the Gram matrix was written in. Diagonal pivoting picks the
/// largest |entry| (or the first non-zero under PivotRule::FirstNonZero);
/// when the whole remaining diagonal vanishes a hyperbolic pair g_ij != 0 is
/// merged first, which handles totally isotropic coordinate bases.
inline OrthogonalBasis orthogonalize(const RMatrix& gram, PivotRule rule = PivotRule::MaxAbs)
{
  if (!gram.is_symmetric())
    throw PreconditionError("orthogonalize requires a symmetric Gram matrix");
  if (gram.rows() > 0 && determinant(gram) == 0)
    throw PreconditionError("orthogonalize requires a non-degenerate Gram matrix");
  std::size_t k = gram.rows();
  auto pair_inner = [&](const RVec& a, const RVec& b) {
    Rational acc(0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        acc += a[i] * gram(i, j) * b[j];
    return acc;
  };

  std::vector<RVec> work;
  for (std::size_t i = 0; i < k; ++i) {
    RVec e(k, Rational(0));
    e[i] = 1;
    work.push_back(std::move(e));
  }

  OrthogonalBasis out;
  while (!work.empty()) {
    std::size_t chosen = work.size();
    Rational best(0);
    for (std::size_t i = 0; i < work.size(); ++i) {
      Rational q = pair_inner(work[i], work[i]);
      if (q == 0)
        continue;
      if (rule == PivotRule::FirstNonZero) {
        chosen = i;
        break;
      }
      if (chosen == work.size() || abs(q) > best) {
        chosen = i;
        best = abs(q);
      }
    }
    if (chosen == work.size()) {
      // All remaining diagonal entries vanish; non-degeneracy provides an
      // off-diagonal hyperbolic pair.
      bool merged = false;
      for (std::size_t i = 0; i < work.size() && !merged; ++i)
        for (std::size_t j = i + 1; j < work.size() && !merged; ++j)
          if (pair_inner(work[i], work[j]) != 0) {
            work[i] = work[i] + work[j];
            chosen = i;
            merged = true;
          }
      if (!merged)
        throw PreconditionError("degenerate Gram matrix in orthogonalization");
    }
    RVec v = work[chosen];
    work.erase(work.begin() + chosen);
    Rational q = pair_inner(v, v);
    for (auto& u : work) {
      Rational f = pair_inner(u, v) / q;
      if (f != 0)
        u = u - f * v;
    }
    out.vectors.push_back(std::move(v));
    out.norms.push_back(std::move(q));
  }
  return out;
}

/// Unit-normalized variant; the square roots are the single inexact step.
inline PseudoOrthonormalBasis pseudo_orthonormal_basis(const RMatrix& gram,
                                                       PivotRule rule = PivotRule::MaxAbs)
{
  OrthogonalBasis exact = orthogonalize(gram, rule);
  PseudoOrthonormalBasis out;
  for (std::size_t i = 0; i < exact.vectors.size(); ++i) {
    double scale = 1.0 / std::sqrt(std::abs(to_double(exact.norms[i])));
    DVec v(exact.vectors[i].size());
    for (std::size_t j = 0; j < v.size(); ++j)
      v[j] = to_double(exact.vectors[i][j]) * scale;
    out.vectors.push_back(std::move(v));
    out.signs.push_back(exact.norms[i] > 0 ? 1 : -1);
  }
  return out;
}

/// Gram matrix of the metric on the subspace basis, with exact
/// non-degeneracy and (when applicable) signature by Sylvester counting of
/// the orthogonalized squared norms.
inline MetricRestriction restrict_metric(const MetricLieAlgebra& alg, const Subspace& s)
{
  if (s.ambient_dim() != alg.dim())
    throw DimensionMismatchError("restrict_metric ambient dimension");
  std::size_t k = s.dim();
  MetricRestriction out;
  out.gram = RMatrix(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      out.gram(a, b) = alg.inner(s.basis_vector(a), s.basis_vector(b));
  out.nondegenerate = (k == 0) || determinant(out.gram) != 0;
  if (out.nondegenerate) {
    auto basis = orthogonalize(out.gram);
    int plus = 0, minus = 0;
    for (const auto& q : basis.norms)
      (q > 0 ? plus : minus)++;
    out.signature = std::make_pair(plus, minus);
  }
  return out;
}

/// Exact kernel of v -> (<v, s>)_{s in basis(S)}.
inline Subspace orthogonal_complement(const MetricLieAlgebra& alg, const Subspace& s)
{
  if (s.ambient_dim() != alg.dim())
    throw DimensionMismatchError("orthogonal_complement ambient dimension");
  RMatrix pairings(s.dim(), alg.dim());
  for (std::size_t a = 0; a < s.dim(); ++a) {
    RVec row = alg.metric() * s.basis_vector(a);
    pairings.set_row(a, row);
  }
  return Subspace::from_rows(nullspace(pairings));
}

/// true iff <[u,v],w> + <v,[u,w]> = 0 on all basis triples.
inline bool is_ad_invariant(const MetricLieAlgebra& alg)
{
  std::size_t n = alg.dim();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        Rational acc(0);
        for (std::size_t l = 0; l < n; ++l)
          acc += alg.c(i, j, l) * alg.metric()(l, k) + alg.c(i, k, l) * alg.metric()(j, l);
        if (acc != 0)
          return false;
      }
  return true;
}

// ---------------------------------------------------------------------------
// SplitAlgebra
// ---------------------------------------------------------------------------

/// A metric Lie algebra together with a decomposition n = v (+) z where z is
/// the center. The orthogonal constructor takes v = z-perp, which requires
/// the center to be non-degenerate; split_with accepts any vector-space
/// complement (needed when the center is degenerate).
class SplitAlgebra {
public:
  SplitAlgebra(MetricLieAlgebra alg, Subspace center_space, Subspace complement, bool orthogonal)
    : alg_(std::move(alg)),
      center_(std::move(center_space)),
      complement_(std::move(complement)),
      orthogonal_(orthogonal)
  {
    std::size_t n = alg_.dim();
    combined_ = RMatrix(n, n);
    for (std::size_t i = 0; i < complement_.dim(); ++i)
      combined_.set_row(i, complement_.basis_vector(i));
    for (std::size_t i = 0; i < center_.dim(); ++i)
      combined_.set_row(complement_.dim() + i, center_.basis_vector(i));
    combined_inverse_t_ = inverse(combined_.transposed());

    gram_v_ = RMatrix(complement_.dim(), complement_.dim());
    for (std::size_t a = 0; a < complement_.dim(); ++a)
      for (std::size_t b = 0; b < complement_.dim(); ++b)
        gram_v_(a, b) = alg_.inner(complement_.basis_vector(a), complement_.basis_vector(b));
    gram_z_ = RMatrix(center_.dim(), center_.dim());
    for (std::size_t a = 0; a < center_.dim(); ++a)
      for (std::size_t b = 0; b < center_.dim(); ++b)
        gram_z_(a, b) = alg_.inner(center_.basis_vector(a), center_.basis_vector(b));
  }

  const MetricLieAlgebra& algebra() const { return alg_; }
  const Subspace& center_space() const { return center_; }
  const Subspace& complement() const { return complement_; }
  bool orthogonal() const { return orthogonal_; }

  std::size_t dim_v() const { return complement_.dim(); }
  std::size_t dim_z() const { return center_.dim(); }

  const RMatrix& gram_v() const { return gram_v_; }
  const RMatrix& gram_z() const { return gram_z_; }

  /// Splits an ambient vector into (v-coordinates, z-coordinates), exactly.
  std::pair<RVec, RVec> split_coordinates(const RVec& u) const
  {
    RVec coords = combined_inverse_t_ * u;
    RVec v(coords.begin(), coords.begin() + dim_v());
    RVec z(coords.begin() + dim_v(), coords.end());
    return {v, z};
  }

  RVec v_to_ambient(const RVec& v_coords) const
  {
    RVec out(alg_.dim(), Rational(0));
    for (std::size_t a = 0; a < dim_v(); ++a)
      if (v_coords[a] != 0)
        out = out + v_coords[a] * complement_.basis_vector(a);
    return out;
  }

  RVec z_to_ambient(const RVec& z_coords) const
  {
    RVec out(alg_.dim(), Rational(0));
    for (std::size_t a = 0; a < dim_z(); ++a)
      if (z_coords[a] != 0)
        out = out + z_coords[a] * center_.basis_vector(a);
    return out;
  }

private:
  MetricLieAlgebra alg_;
  Subspace center_;
  Subspace complement_;
  bool orthogonal_;
  RMatrix combined_;           ///< rows: v basis then z basis
  RMatrix combined_inverse_t_; ///< inverse of combined^T, for coordinates
  RMatrix gram_v_;
  RMatrix gram_z_;
};

/// Orthogonal splitting v = z-perp. Throws DegenerateCenterError when the
/// metric restricted to the center has a radical.
inline SplitAlgebra split(const MetricLieAlgebra& alg)
{
  Subspace z = center(alg);
  auto restriction = restrict_metric(alg, z);
  if (!restriction.nondegenerate)
    throw DegenerateCenterError("the metric restricted to the center is singular");
  Subspace v = orthogonal_complement(alg, z);
  return SplitAlgebra(alg, std::move(z), std::move(v), true);
}

/// Splitting with an arbitrary complement of the center (the complement need
/// not be z-perp and the center may be degenerate).
inline SplitAlgebra split_with(const MetricLieAlgebra& alg, const Subspace& complement)
{
  Subspace z = center(alg);
  if (complement.ambient_dim() != alg.dim())
    throw DimensionMismatchError("complement ambient dimension");
  if (complement.dim() + z.dim() != alg.dim() ||
      complement.sum(z).dim() != alg.dim())
    throw NotComplementError("the given subspace is not a vector-space complement of the center");
  bool orthogonal = false;
  auto restriction = restrict_metric(alg, z);
  if (restriction.nondegenerate && complement == orthogonal_complement(alg, z))
    orthogonal = true;
  return SplitAlgebra(alg, std::move(z), complement, orthogonal);
}

// ---------------------------------------------------------------------------
// JSON schema (algebra definition files)
// ---------------------------------------------------------------------------
//
// {
//   "dim": 3,
//   "basis": ["e1","e2","e3"],
//   "brackets": [ {"i":1, "j":2, "coeffs": {"3": "1"}} ],
//   "metric":   [ {"i":1, "j":1, "value": "-1"} ],
//   "complement": [ ["1","0","0"], ["0","1","0"] ]   // optional
// }
//
// Indices are 1-based; rationals are strings; unspecified bracket and metric
// entries are zero; the symmetric closure of "metric" is applied.

struct AlgebraFile {
  MetricLieAlgebra algebra;
  std::optional<Subspace> complement;
};

inline AlgebraFile load_algebra_json(const nlohmann::json& j)
{
  if (!j.is_object() || !j.contains("dim"))
    throw std::invalid_argument("algebra file: expected an object with a \"dim\" field");
  std::size_t n = j.at("dim").get<std::size_t>();
  if (n == 0 || n > 64)
    throw std::invalid_argument("algebra file: dimension out of range");

  std::vector<std::string> names;
  if (j.contains("basis")) {
    names = j.at("basis").get<std::vector<std::string>>();
    if (names.size() != n)
      throw std::invalid_argument("algebra file: basis name count does not match dim");
  } else {
    for (std::size_t i = 0; i < n; ++i)
      names.push_back("x" + std::to_string(i + 1));
  }

  auto index = [&](const nlohmann::json& v, const char* field) -> std::size_t {
    long i = v.get<long>();
    if (i < 1 || static_cast<std::size_t>(i) > n)
      throw std::invalid_argument(std::string("algebra file: index ") + field + " out of range");
    return static_cast<std::size_t>(i - 1);
  };

  std::vector<Rational> structure(n * n * n, Rational(0));
  if (j.contains("brackets")) {
    for (const auto& entry : j.at("brackets")) {
      std::size_t i = index(entry.at("i"), "i");
      std::size_t jj = index(entry.at("j"), "j");
      for (const auto& [key, value] : entry.at("coeffs").items()) {
        long kraw = std::stol(key);
        if (kraw < 1 || static_cast<std::size_t>(kraw) > n)
          throw std::invalid_argument("algebra file: bracket coefficient index out of range");
        std::size_t k = static_cast<std::size_t>(kraw - 1);
        Rational coeff = parse_rational(value.get<std::string>());
        structure[(i * n + jj) * n + k] = coeff;
        structure[(jj * n + i) * n + k] = -coeff;
      }
    }
  }

  RMatrix metric(n, n);
  if (j.contains("metric")) {
    for (const auto& entry : j.at("metric")) {
      std::size_t i = index(entry.at("i"), "i");
      std::size_t jj = index(entry.at("j"), "j");
      Rational value = parse_rational(entry.at("value").get<std::string>());
      metric(i, jj) = value;
      metric(jj, i) = value;
    }
  }

  AlgebraFile out{MetricLieAlgebra(names, structure, metric), std::nullopt};
  if (j.contains("complement")) {
    std::vector<RVec> rows;
    for (const auto& row : j.at("complement")) {
      RVec v;
      for (const auto& value : row)
        v.push_back(parse_rational(value.get<std::string>()));
      if (v.size() != n)
        throw std::invalid_argument("algebra file: complement vector length does not match dim");
      rows.push_back(std::move(v));
    }
    out.complement = Subspace::span(n, rows);
  }
  return out;
}

inline nlohmann::ordered_json dump_algebra_json(const MetricLieAlgebra& alg,
                                                const std::optional<Subspace>& complement = {})
{
  nlohmann::ordered_json j;
  std::size_t n = alg.dim();
  j["dim"] = n;
  j["basis"] = alg.basis_names();
  auto brackets = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = i + 1; jj < n; ++jj) {
      nlohmann::ordered_json coeffs;
      for (std::size_t k = 0; k < n; ++k)
        if (alg.c(i, jj, k) != 0)
          coeffs[std::to_string(k + 1)] = to_string(alg.c(i, jj, k));
      if (!coeffs.empty())
        brackets.push_back({{"i", i + 1}, {"j", jj + 1}, {"coeffs", coeffs}});
    }
  j["brackets"] = brackets;
  auto metric = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t jj = i; jj < n; ++jj)
      if (alg.metric()(i, jj) != 0)
        metric.push_back({{"i", i + 1}, {"j", jj + 1}, {"value", to_string(alg.metric()(i, jj))}});
  j["metric"] = metric;
  if (complement) {
    auto rows = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < complement->dim(); ++i) {
      auto row = nlohmann::ordered_json::array();
      for (const auto& value : complement->basis_vector(i))
        row.push_back(to_string(value));
      rows.push_back(row);
    }
    j["complement"] = rows;
  }
  return j;
}

} // namespace nilgeo

#endif
