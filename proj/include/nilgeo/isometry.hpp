#ifndef NILGEO_ISOMETRY_HPP
#define NILGEO_ISOMETRY_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/geometry.hpp"
#include "nilgeo/lie_algebra.hpp"

#include <nlohmann/json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace nilgeo {

/// Exact solution space of a homogeneous linear system on one or more matrix
/// unknowns. The basis is canonical (reduced echelon form of the flattened
/// kernel), and `verified` certifies that every basis element re-satisfies
/// the defining constraints exactly.
struct SolutionSpace {
  std::size_t dimension = 0;
  std::vector<std::string> component_names;
  std::vector<std::vector<RMatrix>> basis; ///< basis[k][c]: component c of element k
  bool verified = false;
};

namespace detail {

using MatrixConstraint = std::function<RVec(const std::vector<RMatrix>&)>;

/// Solves constraint(X_1, ..., X_r) = 0 for matrix unknowns of the given
/// shapes; the constraint functional must be linear. The kernel is computed
/// by evaluating the constraint on unit matrices, one flattened column at a
/// time.
inline SolutionSpace solve_matrix_constraints(
  const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
  const std::vector<std::string>& names, const MatrixConstraint& constraint)
{
  std::size_t unknowns = 0;
  for (const auto& [r, c] : shapes)
    unknowns += r * c;

  auto unflatten = [&](const RVec& flat) {
    std::vector<RMatrix> ms;
    std::size_t offset = 0;
    for (const auto& [r, c] : shapes) {
      RMatrix m(r, c);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          m(i, j) = flat[offset + i * c + j];
      offset += r * c;
      ms.push_back(std::move(m));
    }
    return ms;
  };

  RVec zero(unknowns, Rational(0));
  std::size_t n_rows = constraint(unflatten(zero)).size();
  RMatrix system(n_rows, unknowns);
  for (std::size_t col = 0; col < unknowns; ++col) {
    RVec unit(unknowns, Rational(0));
    unit[col] = 1;
    RVec values = constraint(unflatten(unit));
    if (values.size() != n_rows)
      throw std::logic_error("constraint functional changed row count");
    for (std::size_t row = 0; row < n_rows; ++row)
      system(row, col) = values[row];
  }

  RMatrix kernel = nullspace(system);
  SolutionSpace out;
  out.dimension = kernel.rows();
  out.component_names = names;
  out.verified = true;
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    auto element = unflatten(kernel.row(k));
    if (!is_zero_vector(constraint(element)))
      out.verified = false;
    out.basis.push_back(std::move(element));
  }
  if (!out.verified)
    throw std::logic_error("solution space failed its own constraint re-check");
  return out;
}

inline void append(RVec& rows, const RMatrix& m)
{
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      rows.push_back(m(i, j));
}

inline void append(RVec& rows, const RVec& v)
{
  rows.insert(rows.end(), v.begin(), v.end());
}

} // namespace detail

inline RVec unit_vector(std::size_t n, std::size_t k)
{
  RVec v(n, Rational(0));
  v[k] = 1;
  return v;
}

// ---------------------------------------------------------------------------
// Bi-invariant metrics: the curvature-based isometry criterion
// ---------------------------------------------------------------------------

/// For a bi-invariant metric, an invertible A is the differential of an
/// isometry fixing the identity iff it preserves the metric and the iterated
/// bracket: A[[u,v],w] = [[Au,Av],Aw] on all basis triples. Exact check.
inline bool ahc_isometry_check(const MetricLieAlgebra& alg, const RMatrix& a)
{
  if (!is_ad_invariant(alg))
    throw NotBiInvariantError("the isometry criterion applies to bi-invariant metrics");
  std::size_t n = alg.dim();
  if (a.rows() != n || a.cols() != n)
    throw DimensionMismatchError("candidate map size");
  if (!is_invertible(a))
    throw PreconditionError("candidate map must be invertible");
  if (a.transposed() * alg.metric() * a != alg.metric())
    return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RVec lhs = a * bracket(alg, alg.bracket_basis(i, j), unit_vector(n, k));
        RVec rhs = bracket(alg, bracket(alg, a.col(i), a.col(j)), a.col(k));
        if (lhs != rhs)
          return false;
      }
  return true;
}

/// Linearization of the bi-invariant isometry criterion at the identity:
/// skew maps a with a[[u,v],w] = [[au,v],w] + [[u,av],w] + [[u,v],aw].
/// Its dimension is the dimension of the isotropy group.
inline SolutionSpace ahc_isotropy_algebra(const MetricLieAlgebra& alg)
{
  if (!is_ad_invariant(alg))
    throw NotBiInvariantError("the isotropy linearization applies to bi-invariant metrics");
  std::size_t n = alg.dim();

  // Precomputed data for the triple-bracket derivation identity.
  std::vector<RMatrix> ad_pairs(n * n, RMatrix(n, n)); // ad_k ad_j
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      ad_pairs[k * n + j] = alg.ad_basis(k) * alg.ad_basis(j);
  std::vector<RMatrix> ad_brackets(n * n, RMatrix(n, n)); // ad([x_i, x_j])
  std::vector<RVec> double_brackets(n * n * n);           // [[x_i,x_j],x_k]
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      ad_brackets[i * n + j] = alg.ad(alg.bracket_basis(i, j));
      for (std::size_t k = 0; k < n; ++k)
        double_brackets[(i * n + j) * n + k] =
          bracket(alg, alg.bracket_basis(i, j), unit_vector(n, k));
    }

  auto constraint = [&, n](const std::vector<RMatrix>& ms) {
    const RMatrix& a = ms[0];
    RVec rows;
    detail::append(rows, a.transposed() * alg.metric() + alg.metric() * a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
          RVec value = a * double_brackets[(i * n + j) * n + k];
          // [[a x_i, x_j], x_k] = ad_k ad_j (a x_i), and cyclic variants
          value = value - ad_pairs[k * n + j] * a.col(i);
          value = value + ad_pairs[k * n + i] * a.col(j);
          value = value - ad_brackets[i * n + j] * a.col(k);
          detail::append(rows, value);
        }
    return rows;
  };
  return detail::solve_matrix_constraints({{n, n}}, {"matrix"}, constraint);
}

// ---------------------------------------------------------------------------
// Non-degenerate center: isotropy via the j-maps
// ---------------------------------------------------------------------------

/// Checks a candidate isotropy pair: phi orthogonal on z, T orthogonal on v,
/// and T j(w) T^{-1} = j(phi w) on the center basis. Maps are given in the
/// split's z- and v-coordinates.
inline bool isotropy_pair_check(const SplitAlgebra& split, const RMatrix& phi, const RMatrix& t)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("the isotropy pair condition requires v = z-perp");
  std::size_t p = split.dim_z();
  std::size_t m = split.dim_v();
  if (phi.rows() != p || phi.cols() != p || t.rows() != m || t.cols() != m)
    throw DimensionMismatchError("isotropy pair block sizes");
  if (!is_invertible(phi) || !is_invertible(t))
    throw PreconditionError("isotropy pair blocks must be invertible");
  if (phi.transposed() * split.gram_z() * phi != split.gram_z())
    return false;
  if (t.transposed() * split.gram_v() * t != split.gram_v())
    return false;
  JFamily jf = j_family(split);
  RMatrix t_inv = inverse(t);
  for (std::size_t k = 0; k < p; ++k) {
    RMatrix expected = jf.j_from_z_coords(phi.col(k));
    if (t * jf.map(k) * t_inv != expected)
      return false;
  }
  return true;
}

/// Exact solution space of pairs (A, B), A skew on (z, <,>), B skew on
/// (v, <,>), with [B, j(w)] = j(Aw) on the center basis. This is the Lie
/// algebra of the isotropy group when the center is non-degenerate.
inline SolutionSpace isotropy_algebra(const SplitAlgebra& split)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("the isotropy algebra condition requires v = z-perp");
  JFamily jf = j_family(split);
  std::size_t p = split.dim_z();
  std::size_t m = split.dim_v();

  auto constraint = [&, p, m](const std::vector<RMatrix>& ms) {
    const RMatrix& a = ms[0];
    const RMatrix& b = ms[1];
    RVec rows;
    detail::append(rows, a.transposed() * split.gram_z() + split.gram_z() * a);
    detail::append(rows, b.transposed() * split.gram_v() + split.gram_v() * b);
    for (std::size_t k = 0; k < p; ++k) {
      RMatrix commutator = b * jf.map(k) - jf.map(k) * b;
      detail::append(rows, commutator - jf.j_from_z_coords(a.col(k)));
    }
    return rows;
  };
  return detail::solve_matrix_constraints({{p, p}, {m, m}}, {"A", "B"}, constraint);
}

/// Exact solution space of skew-symmetric derivations:
/// D[u,v] = [Du,v] + [u,Dv] and <Du,v> + <u,Dv> = 0 on all basis pairs.
inline SolutionSpace skew_derivations(const MetricLieAlgebra& alg)
{
  std::size_t n = alg.dim();
  auto constraint = [&, n](const std::vector<RMatrix>& ms) {
    const RMatrix& d = ms[0];
    RVec rows;
    detail::append(rows, d.transposed() * alg.metric() + alg.metric() * d);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        RVec value = d * alg.bracket_basis(i, j);
        value = value + alg.ad_basis(j) * d.col(i); // -[D x_i, x_j]
        value = value - alg.ad_basis(i) * d.col(j); // -[x_i, D x_j]
        detail::append(rows, value);
      }
    return rows;
  };
  return detail::solve_matrix_constraints({{n, n}}, {"matrix"}, constraint);
}

// ---------------------------------------------------------------------------
// Inner automorphisms vs splittings
// ---------------------------------------------------------------------------

struct AdSplittingResult {
  bool preserves = false;
  std::optional<RVec> witness; ///< basis vector of v whose image leaves v
};

/// For a 2-step algebra, Ad(exp w) = I + 1/2 ad_w exactly. Tests whether it
/// maps the chosen complement v into itself.
inline AdSplittingResult ad_splitting_test(const SplitAlgebra& split, const RVec& w)
{
  if (!is_two_step_nilpotent(split.algebra()))
    throw NotTwoStepError("Ad(exp w) = I + ad_w/2 requires a 2-step algebra");
  const auto& alg = split.algebra();
  RMatrix ad_w = alg.ad(w);
  RMatrix m = RMatrix::identity(alg.dim()) + Rational(1, 2) * ad_w;
  for (std::size_t a = 0; a < split.dim_v(); ++a) {
    RVec v = split.complement().basis_vector(a);
    RVec image = m * v;
    if (!split.complement().contains(image))
      return {false, v};
  }
  return {true, std::nullopt};
}

/// true iff A is simultaneously a Lie algebra automorphism and a linear
/// isometry (the differential at the identity of an isometric automorphism).
inline bool is_isometric_automorphism_differential(const MetricLieAlgebra& alg, const RMatrix& a)
{
  std::size_t n = alg.dim();
  if (a.rows() != n || a.cols() != n)
    throw DimensionMismatchError("candidate map size");
  if (!is_invertible(a))
    throw PreconditionError("candidate map must be invertible");
  if (a.transposed() * alg.metric() * a != alg.metric())
    return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RVec lhs = a * alg.bracket_basis(i, j);
      RVec rhs = bracket(alg, a.col(i), a.col(j));
      if (lhs != rhs)
        return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Nilradical
// ---------------------------------------------------------------------------

/// Maximal nilpotent ideal of a solvable algebra. For solvable algebras the
/// nilradical is {x : ad_x nilpotent}; that set is cut out by the linear
/// conditions trace(ad_x . B) = 0 over a basis B of the associative algebra
/// generated by the ad maps (the non-nilpotent part of any ad_x is visible
/// in such a trace). The result is post-verified to be a nilpotent ideal.
inline Subspace nilradical(const MetricLieAlgebra& alg)
{
  auto report = validate(alg);
  if (!report.solvable)
    throw NotSolvableError("the nilradical algorithm is restricted to solvable algebras");
  std::size_t n = alg.dim();

  // Associative closure of {ad_1, ..., ad_n} inside End(n).
  std::vector<RMatrix> closure;
  RMatrix span(0, n * n);
  auto flat = [n](const RMatrix& m) {
    RVec v;
    v.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        v.push_back(m(i, j));
    return v;
  };
  auto try_add = [&](const RMatrix& m) {
    if (m.is_zero())
      return false;
    RMatrix candidate(span.rows() + 1, n * n);
    for (std::size_t i = 0; i < span.rows(); ++i)
      candidate.set_row(i, span.row(i));
    candidate.set_row(span.rows(), flat(m));
    if (rank(candidate) == span.rows())
      return false;
    span = vstack(span, RMatrix(1, n * n));
    span.set_row(span.rows() - 1, flat(m));
    closure.push_back(m);
    return true;
  };
  for (std::size_t i = 0; i < n; ++i)
    try_add(alg.ad_basis(i));
  for (bool grew = true; grew;) {
    grew = false;
    std::size_t count = closure.size();
    for (std::size_t x = 0; x < count; ++x)
      for (std::size_t y = 0; y < count; ++y)
        grew |= try_add(closure[x] * closure[y]);
  }

  RMatrix conditions(closure.size(), n);
  for (std::size_t r = 0; r < closure.size(); ++r)
    for (std::size_t i = 0; i < n; ++i)
      conditions(r, i) = (alg.ad_basis(i) * closure[r]).trace();
  Subspace nil = Subspace::from_rows(nullspace(conditions));

  // Post-verification: an ideal, with nilpotent adjoint action, containing
  // the derived subalgebra.
  for (std::size_t a = 0; a < nil.dim(); ++a) {
    RVec u = nil.basis_vector(a);
    RMatrix power = alg.ad(u);
    for (std::size_t k = 1; k < n; ++k)
      power = power * alg.ad(u);
    if (!power.is_zero())
      throw std::logic_error("nilradical candidate has non-nilpotent adjoint action");
    for (std::size_t j = 0; j < n; ++j)
      if (!nil.contains(bracket(alg, u, unit_vector(n, j))))
        throw std::logic_error("nilradical candidate is not an ideal");
  }
  if (!nil.contains(derived_subalgebra(alg)))
    throw std::logic_error("nilradical candidate misses the derived subalgebra");
  return nil;
}

/// Exact containment test: is `sub` contained in `container`?
inline bool contains_subalgebra(const MetricLieAlgebra& alg, const Subspace& sub,
                                const Subspace& container)
{
  if (sub.ambient_dim() != alg.dim() || container.ambient_dim() != alg.dim())
    throw DimensionMismatchError("containment test ambient dimensions");
  return container.contains(sub);
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const SolutionSpace& space)
{
  nlohmann::ordered_json j;
  j["dimension"] = space.dimension;
  j["components"] = space.component_names;
  auto basis = nlohmann::ordered_json::array();
  for (const auto& element : space.basis) {
    nlohmann::ordered_json e;
    for (std::size_t c = 0; c < element.size(); ++c) {
      nlohmann::ordered_json m;
      m["rows"] = element[c].rows();
      m["cols"] = element[c].cols();
      auto entries = nlohmann::ordered_json::array();
      for (std::size_t i = 0; i < element[c].rows(); ++i)
        for (std::size_t jj = 0; jj < element[c].cols(); ++jj)
          entries.push_back(to_string(element[c](i, jj)));
      m["entries"] = entries;
      e[space.component_names[c]] = std::move(m);
    }
    basis.push_back(std::move(e));
  }
  j["basis"] = basis;
  j["verified"] = space.verified;
  return j;
}

} // namespace nilgeo

#endif
