#include "nilgeo/catalog.hpp"
#include "nilgeo/isometry.hpp"
#include "nilgeo/testing/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace nilgeo;

namespace {

RVec e(std::size_t n, std::size_t k)
{
  RVec v(n, Rational(0));
  v[k] = 1;
  return v;
}

MetricLieAlgebra abelian_with_signature(int plus, int minus)
{
  AlgebraBuilder b(plus + minus);
  for (int i = 0; i < plus + minus; ++i)
    b.metric(i, i, i < plus ? 1 : -1);
  return b.build();
}

/// Independent re-check of the linearized isometry conditions, rebuilt from
/// brackets and the metric rather than from the solver's constraint matrix.
bool satisfies_ahc_linearization(const MetricLieAlgebra& alg, const RMatrix& a)
{
  std::size_t n = alg.dim();
  if (!(a.transposed() * alg.metric() + alg.metric() * a).is_zero())
    return false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        RVec di = bracket(alg, bracket(alg, a * e(n, i), e(n, j)), e(n, k));
        RVec dj = bracket(alg, bracket(alg, e(n, i), a * e(n, j)), e(n, k));
        RVec dk = bracket(alg, bracket(alg, e(n, i), e(n, j)), a * e(n, k));
        RVec lhs = a * bracket(alg, bracket(alg, e(n, i), e(n, j)), e(n, k));
        if (lhs != di + dj + dk)
          return false;
      }
  return true;
}

} // namespace

TEST_CASE("isometry criterion for bi-invariant metrics")
{
  auto free3 = builtin_algebra("free3_neutral");

  SECTION("identity map passes")
  {
    CHECK(ahc_isometry_check(free3, RMatrix::identity(6)));
  }
  SECTION("minus identity passes (inversion differential)")
  {
    CHECK(ahc_isometry_check(free3, -RMatrix::identity(6)));
  }
  SECTION("the hyperbolic family dF^tau passes for random rational parameters")
  {
    for (int trial = 0; trial < 10; ++trial) {
      Rational lam(1 + trial, 2 + (trial * 3) % 5);
      if (lam == 1)
        lam = Rational(7, 2);
      CHECK(ahc_isometry_check(free3, ftau_differential(lam)));
    }
  }
  SECTION("a metric-breaking map fails")
  {
    RMatrix a = RMatrix::identity(6);
    a(0, 0) = 2;
    CHECK_FALSE(ahc_isometry_check(free3, a));
  }
  SECTION("non-bi-invariant metrics are rejected")
  {
    CHECK_THROWS_AS(ahc_isometry_check(builtin_algebra("h3_lorentz"), RMatrix::identity(3)),
                    NotBiInvariantError);
  }
}

TEST_CASE("linearized isotropy algebra for bi-invariant metrics")
{
  SECTION("free 2-step, neutral metric: the full skew algebra so(3,3), dim 15")
  {
    auto space = ahc_isotropy_algebra(builtin_algebra("free3_neutral"));
    CHECK(space.dimension == 15);
    CHECK(space.verified);
  }
  SECTION("oscillator algebra: dim 3")
  {
    auto space = ahc_isotropy_algebra(builtin_algebra("oscillator4"));
    CHECK(space.dimension == 3);
  }
  SECTION("abelian algebras: dim = (p+q)(p+q-1)/2")
  {
    CHECK(ahc_isotropy_algebra(abelian_with_signature(2, 1)).dimension == 3);
    CHECK(ahc_isotropy_algebra(abelian_with_signature(2, 2)).dimension == 6);
  }
  SECTION("solutions satisfy skewness and the derivation identity, re-derived")
  {
    for (const auto& name : {"free3_neutral", "oscillator4"}) {
      auto alg = builtin_algebra(name);
      auto space = ahc_isotropy_algebra(alg);
      for (const auto& element : space.basis)
        CHECK(satisfies_ahc_linearization(alg, element[0]));
    }
  }
  SECTION("for 2-step algebras the triple-bracket condition is vacuous")
  {
    auto alg = builtin_algebra("free3_neutral");
    auto restriction = restrict_metric(alg, Subspace::full(6));
    REQUIRE(restriction.signature.has_value());
    auto [p, q] = *restriction.signature;
    CHECK(p == 3);
    CHECK(q == 3);
    CHECK(ahc_isotropy_algebra(alg).dimension == std::size_t((p + q) * (p + q - 1) / 2));
  }
}

TEST_CASE("isotropy pairs for non-degenerate center")
{
  SECTION("identity pair passes")
  {
    auto sp = split(builtin_algebra("h3_lorentz"));
    CHECK(isotropy_pair_check(sp, RMatrix::identity(1), RMatrix::identity(2)));
  }
  SECTION("Lorentzian Heisenberg: brute force over sign/swap candidates")
  {
    // Which invertible sign/swap maps T pair with phi = -1 on the center?
    // The candidates are the four sign matrices diag(+-1, +-1) and the four
    // signed swaps. The swap itself is not in O(1,1) of gram diag(-1,1); the
    // reflections diag(1,-1) and diag(-1,1) conjugate j(e3) to -j(e3).
    auto sp = split(builtin_algebra("h3_lorentz"));
    RMatrix phi_minus(1, 1), phi_plus(1, 1);
    phi_minus(0, 0) = -1;
    phi_plus(0, 0) = 1;

    std::vector<RMatrix> matches;
    for (int s0 : {1, -1})
      for (int s1 : {1, -1})
        for (bool swapped : {false, true}) {
          RMatrix t(2, 2);
          if (swapped) {
            t(0, 1) = s0;
            t(1, 0) = s1;
          } else {
            t(0, 0) = s0;
            t(1, 1) = s1;
          }
          // swapped candidates move <e1,e1> = -1 onto <e2,e2> = +1
          bool metric_ok = !swapped;
          CHECK((t.transposed() * sp.gram_v() * t == sp.gram_v()) == metric_ok);
          if (isotropy_pair_check(sp, phi_minus, t))
            matches.push_back(t);
        }
    REQUIRE(matches.size() == 2);
    CHECK(matches[0] == RMatrix{{Rational(1), Rational(0)}, {Rational(0), Rational(-1)}});
    CHECK(matches[1] == RMatrix{{Rational(-1), Rational(0)}, {Rational(0), Rational(1)}});
    // with phi = +1 the reflections anti-commute with j(e3) and fail
    CHECK_FALSE(isotropy_pair_check(sp, phi_plus, matches[0]));
  }
  SECTION("Riemannian Heisenberg: rotations commute with j(e3)")
  {
    auto sp = split(builtin_algebra("h3_riemannian"));
    RMatrix rot(2, 2); // rotation by pi/2 is rational
    rot(0, 1) = -1;
    rot(1, 0) = 1;
    CHECK(isotropy_pair_check(sp, RMatrix::identity(1), rot));
  }
  SECTION("degenerate center is rejected")
  {
    auto alg = builtin_algebra("free3_neutral");
    auto sp = split_with(alg, Subspace::span(6, {e(6, 0), e(6, 1), e(6, 2)}));
    CHECK_THROWS_AS(isotropy_pair_check(sp, RMatrix::identity(3), RMatrix::identity(3)),
                    DegenerateCenterError);
  }
}

TEST_CASE("isotropy algebra for non-degenerate center")
{
  SECTION("R x h3: dimension 1, A forced to zero, B a rotation generator")
  {
    auto space = isotropy_algebra(split(builtin_algebra("rxh3")));
    REQUIRE(space.dimension == 1);
    const RMatrix& a = space.basis[0][0];
    const RMatrix& b = space.basis[0][1];
    CHECK(a.is_zero());
    CHECK(b(0, 1) == -b(1, 0));
    CHECK(b(0, 0) == 0);
    CHECK(b(1, 1) == 0);
    CHECK_FALSE(b.is_zero());
  }
  SECTION("Lorentzian Heisenberg: dimension 1, B the hyperbolic generator")
  {
    auto space = isotropy_algebra(split(builtin_algebra("h3_lorentz")));
    REQUIRE(space.dimension == 1);
    const RMatrix& b = space.basis[0][1];
    CHECK(b(0, 1) == b(1, 0));
    CHECK_FALSE(b.is_zero());
  }
  SECTION("Riemannian Heisenberg: dimension 1")
  {
    CHECK(isotropy_algebra(split(builtin_algebra("h3_riemannian"))).dimension == 1);
  }
  SECTION("assembled block maps are skew for the full metric")
  {
    for (const auto& name : {"h3_riemannian", "h3_lorentz", "rxh3", "h6_htype"}) {
      auto sp = split(builtin_algebra(name));
      auto space = isotropy_algebra(sp);
      for (const auto& element : space.basis) {
        std::size_t n = sp.algebra().dim();
        RMatrix columns(n, n), block(n, n);
        for (std::size_t c = 0; c < sp.dim_v(); ++c)
          for (std::size_t r = 0; r < n; ++r)
            columns(r, c) = sp.complement().basis_vector(c)[r];
        for (std::size_t c = 0; c < sp.dim_z(); ++c)
          for (std::size_t r = 0; r < n; ++r)
            columns(r, sp.dim_v() + c) = sp.center_space().basis_vector(c)[r];
        for (std::size_t r = 0; r < sp.dim_v(); ++r)
          for (std::size_t c = 0; c < sp.dim_v(); ++c)
            block(r, c) = element[1](r, c);
        for (std::size_t r = 0; r < sp.dim_z(); ++r)
          for (std::size_t c = 0; c < sp.dim_z(); ++c)
            block(sp.dim_v() + r, sp.dim_v() + c) = element[0](r, c);
        RMatrix ambient = columns * block * inverse(columns);
        CHECK((ambient.transposed() * sp.algebra().metric() +
               sp.algebra().metric() * ambient)
                .is_zero());
      }
    }
  }
}

TEST_CASE("skew-symmetric derivations")
{
  SECTION("R x h3: dimension 1 with De1 = e2, De2 = -e1 up to scale")
  {
    auto space = skew_derivations(builtin_algebra("rxh3"));
    REQUIRE(space.dimension == 1);
    const RMatrix& d = space.basis[0][0];
    // rows/cols ordered (n0, e1, e2, e3); rotation block in the middle
    RMatrix expected(4, 4);
    expected(1, 2) = d(1, 2);
    expected(2, 1) = -d(1, 2);
    CHECK(d == expected);
    CHECK(d(1, 2) != 0);
  }
  SECTION("abelian with definite metric: dim k(k-1)/2")
  {
    CHECK(skew_derivations(abelian_with_signature(4, 0)).dimension == 6);
  }
  SECTION("free 2-step neutral: solver certifies its own solutions")
  {
    auto alg = builtin_algebra("free3_neutral");
    auto space = skew_derivations(alg);
    CHECK(space.verified);
    std::size_t n = alg.dim();
    for (const auto& element : space.basis) {
      const RMatrix& d = element[0];
      CHECK((d.transposed() * alg.metric() + alg.metric() * d).is_zero());
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          RVec lhs = d * bracket(alg, e(n, i), e(n, j));
          RVec rhs = bracket(alg, d * e(n, i), e(n, j)) + bracket(alg, e(n, i), d * e(n, j));
          CHECK(lhs == rhs);
        }
    }
  }
  SECTION("skew derivations embed into the isotropy algebra blocks")
  {
    for (const auto& name : {"h3_riemannian", "h3_lorentz", "rxh3", "h6_htype"}) {
      auto alg = builtin_algebra(name);
      auto sp = split(alg);
      auto derivations = skew_derivations(alg);
      JFamily jf = j_family(sp);
      for (const auto& element : derivations.basis) {
        const RMatrix& d = element[0];
        std::size_t p = sp.dim_z(), m = sp.dim_v();
        RMatrix a(p, p), b(m, m);
        for (std::size_t c = 0; c < p; ++c) {
          RVec image = d * sp.center_space().basis_vector(c);
          auto [iv, iz] = sp.split_coordinates(image);
          CHECK(is_zero_vector(iv));
          for (std::size_t r = 0; r < p; ++r)
            a(r, c) = iz[r];
        }
        for (std::size_t c = 0; c < m; ++c) {
          RVec image = d * sp.complement().basis_vector(c);
          auto [iv, iz] = sp.split_coordinates(image);
          CHECK(is_zero_vector(iz));
          for (std::size_t r = 0; r < m; ++r)
            b(r, c) = iv[r];
        }
        for (std::size_t k = 0; k < p; ++k) {
          RMatrix commutator = b * jf.map(k) - jf.map(k) * b;
          CHECK(commutator == jf.j_from_z_coords(a.col(k)));
        }
      }
    }
  }
}

TEST_CASE("inner automorphisms never preserve complements in the bi-invariant 2-step case")
{
  auto free3 = builtin_algebra("free3_neutral");
  Subspace standard_v = Subspace::span(6, {e(6, 0), e(6, 1), e(6, 2)});
  auto sp = split_with(free3, standard_v);

  SECTION("central w acts trivially")
  {
    auto result = ad_splitting_test(sp, e(6, 3));
    CHECK(result.preserves);
  }
  SECTION("w = e1 moves e2 out of the standard complement, witness e2")
  {
    auto result = ad_splitting_test(sp, e(6, 0));
    CHECK_FALSE(result.preserves);
    REQUIRE(result.witness.has_value());
    CHECK(*result.witness == e(6, 1));
  }
  SECTION("every non-central w fails for every complement")
  {
    std::mt19937 rng(83);
    Subspace z = center(free3);
    for (int trial = 0; trial < 100; ++trial) {
      RVec w = testing::random_vector(rng, 6);
      if (z.contains(w))
        continue;
      // random complement: graph of a random map from the standard v to z
      std::vector<RVec> rows;
      for (std::size_t i = 0; i < 3; ++i) {
        RVec v = e(6, i);
        for (std::size_t k = 3; k < 6; ++k)
          v[k] = testing::random_rational(rng);
        rows.push_back(v);
      }
      auto complement = Subspace::span(6, rows);
      auto trial_split = split_with(free3, complement);
      CHECK_FALSE(ad_splitting_test(trial_split, w).preserves);
    }
  }
  SECTION("non-2-step algebras are rejected")
  {
    auto osc = builtin_algebra("oscillator4");
    auto osp = split_with(osc, Subspace::span(4, {e(4, 0), e(4, 1), e(4, 2)}));
    CHECK_THROWS_AS(ad_splitting_test(osp, e(4, 0)), NotTwoStepError);
  }
}

TEST_CASE("isometric automorphism differentials")
{
  SECTION("identity passes")
  {
    CHECK(is_isometric_automorphism_differential(builtin_algebra("rxh3"),
                                                 RMatrix::identity(4)));
  }
  SECTION("the reflection psi1 differential is an isometric automorphism of R x h3")
  {
    CHECK(is_isometric_automorphism_differential(builtin_algebra("rxh3"),
                                                 psi_differential_at_identity(1)));
  }
  SECTION("psi2 and psi3 differentials are isometries but not automorphisms")
  {
    auto rxh3 = builtin_algebra("rxh3");
    for (int which : {2, 3}) {
      RMatrix a = psi_differential_at_identity(which);
      CHECK(a.transposed() * rxh3.metric() * a == rxh3.metric());
      CHECK_FALSE(is_isometric_automorphism_differential(rxh3, a));
    }
  }
  SECTION("dF^tau extends its generator block canonically: an automorphism")
  {
    // The center block of dF^tau equals the induced second-exterior-power
    // action of its generator block, so the map is a Lie algebra
    // automorphism (and an isometry) for every tau.
    auto free3 = builtin_algebra("free3_neutral");
    for (int trial = 0; trial < 10; ++trial) {
      Rational lam(2 + trial, 1 + trial % 3);
      if (lam == 1)
        continue;
      CHECK(is_isometric_automorphism_differential(free3, ftau_differential(lam)));
    }
    CHECK(is_isometric_automorphism_differential(free3, ftau_differential(Rational(1))));
  }
  SECTION("a splitting-preserving isometry of the neutral metric that is not an automorphism")
  {
    // v and z are totally isotropic and dually paired, so diag(B, C) is an
    // isometry iff C is the inverse dual of B; it is an automorphism only
    // when C equals the induced exterior-square of B. B = diag(2,1,1) with
    // C = diag(1,1,1/2) separates the two conditions.
    auto free3 = builtin_algebra("free3_neutral");
    RMatrix m(6, 6);
    m(0, 0) = 2;
    m(1, 1) = 1;
    m(2, 2) = 1;
    m(3, 3) = 1;
    m(4, 4) = 1;
    m(5, 5) = Rational(1, 2);
    CHECK(m.transposed() * free3.metric() * m == free3.metric());
    Subspace standard_v = Subspace::span(6, {e(6, 0), e(6, 1), e(6, 2)});
    Subspace standard_z = center(free3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(standard_v.contains(m * e(6, i)));
      CHECK(standard_z.contains(m * e(6, 3 + i)));
    }
    CHECK_FALSE(is_isometric_automorphism_differential(free3, m));
    CHECK(ahc_isometry_check(free3, m));
  }
}

TEST_CASE("nilradical")
{
  SECTION("iso7: span{f1, f2, e1, e2, e3}, dimension 5")
  {
    auto iso = builtin_algebra("iso7");
    Subspace nil = nilradical(iso);
    CHECK(nil.dim() == 5);
    CHECK(nil == Subspace::span(7, {e(7, 1), e(7, 2), e(7, 4), e(7, 5), e(7, 6)}));
  }
  SECTION("nilpotent algebras are their own nilradical")
  {
    CHECK(nilradical(builtin_algebra("free3_neutral")) == Subspace::full(6));
    CHECK(nilradical(builtin_algebra("h3_lorentz")) == Subspace::full(3));
  }
  SECTION("oscillator: span{e1, e2, e3}")
  {
    Subspace nil = nilradical(builtin_algebra("oscillator4"));
    CHECK(nil == Subspace::span(4, {e(4, 1), e(4, 2), e(4, 3)}));

    // brute-force: ad_f0 (excluded) is genuinely non-nilpotent
    auto osc = builtin_algebra("oscillator4");
    RMatrix ad_f0 = osc.ad(e(4, 0));
    RMatrix power = ad_f0;
    for (int k = 1; k < 4; ++k)
      power = power * ad_f0;
    CHECK_FALSE(power.is_zero());
  }
  SECTION("non-solvable input is an error")
  {
    // so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2
    AlgebraBuilder b(3);
    b.bracket(0, 1, 2, 1);
    b.bracket(1, 2, 0, 1);
    b.bracket(2, 0, 1, 1);
    b.metric_identity();
    CHECK_THROWS_AS(nilradical(b.build()), NotSolvableError);
  }
}

TEST_CASE("subalgebra containment facts of iso7")
{
  auto iso = builtin_algebra("iso7");
  Subspace nil = nilradical(iso);
  Subspace embedded = iso7_embedded_nilalgebra();
  CHECK_FALSE(contains_subalgebra(iso, embedded, nil));
  CHECK_FALSE(contains_subalgebra(iso, embedded, derived_subalgebra(iso)));
  CHECK(contains_subalgebra(iso, embedded, Subspace::full(7)));
  CHECK(contains_subalgebra(iso, nil, Subspace::full(7)));
  // the commutator [iso, iso] equals the nilradical here
  CHECK(derived_subalgebra(iso) == nil);
}
