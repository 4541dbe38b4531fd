#include "nilgeo/catalog.hpp"
#include "nilgeo/spectral.hpp"
#include "nilgeo/testing/generators.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

using namespace nilgeo;

namespace {

RVec e(std::size_t n, std::size_t k)
{
  RVec v(n, Rational(0));
  v[k] = 1;
  return v;
}

Polynomial poly(std::initializer_list<long> ascending)
{
  std::vector<Rational> c;
  for (long v : ascending)
    c.emplace_back(v);
  return Polynomial(std::move(c));
}

bool has_conclusion(const ClassificationReport& r, StructuralFact f)
{
  return std::find(r.structural_conclusions.begin(), r.structural_conclusions.end(), f) !=
         r.structural_conclusions.end();
}

} // namespace

TEST_CASE("characteristic and minimal polynomials of Ricci operators")
{
  SECTION("Lorentzian Heisenberg")
  {
    auto rd = ricci(split(builtin_algebra("h3_lorentz")));
    auto polys = char_min_polynomials(rd.op);
    // char = (x - 1/2)^2 (x + 1/2), min = (x - 1/2)(x + 1/2)
    CHECK(polys.characteristic ==
          Polynomial::linear(Rational(1, 2)) * Polynomial::linear(Rational(1, 2)) *
            Polynomial::linear(Rational(-1, 2)));
    CHECK(polys.minimal ==
          Polynomial::linear(Rational(1, 2)) * Polynomial::linear(Rational(-1, 2)));
  }
  SECTION("R x h3: min = x^2, char = x^4")
  {
    auto rd = ricci(split(builtin_algebra("rxh3")));
    auto polys = char_min_polynomials(rd.op);
    CHECK(polys.minimal == poly({0, 0, 1}));
    CHECK(polys.characteristic == poly({0, 0, 0, 0, 1}));
  }
  SECTION("identity map")
  {
    auto polys = char_min_polynomials(RMatrix::identity(3));
    CHECK(polys.characteristic == poly({-1, 1}) * poly({-1, 1}) * poly({-1, 1}));
    CHECK(polys.minimal == poly({-1, 1}));
  }
}

TEST_CASE("primary decomposition")
{
  SECTION("Lorentzian Heisenberg Ricci: V_{1/2} = v, V_{-1/2} = z")
  {
    auto rd = ricci(split(builtin_algebra("h3_lorentz")));
    auto pd = primary_decomposition(rd.op);
    REQUIRE(pd.components.size() == 2);
    // factors sorted by coefficients: x - 1/2 precedes x + 1/2
    CHECK(pd.components[0].eigenvalue == Rational(1, 2));
    CHECK(pd.components[0].component == Subspace::span(3, {e(3, 0), e(3, 1)}));
    CHECK(pd.components[1].eigenvalue == Rational(-1, 2));
    CHECK(pd.components[1].component == Subspace::span(3, {e(3, 2)}));
  }
  SECTION("R x h3 Ricci: single factor x with V_0 the whole space")
  {
    auto rd = ricci(split(builtin_algebra("rxh3")));
    auto pd = primary_decomposition(rd.op);
    REQUIRE(pd.components.size() == 1);
    CHECK(pd.components[0].factor == poly({0, 1}));
    CHECK(pd.components[0].multiplicity == 2);
    CHECK(pd.components[0].component == Subspace::full(4));
  }
  SECTION("H-type: V_{-p/2} = v, V_{m/4} = z")
  {
    auto sp = split(builtin_algebra("h6_htype"));
    auto rd = ricci(sp);
    auto pd = primary_decomposition(rd.op);
    REQUIRE(pd.components.size() == 2);
    for (const auto& comp : pd.components) {
      REQUIRE(comp.eigenvalue.has_value());
      if (*comp.eigenvalue == Rational(-1))
        CHECK(comp.component == sp.complement());
      else {
        CHECK(*comp.eigenvalue == Rational(1));
        CHECK(comp.component == sp.center_space());
      }
    }
  }
  SECTION("components decompose the space and are annihilated exactly")
  {
    std::mt19937 rng(73);
    for (int trial = 0; trial < 10; ++trial) {
      RMatrix t(4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        t.set_row(i, testing::random_vector(rng, 4, 3, 1));
      auto pd = primary_decomposition(t);
      std::size_t total = 0;
      for (const auto& comp : pd.components) {
        total += comp.component.dim();
        RMatrix killer = RMatrix::identity(4);
        for (int k = 0; k < comp.multiplicity; ++k)
          killer = killer * comp.factor(t);
        for (std::size_t r = 0; r < comp.component.dim(); ++r) {
          CHECK(is_zero_vector(killer * comp.component.basis_vector(r)));
          // T preserves each component
          CHECK(comp.component.contains(t * comp.component.basis_vector(r)));
        }
      }
      CHECK(total == 4);
    }
  }
  SECTION("irreducible quadratic factors represent conjugate eigenvalue pairs")
  {
    RMatrix rot{{Rational(0), Rational(-1)}, {Rational(1), Rational(0)}};
    auto pd = primary_decomposition(rot);
    REQUIRE(pd.components.size() == 1);
    CHECK(pd.components[0].factor == poly({1, 0, 1}));
    CHECK_FALSE(pd.components[0].eigenvalue.has_value());
    CHECK(pd.components[0].component.dim() == 2);
  }
  SECTION("diagonalizable case agrees with a brute-force eigenvector solve")
  {
    std::mt19937 rng(79);
    for (int trial = 0; trial < 10; ++trial) {
      // conjugate a diagonal matrix by a random invertible one
      RMatrix d(4, 4);
      RVec eigs{Rational(trial % 3), Rational(1), Rational(1), Rational(-2)};
      for (std::size_t i = 0; i < 4; ++i)
        d(i, i) = eigs[i];
      RMatrix s(4, 4);
      do {
        for (std::size_t i = 0; i < 4; ++i)
          s.set_row(i, testing::random_vector(rng, 4, 2, 1));
      } while (determinant(s) == 0);
      RMatrix t = s * d * inverse(s);
      auto pd = primary_decomposition(t);
      for (const auto& comp : pd.components) {
        REQUIRE(comp.eigenvalue.has_value());
        RMatrix shifted = t;
        for (std::size_t i = 0; i < 4; ++i)
          shifted(i, i) -= *comp.eigenvalue;
        CHECK(comp.component == Subspace::from_rows(nullspace(shifted)));
      }
    }
  }
}

TEST_CASE("splitting criterion")
{
  SECTION("holds for the Lorentzian Heisenberg algebra")
  {
    auto sp = split(builtin_algebra("h3_lorentz"));
    auto crit = splitting_criterion(sp);
    CHECK(crit.holds);
    for (auto loc : crit.assignment)
      CHECK(loc != FactorLocation::Mixed);
  }
  SECTION("fails for R x h3 with the factor x mixed")
  {
    auto sp = split(builtin_algebra("rxh3"));
    auto crit = splitting_criterion(sp);
    CHECK_FALSE(crit.holds);
    REQUIRE(crit.assignment.size() == 1);
    CHECK(crit.assignment[0] == FactorLocation::Mixed);
    CHECK(crit.decomposition.components[0].factor == poly({0, 1}));
  }
  SECTION("holds for pseudo-H-type")
  {
    auto crit = splitting_criterion(split(builtin_algebra("h6_htype")));
    CHECK(crit.holds);
  }
  SECTION("bookkeeping: v-assigned dimensions sum to dim v when it holds")
  {
    for (const auto& name : {"h3_riemannian", "h3_lorentz", "h6_htype"}) {
      auto sp = split(builtin_algebra(name));
      auto crit = splitting_criterion(sp);
      REQUIRE(crit.holds);
      std::size_t dim_v = 0;
      for (std::size_t i = 0; i < crit.assignment.size(); ++i)
        if (crit.assignment[i] == FactorLocation::InComplement)
          dim_v += crit.decomposition.components[i].component.dim();
      CHECK(dim_v == sp.dim_v());
    }
  }
}

TEST_CASE("pseudo-H-type test")
{
  CHECK(is_pseudo_h_type(split(builtin_algebra("h3_riemannian"))));
  CHECK(is_pseudo_h_type(split(builtin_algebra("h6_htype"))));
  CHECK_FALSE(is_pseudo_h_type(split(builtin_algebra("h3_lorentz"))));
  CHECK_FALSE(is_pseudo_h_type(split(builtin_algebra("rxh3"))));
  SECTION("degenerate center is rejected")
  {
    auto alg = builtin_algebra("free3_neutral");
    auto sp = split_with(alg, Subspace::span(6, {e(6, 0), e(6, 1), e(6, 2)}));
    CHECK_THROWS_AS(is_pseudo_h_type(sp), DegenerateCenterError);
  }
  SECTION("implies the Ricci block law")
  {
    auto sp = split(builtin_algebra("h6_htype"));
    REQUIRE(is_pseudo_h_type(sp));
    auto rd = ricci(sp);
    Rational minus_p_half = Rational(-(long)sp.dim_z(), 2);
    Rational m_quarter = Rational((long)sp.dim_v(), 4);
    CHECK(rd.block_v == minus_p_half * RMatrix::identity(sp.dim_v()));
    CHECK(rd.block_z == m_quarter * RMatrix::identity(sp.dim_z()));
    CHECK(rd.scalar < 0);
  }
}

TEST_CASE("classify")
{
  SECTION("Lorentzian Heisenberg")
  {
    auto report = classify(builtin_algebra("h3_lorentz"));
    CHECK(report.two_step);
    CHECK(report.center_nondegenerate);
    CHECK(report.pseudo_h_type == false);
    CHECK(report.splitting_criterion_holds == true);
    CHECK(report.ricci_nilpotent == false);
    CHECK(report.scalar_curvature == Rational(1, 2));
    CHECK(has_conclusion(report, StructuralFact::SplitEqAut));
    CHECK(has_conclusion(report, StructuralFact::IsoEqSplit));
    CHECK_FALSE(has_conclusion(report, StructuralFact::IsoEqAut));
    CHECK_FALSE(has_conclusion(report, StructuralFact::NegativeScalar));
  }
  SECTION("R x h3")
  {
    auto report = classify(builtin_algebra("rxh3"));
    CHECK(report.splitting_criterion_holds == false);
    CHECK(report.ricci_nilpotent == true);
    CHECK(report.scalar_curvature == Rational(0));
    CHECK(has_conclusion(report, StructuralFact::SplitEqAut));
    CHECK_FALSE(has_conclusion(report, StructuralFact::IsoEqSplit));
  }
  SECTION("Riemannian Heisenberg is H-type: p = 1, m = 2, s = -1/2")
  {
    auto report = classify(builtin_algebra("h3_riemannian"));
    CHECK(report.pseudo_h_type == true);
    CHECK(report.scalar_curvature == Rational(-1, 2));
    CHECK(has_conclusion(report, StructuralFact::IsoEqAut));
    CHECK(has_conclusion(report, StructuralFact::IsoEqSplit));
    CHECK(has_conclusion(report, StructuralFact::SplitEqAut));
    CHECK(has_conclusion(report, StructuralFact::NegativeScalar));
  }
  SECTION("degenerate center: fields become not-applicable")
  {
    auto report = classify(builtin_algebra("free3_neutral"));
    CHECK(report.two_step);
    CHECK_FALSE(report.center_nondegenerate);
    CHECK_FALSE(report.pseudo_h_type.has_value());
    CHECK_FALSE(report.splitting_criterion_holds.has_value());
    CHECK_FALSE(report.scalar_curvature.has_value());
    CHECK(report.structural_conclusions.empty());
  }
  SECTION("non-nilpotent input: fields become not-applicable")
  {
    auto report = classify(builtin_algebra("oscillator4"));
    CHECK_FALSE(report.two_step);
    CHECK(report.structural_conclusions.empty());
  }
  SECTION("JSON is stable across runs")
  {
    auto a = to_json(classify(builtin_algebra("h3_lorentz"))).dump();
    auto b = to_json(classify(builtin_algebra("h3_lorentz"))).dump();
    CHECK(a == b);
    CHECK(a.find("\"scalar_curvature\":\"1/2\"") != std::string::npos);
    CHECK(to_json(classify(builtin_algebra("free3_neutral")))
            .dump()
            .find("\"pseudo_h_type\":\"not-applicable\"") != std::string::npos);
  }
}
