#ifndef NILGEO_SPECTRAL_HPP
#define NILGEO_SPECTRAL_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/geometry.hpp"
#include "nilgeo/lie_algebra.hpp"
#include "nilgeo/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace nilgeo {

struct CharMinPolynomials {
  Polynomial characteristic;
  Polynomial minimal;
  std::vector<PolynomialFactor> minimal_factors; ///< irreducible over Q
};

inline CharMinPolynomials char_min_polynomials(const RMatrix& t)
{
  CharMinPolynomials out;
  out.characteristic = characteristic_polynomial(t);
  out.minimal = minimal_polynomial(t);
  out.minimal_factors = factor_over_rationals(out.minimal);
  return out;
}

/// One primary component: V = ker p(T)^r for an irreducible factor p of the
/// minimal polynomial with multiplicity r. Linear factors expose their
/// rational eigenvalue; irreducible quadratics are the real form of a
/// complex-conjugate eigenvalue pair.
struct PrimaryComponent {
  Polynomial factor;
  int multiplicity = 0;
  Subspace component;
  std::optional<Rational> eigenvalue;
};

struct PrimaryDecomposition {
  Polynomial characteristic;
  Polynomial minimal;
  std::vector<PrimaryComponent> components;
};

inline PrimaryDecomposition primary_decomposition(const RMatrix& t)
{
  if (!t.is_square())
    throw DimensionMismatchError("primary decomposition of non-square matrix");
  auto polys = char_min_polynomials(t);
  PrimaryDecomposition out;
  out.characteristic = polys.characteristic;
  out.minimal = polys.minimal;

  std::size_t total = 0;
  RMatrix stacked(0, t.cols());
  for (const auto& pf : polys.minimal_factors) {
    RMatrix power = RMatrix::identity(t.rows());
    RMatrix value = pf.factor(t);
    for (int k = 0; k < pf.multiplicity; ++k)
      power = power * value;
    PrimaryComponent comp;
    comp.factor = pf.factor;
    comp.multiplicity = pf.multiplicity;
    comp.component = Subspace::from_rows(nullspace(power));
    if (pf.factor.degree() == 1)
      comp.eigenvalue = -pf.factor.coeff(0);
    total += comp.component.dim();
    stacked = vstack(stacked, comp.component.basis());
    out.components.push_back(std::move(comp));
  }
  if (total != t.rows() || rank(stacked) != t.rows())
    throw std::logic_error("primary components do not decompose the space");
  return out;
}

// ---------------------------------------------------------------------------
// Structural classifiers
// ---------------------------------------------------------------------------

enum class FactorLocation { InComplement, InCenter, Mixed };

inline const char* to_string(FactorLocation loc)
{
  switch (loc) {
    case FactorLocation::InComplement: return "v";
    case FactorLocation::InCenter: return "z";
    default: return "mixed";
  }
}

struct SplittingCriterion {
  bool holds = false;
  PrimaryDecomposition decomposition;
  std::vector<FactorLocation> assignment; ///< aligned with decomposition.components
};

/// The sufficient condition for every isometry to preserve the v/z splitting:
/// each primary component of the Ricci operator lies inside v or inside z.
inline SplittingCriterion splitting_criterion(const SplitAlgebra& split,
                                              const RicciData& ricci_data)
{
  SplittingCriterion out;
  out.decomposition = primary_decomposition(ricci_data.op);
  out.holds = true;
  for (const auto& comp : out.decomposition.components) {
    bool in_v = split.complement().contains(comp.component);
    bool in_z = split.center_space().contains(comp.component);
    if (in_v)
      out.assignment.push_back(FactorLocation::InComplement);
    else if (in_z)
      out.assignment.push_back(FactorLocation::InCenter);
    else {
      out.assignment.push_back(FactorLocation::Mixed);
      out.holds = false;
    }
  }
  return out;
}

inline SplittingCriterion splitting_criterion(const SplitAlgebra& split)
{
  return splitting_criterion(split, ricci(split));
}

/// j(u)^2 = -<u,u> I for all central u, checked exactly through the
/// polarized form j(u)j(w) + j(w)j(u) = -2<u,w> I on center basis pairs.
inline bool is_pseudo_h_type(const SplitAlgebra& split)
{
  if (!split.orthogonal())
    throw DegenerateCenterError("the pseudo-H-type condition requires a non-degenerate center");
  JFamily jf = j_family(split);
  std::size_t m = split.dim_v();
  for (std::size_t k = 0; k < split.dim_z(); ++k)
    for (std::size_t l = k; l < split.dim_z(); ++l) {
      RMatrix anti = jf.map(k) * jf.map(l) + jf.map(l) * jf.map(k);
      Rational expected = Rational(-2) * split.gram_z()(k, l);
      for (std::size_t a = 0; a < m; ++a)
        anti(a, a) -= expected;
      if (!anti.is_zero())
        return false;
    }
  return true;
}

/// Structural facts the classifier is allowed to assert:
///  - SPLIT_EQ_AUT: splitting-preserving isometries are exactly the isometric
///    automorphisms (center non-degenerate).
///  - ISO_EQ_SPLIT: every isometry preserves the splitting (the splitting
///    criterion holds; sufficient condition only).
///  - ISO_EQ_AUT, NEGATIVE_SCALAR: pseudo-H-type consequences.
enum class StructuralFact { SplitEqAut, IsoEqSplit, IsoEqAut, NegativeScalar };

inline const char* to_string(StructuralFact f)
{
  switch (f) {
    case StructuralFact::SplitEqAut: return "SPLIT_EQ_AUT";
    case StructuralFact::IsoEqSplit: return "ISO_EQ_SPLIT";
    case StructuralFact::IsoEqAut: return "ISO_EQ_AUT";
    default: return "NEGATIVE_SCALAR";
  }
}

struct ClassificationReport {
  bool two_step = false;
  bool center_nondegenerate = false;
  std::optional<bool> pseudo_h_type;
  std::optional<bool> splitting_criterion_holds;
  std::optional<bool> ricci_nilpotent;
  std::optional<Rational> scalar_curvature;
  std::optional<SplittingCriterion> eigen_summary;
  std::vector<StructuralFact> structural_conclusions;
};

/// Runs every classifier whose preconditions the algebra meets; fields stay
/// empty ("not-applicable") otherwise.
inline ClassificationReport classify(const MetricLieAlgebra& alg)
{
  ClassificationReport report;
  report.two_step = is_two_step_nilpotent(alg);
  Subspace z = center(alg);
  report.center_nondegenerate = restrict_metric(alg, z).nondegenerate;
  if (!report.two_step || !report.center_nondegenerate)
    return report;

  SplitAlgebra sp = split(alg);
  report.structural_conclusions.push_back(StructuralFact::SplitEqAut);

  RicciData rd = ricci(sp);
  report.scalar_curvature = rd.scalar;

  SplittingCriterion criterion = splitting_criterion(sp, rd);
  report.splitting_criterion_holds = criterion.holds;
  if (criterion.holds)
    report.structural_conclusions.push_back(StructuralFact::IsoEqSplit);

  const Polynomial& minimal = criterion.decomposition.minimal;
  bool nilpotent = true;
  for (int k = 0; k < minimal.degree(); ++k)
    if (minimal.coeff(k) != 0) {
      nilpotent = false;
      break;
    }
  report.ricci_nilpotent = nilpotent;

  report.pseudo_h_type = is_pseudo_h_type(sp);
  if (*report.pseudo_h_type) {
    report.structural_conclusions.push_back(StructuralFact::IsoEqAut);
    report.structural_conclusions.push_back(StructuralFact::NegativeScalar);
    // Internal consistency: pseudo-H-type forces the criterion and pins the
    // scalar curvature to -pm/4.
    Rational expected = Rational(-1, 4) * Rational(static_cast<long>(sp.dim_z())) *
                        Rational(static_cast<long>(sp.dim_v()));
    if (!criterion.holds || rd.scalar != expected || rd.scalar >= 0)
      throw std::logic_error("pseudo-H-type consistency check failed");
  }
  report.eigen_summary = std::move(criterion);
  return report;
}

// ---------------------------------------------------------------------------
// Report serialization (stable JSON schema)
// ---------------------------------------------------------------------------

inline nlohmann::ordered_json to_json(const ClassificationReport& report)
{
  nlohmann::ordered_json j;
  j["two_step"] = report.two_step;
  j["center_nondegenerate"] = report.center_nondegenerate;
  auto opt_bool = [](const std::optional<bool>& b) -> nlohmann::ordered_json {
    if (!b)
      return "not-applicable";
    return *b;
  };
  j["pseudo_h_type"] = opt_bool(report.pseudo_h_type);
  j["splitting_criterion_holds"] = opt_bool(report.splitting_criterion_holds);
  j["ricci_nilpotent"] = opt_bool(report.ricci_nilpotent);
  if (report.scalar_curvature)
    j["scalar_curvature"] = to_string(*report.scalar_curvature);
  else
    j["scalar_curvature"] = "not-applicable";
  if (report.eigen_summary) {
    auto factors = nlohmann::ordered_json::array();
    const auto& summary = *report.eigen_summary;
    for (std::size_t i = 0; i < summary.decomposition.components.size(); ++i) {
      const auto& comp = summary.decomposition.components[i];
      nlohmann::ordered_json f;
      f["factor"] = comp.factor.str();
      f["multiplicity"] = comp.multiplicity;
      f["dimension"] = comp.component.dim();
      if (comp.eigenvalue)
        f["eigenvalue"] = to_string(*comp.eigenvalue);
      f["location"] = to_string(summary.assignment[i]);
      factors.push_back(std::move(f));
    }
    j["eigen_summary"] = {{"minimal_polynomial", summary.decomposition.minimal.str()},
                          {"characteristic_polynomial", summary.decomposition.characteristic.str()},
                          {"factors", factors}};
  } else {
    j["eigen_summary"] = "not-applicable";
  }
  auto conclusions = nlohmann::ordered_json::array();
  for (auto fact : report.structural_conclusions)
    conclusions.push_back(to_string(fact));
  j["structural_conclusions"] = conclusions;
  return j;
}

} // namespace nilgeo

#endif
