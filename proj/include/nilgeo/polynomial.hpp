#ifndef NILGEO_POLYNOMIAL_HPP
#define NILGEO_POLYNOMIAL_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/matrix.hpp"
#include "nilgeo/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace nilgeo {

/// Univariate polynomial over the rationals, coefficients in ascending order,
/// no trailing zeros. The zero polynomial has an empty coefficient list and
/// degree -1.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(const Rational& constant)
  {
    if (constant != 0)
      coeffs_.push_back(constant);
  }
  explicit Polynomial(std::vector<Rational> ascending) : coeffs_(std::move(ascending)) { trim(); }

  static Polynomial x()
  {
    return Polynomial(std::vector<Rational>{Rational(0), Rational(1)});
  }

  /// x - root
  static Polynomial linear(const Rational& root)
  {
    return Polynomial(std::vector<Rational>{-root, Rational(1)});
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }

  const Rational& coeff(std::size_t k) const
  {
    static const Rational zero(0);
    return k < coeffs_.size() ? coeffs_[k] : zero;
  }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  const Rational& leading() const
  {
    if (coeffs_.empty())
      throw PreconditionError("leading coefficient of zero polynomial");
    return coeffs_.back();
  }

  bool operator==(const Polynomial& other) const { return coeffs_ == other.coeffs_; }
  bool operator!=(const Polynomial& other) const { return !(*this == other); }

  Polynomial operator+(const Polynomial& other) const
  {
    std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      out[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
      out[i] += other.coeffs_[i];
    return Polynomial(std::move(out));
  }

  Polynomial operator-(const Polynomial& other) const
  {
    std::vector<Rational> out(std::max(coeffs_.size(), other.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      out[i] += coeffs_[i];
    for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
      out[i] -= other.coeffs_[i];
    return Polynomial(std::move(out));
  }

  Polynomial operator*(const Polynomial& other) const
  {
    if (is_zero() || other.is_zero())
      return Polynomial();
    std::vector<Rational> out(coeffs_.size() + other.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      for (std::size_t j = 0; j < other.coeffs_.size(); ++j)
        out[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial(std::move(out));
  }

  Polynomial operator*(const Rational& s) const
  {
    std::vector<Rational> out(coeffs_);
    for (auto& c : out)
      c *= s;
    return Polynomial(std::move(out));
  }

  /// Exact Euclidean division; returns {quotient, remainder}.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& divisor) const
  {
    if (divisor.is_zero())
      throw PreconditionError("polynomial division by zero");
    std::vector<Rational> rem(coeffs_);
    int dd = divisor.degree();
    if (degree() < dd)
      return {Polynomial(), *this};
    std::vector<Rational> quot(coeffs_.size() - divisor.coeffs_.size() + 1, Rational(0));
    for (int k = static_cast<int>(rem.size()) - 1; k >= dd; --k) {
      if (rem[k] == 0)
        continue;
      Rational f = rem[k] / divisor.leading();
      quot[k - dd] = f;
      for (int j = 0; j <= dd; ++j)
        rem[k - dd + j] -= f * divisor.coeffs_[j];
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
  }

  bool divides(const Polynomial& dividend) const
  {
    return dividend.divmod(*this).second.is_zero();
  }

  Polynomial derivative() const
  {
    if (coeffs_.size() <= 1)
      return Polynomial();
    std::vector<Rational> out(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
      out[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return Polynomial(std::move(out));
  }

  Polynomial monic() const
  {
    if (is_zero())
      throw PreconditionError("monic form of zero polynomial");
    return *this * (Rational(1) / leading());
  }

  Rational operator()(const Rational& x) const
  {
    Rational acc(0);
    for (std::size_t i = coeffs_.size(); i-- > 0;)
      acc = acc * x + coeffs_[i];
    return acc;
  }

  /// Evaluates at a square matrix (Horner).
  RMatrix operator()(const RMatrix& m) const
  {
    if (!m.is_square())
      throw DimensionMismatchError("polynomial of non-square matrix");
    RMatrix acc(m.rows(), m.cols());
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      acc = acc * m;
      for (std::size_t d = 0; d < m.rows(); ++d)
        acc(d, d) += coeffs_[i];
    }
    return acc;
  }

  std::string str(const std::string& var = "x") const
  {
    if (is_zero())
      return "0";
    std::string out;
    for (std::size_t i = coeffs_.size(); i-- > 0;) {
      const Rational& c = coeffs_[i];
      if (c == 0)
        continue;
      if (!out.empty())
        out += (c > 0) ? " + " : " - ";
      else if (c < 0)
        out += "-";
      Rational a = abs(c);
      bool show_coeff = (i == 0) || a != 1;
      if (show_coeff)
        out += to_string(a);
      if (i > 0) {
        if (show_coeff)
          out += "*";
        out += var;
        if (i > 1)
          out += "^" + std::to_string(i);
      }
    }
    return out;
  }

private:
  void trim()
  {
    while (!coeffs_.empty() && coeffs_.back() == 0)
      coeffs_.pop_back();
  }

  std::vector<Rational> coeffs_;
};

inline Polynomial gcd(Polynomial a, Polynomial b)
{
  while (!b.is_zero()) {
    Polynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  if (a.is_zero())
    return a;
  return a.monic();
}

inline Polynomial lcm(const Polynomial& a, const Polynomial& b)
{
  if (a.is_zero() || b.is_zero())
    return Polynomial();
  Polynomial g = gcd(a, b);
  return (a * b).divmod(g).first.monic();
}

// ---------------------------------------------------------------------------
// Characteristic and minimal polynomials
// ---------------------------------------------------------------------------

/// det(x I - A), monic, by the Faddeev-LeVerrier recurrence (exact over Q).
inline Polynomial characteristic_polynomial(const RMatrix& a)
{
  if (!a.is_square())
    throw DimensionMismatchError("characteristic polynomial of non-square matrix");
  std::size_t n = a.rows();
  std::vector<Rational> coeffs(n + 1, Rational(0));
  coeffs[n] = 1;
  RMatrix m = RMatrix::identity(n);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m;
    Rational c = -m.trace() / Rational(static_cast<long>(k));
    coeffs[n - k] = c;
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) += c;
  }
  return Polynomial(std::move(coeffs));
}

/// Monic minimal polynomial via Krylov chains: for each basis vector find the
/// first linear dependency among its iterates, then take the lcm.
inline Polynomial minimal_polynomial(const RMatrix& a)
{
  if (!a.is_square())
    throw DimensionMismatchError("minimal polynomial of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0)
    return Polynomial(Rational(1));
  Polynomial result(Rational(1));
  for (std::size_t s = 0; s < n; ++s) {
    RVec v(n, Rational(0));
    v[s] = 1;
    std::vector<RVec> iterates{v};
    for (;;) {
      // Solve for the new iterate as a combination of the previous ones.
      RMatrix sys(n, iterates.size());
      for (std::size_t j = 0; j < iterates.size(); ++j)
        for (std::size_t i = 0; i < n; ++i)
          sys(i, j) = iterates[j][i];
      RVec next = a * iterates.back();
      RVec combo;
      if (solve_linear(sys, next, combo)) {
        std::vector<Rational> cs(iterates.size() + 1, Rational(0));
        for (std::size_t j = 0; j < combo.size(); ++j)
          cs[j] = -combo[j];
        cs[iterates.size()] = 1;
        result = lcm(result, Polynomial(std::move(cs)));
        break;
      }
      iterates.push_back(std::move(next));
    }
    if (result.degree() == static_cast<int>(n))
      break;
  }
  return result;
}

// ---------------------------------------------------------------------------
// Irreducible factorization over Q
// ---------------------------------------------------------------------------

struct PolynomialFactor {
  Polynomial factor; ///< monic irreducible
  int multiplicity = 0;
};

namespace detail {

// Divisor enumeration needs the full integer factorization; trial division up
// to 10^6 certifies any cofactor below 10^12 as prime.
inline std::vector<Integer> all_divisors_signed(Integer n)
{
  if (n < 0)
    n = -n;
  if (n == 0)
    throw PreconditionError("divisors of zero");
  std::map<Integer, int> primes;
  for (Integer p = 2; p * p <= n && p <= 1000000; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      ++primes[p];
      n /= p;
    }
  }
  if (n > 1) {
    if (n >= Integer("1000000000000"))
      throw FactorizationIncompleteError("cannot certify primality of large cofactor " + n.str());
    ++primes[n];
  }
  std::vector<Integer> divisors{Integer(1)};
  for (const auto& [p, e] : primes) {
    std::vector<Integer> grown;
    grown.reserve(divisors.size() * (e + 1));
    Integer pk = 1;
    for (int k = 0; k <= e; ++k) {
      for (const auto& d : divisors)
        grown.push_back(d * pk);
      pk *= p;
    }
    divisors = std::move(grown);
  }
  std::vector<Integer> out;
  out.reserve(2 * divisors.size());
  for (const auto& d : divisors) {
    out.push_back(d);
    out.push_back(-d);
  }
  return out;
}

inline Polynomial lagrange_interpolate(const std::vector<Rational>& xs,
                                       const std::vector<Rational>& ys)
{
  Polynomial acc;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    Polynomial term(ys[i]);
    for (std::size_t j = 0; j < xs.size(); ++j) {
      if (i == j)
        continue;
      term = term * Polynomial::linear(xs[j]) * (Rational(1) / (xs[i] - xs[j]));
    }
    acc = acc + term;
  }
  return acc;
}

// One monic irreducible factor of the monic polynomial p (degree >= 1):
// rational roots first, then Kronecker trial interpolation through divisor
// tuples of integer values. Degrees beyond 12 are out of scope.
inline Polynomial find_irreducible_factor(const Polynomial& p)
{
  int deg = p.degree();
  if (deg <= 1)
    return p;

  // Clear denominators to get an integer polynomial with the same roots.
  Integer denom_lcm = 1;
  for (const auto& c : p.coeffs())
    denom_lcm = boost::multiprecision::lcm(denom_lcm, denominator(c));
  std::vector<Integer> ic(deg + 1);
  for (int i = 0; i <= deg; ++i)
    ic[i] = numerator(p.coeff(i) * Rational(denom_lcm));

  if (ic[0] == 0)
    return Polynomial::x();

  // Rational root theorem: roots are +-(divisor of ic[0]) / (divisor of lead).
  for (const auto& num : all_divisors_signed(ic[0]))
    for (const auto& den : all_divisors_signed(ic[deg])) {
      if (den < 0)
        continue;
      Rational candidate(num, den);
      if (p(candidate) == 0)
        return Polynomial::linear(candidate);
    }

  if (deg <= 3)
    return p; // no rational root and degree <= 3: irreducible over Q
  if (deg > 12)
    throw FactorizationIncompleteError("residual degree " + std::to_string(deg) +
                                       " exceeds the supported bound 12");

  constexpr long kTupleBudget = 2000000;
  for (int d = 2; d <= deg / 2; ++d) {
    // Integer sample points 0, 1, -1, 2, -2, ...
    std::vector<Rational> xs;
    std::vector<Integer> values;
    for (long t = 0; static_cast<int>(xs.size()) <= d; t = (t <= 0) ? 1 - t : -t) {
      Rational x(t);
      Rational val = p(x);
      if (val == 0)
        throw FactorizationIncompleteError("unexpected integer root after root extraction");
      xs.push_back(x);
      values.push_back(numerator(val * Rational(denom_lcm)));
    }
    std::vector<std::vector<Integer>> divisor_sets;
    double tuples = 1;
    for (const auto& v : values) {
      divisor_sets.push_back(all_divisors_signed(v));
      tuples *= static_cast<double>(divisor_sets.back().size());
      if (tuples > static_cast<double>(kTupleBudget))
        throw FactorizationIncompleteError("divisor tuple budget exceeded at degree " +
                                           std::to_string(d));
    }
    std::vector<std::size_t> idx(divisor_sets.size(), 0);
    for (;;) {
      // Candidate integer factor values at the sample points.
      std::vector<Rational> ys(divisor_sets.size());
      for (std::size_t i = 0; i < divisor_sets.size(); ++i)
        ys[i] = Rational(divisor_sets[i][idx[i]]);
      Polynomial g = lagrange_interpolate(xs, ys);
      if (g.degree() == d && g.divides(p)) {
        Polynomial q = g.monic();
        Polynomial sub = find_irreducible_factor(q);
        return sub; // q may itself be reducible for d > 2
      }
      // advance the tuple odometer
      std::size_t pos = 0;
      while (pos < idx.size() && ++idx[pos] == divisor_sets[pos].size()) {
        idx[pos] = 0;
        ++pos;
      }
      if (pos == idx.size())
        break;
    }
  }
  return p; // no factor of degree <= deg/2 divides p: irreducible
}

} // namespace detail

/// Complete factorization of a non-zero polynomial into monic irreducible
/// factors with multiplicities (leading coefficient dropped). Deterministic;
/// throws FactorizationIncompleteError instead of ever falling back to
/// floating point.
inline std::vector<PolynomialFactor> factor_over_rationals(const Polynomial& p)
{
  if (p.is_zero())
    throw PreconditionError("factorization of the zero polynomial");
  Polynomial rest = p.monic();
  std::vector<PolynomialFactor> out;
  while (rest.degree() > 0) {
    Polynomial f = detail::find_irreducible_factor(rest);
    int mult = 0;
    for (;;) {
      auto [q, r] = rest.divmod(f);
      if (!r.is_zero())
        break;
      rest = q;
      ++mult;
    }
    out.push_back({f, mult});
  }
  std::sort(out.begin(), out.end(), [](const PolynomialFactor& a, const PolynomialFactor& b) {
    if (a.factor.degree() != b.factor.degree())
      return a.factor.degree() < b.factor.degree();
    for (int i = a.factor.degree(); i >= 0; --i) {
      if (a.factor.coeff(i) != b.factor.coeff(i))
        return a.factor.coeff(i) < b.factor.coeff(i);
    }
    return false;
  });
  return out;
}

} // namespace nilgeo

#endif
