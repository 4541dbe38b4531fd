#ifndef NILGEO_RATIONAL_HPP
#define NILGEO_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace nilgeo {

/// Exact rational scalar; all algebraic data in this library lives over this
/// field. Stored in lowest terms with positive denominator, arithmetic never
/// rounds. Expression templates are off so that operators return plain
/// values.
using Rational =
  boost::multiprecision::number<boost::multiprecision::backends::rational_adaptor<
                                  boost::multiprecision::backends::cpp_int_backend<>>,
                                boost::multiprecision::et_off>;
using Integer = boost::multiprecision::cpp_int;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Rational& r) { return r.sign(); }

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

/// Parses "p/q", "p" or "-p/q". Rejects zero denominators and malformed text.
inline Rational parse_rational(const std::string& text)
{
  if (text.empty())
    throw std::invalid_argument("empty rational literal");
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos)
      return Rational(Integer(text));
    Integer num(text.substr(0, slash));
    Integer den(text.substr(slash + 1));
    if (den == 0)
      throw std::invalid_argument("zero denominator in rational literal: " + text);
    if (den < 0) {
      num = -num;
      den = -den;
    }
    return Rational(num, den);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal: " + text);
  }
}

/// Formats as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& r)
{
  std::string s = numerator(r).str();
  if (denominator(r) != 1)
    s += "/" + denominator(r).str();
  return s;
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

} // namespace nilgeo

#endif
