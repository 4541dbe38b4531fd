#ifndef NILGEO_NUMERIC_HPP
#define NILGEO_NUMERIC_HPP

#include "nilgeo/matrix.hpp"
#include "nilgeo/rational.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

namespace nilgeo {

inline DMatrix to_double(const RMatrix& m)
{
  DMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(i, j) = to_double(m(i, j));
  return out;
}

inline DVec to_double(const RVec& v)
{
  DVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = to_double(v[i]);
  return out;
}

inline double max_abs(const DVec& v)
{
  double m = 0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

inline double norm2(const DVec& v)
{
  double s = 0;
  for (double x : v)
    s += x * x;
  return std::sqrt(s);
}

inline DVec axpy(double a, const DVec& x, const DVec& y)
{
  DVec out(y);
  for (std::size_t i = 0; i < x.size(); ++i)
    out[i] += a * x[i];
  return out;
}

inline double one_norm(const DMatrix& m)
{
  double best = 0;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    double s = 0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      s += std::abs(m(i, j));
    best = std::max(best, s);
  }
  return best;
}

/// Matrix exponential by scaling-and-squaring with a Taylor series summed to
/// convergence (relative term tolerance `tol`, default well below 1e-13).
inline DMatrix expm(const DMatrix& a, double tol = 1e-16)
{
  if (!a.is_square())
    throw DimensionMismatchError("matrix exponential of non-square matrix");
  std::size_t n = a.rows();
  if (n == 0)
    return DMatrix(0, 0);
  int squarings = 0;
  double norm = one_norm(a);
  while (norm > 0.5) {
    norm /= 2;
    ++squarings;
  }
  double scale = std::ldexp(1.0, -squarings);
  DMatrix t = a * scale;
  DMatrix sum = DMatrix::identity(n);
  DMatrix term = DMatrix::identity(n);
  for (int k = 1; k < 64; ++k) {
    term = term * t * (1.0 / k);
    sum = sum + term;
    if (one_norm(term) <= tol * one_norm(sum))
      break;
  }
  for (int s = 0; s < squarings; ++s)
    sum = sum * sum;
  return sum;
}

/// Adaptive Simpson quadrature for vector-valued integrands; the absolute
/// tolerance applies to the max-abs norm of the result on each subinterval.
inline DVec integrate_adaptive_simpson(const std::function<DVec(double)>& f, double a, double b,
                                       double abs_tol)
{
  struct Worker {
    const std::function<DVec(double)>& f;
    int max_depth = 40;

    DVec simpson(double lo, double hi, const DVec& flo, const DVec& fmid, const DVec& fhi) const
    {
      double h = (hi - lo) / 6.0;
      DVec out(flo.size());
      for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = h * (flo[i] + 4.0 * fmid[i] + fhi[i]);
      return out;
    }

    DVec run(double lo, double hi, const DVec& flo, const DVec& fmid, const DVec& fhi,
             const DVec& whole, double tol, int depth) const
    {
      double mid = 0.5 * (lo + hi);
      double lq = 0.5 * (lo + mid);
      double rq = 0.5 * (mid + hi);
      DVec flq = f(lq);
      DVec frq = f(rq);
      DVec left = simpson(lo, mid, flo, flq, fmid);
      DVec right = simpson(mid, hi, fmid, frq, fhi);
      DVec combined(whole.size());
      double err = 0;
      for (std::size_t i = 0; i < whole.size(); ++i) {
        combined[i] = left[i] + right[i];
        err = std::max(err, std::abs(combined[i] - whole[i]));
      }
      if (depth >= max_depth || err <= 15.0 * tol) {
        for (std::size_t i = 0; i < combined.size(); ++i)
          combined[i] += (combined[i] - whole[i]) / 15.0;
        return combined;
      }
      DVec l = run(lo, mid, flo, flq, fmid, left, tol / 2, depth + 1);
      DVec r = run(mid, hi, fmid, frq, fhi, right, tol / 2, depth + 1);
      for (std::size_t i = 0; i < l.size(); ++i)
        l[i] += r[i];
      return l;
    }
  };

  if (a == b)
    return DVec(f(a).size(), 0.0);
  Worker w{f};
  DVec fa = f(a);
  DVec fb = f(b);
  DVec fm = f(0.5 * (a + b));
  DVec whole = w.simpson(a, b, fa, fm, fb);
  return w.run(a, b, fa, fm, fb, whole, abs_tol, 0);
}

/// First derivative from three samples at arbitrary abscissae (exact for
/// quadratics).
inline double fd_first(double t0, double f0, double t1, double f1, double t2, double f2, double at)
{
  double d0 = (2 * at - t1 - t2) / ((t0 - t1) * (t0 - t2));
  double d1 = (2 * at - t0 - t2) / ((t1 - t0) * (t1 - t2));
  double d2 = (2 * at - t0 - t1) / ((t2 - t0) * (t2 - t1));
  return f0 * d0 + f1 * d1 + f2 * d2;
}

/// Second derivative from three samples at arbitrary abscissae.
inline double fd_second(double t0, double f0, double t1, double f1, double t2, double f2)
{
  double d0 = 2.0 / ((t0 - t1) * (t0 - t2));
  double d1 = 2.0 / ((t1 - t0) * (t1 - t2));
  double d2 = 2.0 / ((t2 - t0) * (t2 - t1));
  return f0 * d0 + f1 * d1 + f2 * d2;
}

} // namespace nilgeo

#endif
