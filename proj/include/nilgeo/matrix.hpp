#ifndef NILGEO_MATRIX_HPP
#define NILGEO_MATRIX_HPP

#include "nilgeo/errors.hpp"
#include "nilgeo/rational.hpp"

#include <cstddef>
#include <initializer_list>
#include <utility>
#include <vector>

namespace nilgeo {

/// Dense row-major matrix. Sized for desk-scale problems (n <= ~12 ambient,
/// a few hundred unknowns in flattened solver systems), so no sparsity.
template <typename T>
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  Matrix(std::initializer_list<std::initializer_list<T>> init)
  {
    rows_ = init.size();
    cols_ = rows_ == 0 ? 0 : init.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_)
        throw DimensionMismatchError("ragged matrix initializer");
      for (const auto& v : row)
        data_.push_back(v);
    }
  }

  static Matrix identity(std::size_t n)
  {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const Matrix& other) const
  {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }
  bool operator!=(const Matrix& other) const { return !(*this == other); }

  Matrix operator+(const Matrix& other) const
  {
    require_same_shape(other, "+");
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = data_[k] + other.data_[k];
    return out;
  }

  Matrix operator-(const Matrix& other) const
  {
    require_same_shape(other, "-");
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = data_[k] - other.data_[k];
    return out;
  }

  Matrix operator-() const
  {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = -data_[k];
    return out;
  }

  Matrix operator*(const Matrix& other) const
  {
    if (cols_ != other.rows_)
      throw DimensionMismatchError("matrix product shapes");
    Matrix out(rows_, other.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0))
          continue;
        for (std::size_t j = 0; j < other.cols_; ++j)
          out(i, j) += a * other(k, j);
      }
    return out;
  }

  Matrix operator*(const T& s) const
  {
    Matrix out(rows_, cols_);
    for (std::size_t k = 0; k < data_.size(); ++k)
      out.data_[k] = data_[k] * s;
    return out;
  }

  friend Matrix operator*(const T& s, const Matrix& m) { return m * s; }

  std::vector<T> operator*(const std::vector<T>& v) const
  {
    if (cols_ != v.size())
      throw DimensionMismatchError("matrix-vector product");
    std::vector<T> out(rows_, T(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out[i] += (*this)(i, j) * v[j];
    return out;
  }

  Matrix transposed() const
  {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        out(j, i) = (*this)(i, j);
    return out;
  }

  T trace() const
  {
    T t(0);
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i)
      t += (*this)(i, i);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }

  bool is_symmetric() const
  {
    if (!is_square())
      return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i))
          return false;
    return true;
  }

  bool is_zero() const
  {
    for (const auto& v : data_)
      if (v != T(0))
        return false;
    return true;
  }

  std::vector<T> row(std::size_t i) const
  {
    return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
  }

  std::vector<T> col(std::size_t j) const
  {
    std::vector<T> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      out[i] = (*this)(i, j);
    return out;
  }

  void set_row(std::size_t i, const std::vector<T>& r)
  {
    if (r.size() != cols_)
      throw DimensionMismatchError("set_row length");
    for (std::size_t j = 0; j < cols_; ++j)
      (*this)(i, j) = r[j];
  }

  void swap_rows(std::size_t a, std::size_t b)
  {
    if (a == b)
      return;
    for (std::size_t j = 0; j < cols_; ++j)
      std::swap((*this)(a, j), (*this)(b, j));
  }

private:
  void require_same_shape(const Matrix& other, const char* op) const
  {
    if (rows_ != other.rows_ || cols_ != other.cols_)
      throw DimensionMismatchError(std::string("matrix ") + op);
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> data_;
};

using RMatrix = Matrix<Rational>;
using DMatrix = Matrix<double>;
using RVec = std::vector<Rational>;
using DVec = std::vector<double>;

// ---------------------------------------------------------------------------
// Vector helpers
// ---------------------------------------------------------------------------

template <typename T>
std::vector<T> operator+(const std::vector<T>& a, const std::vector<T>& b)
{
  if (a.size() != b.size())
    throw DimensionMismatchError("vector sum");
  std::vector<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] + b[i];
  return out;
}

template <typename T>
std::vector<T> operator-(const std::vector<T>& a, const std::vector<T>& b)
{
  if (a.size() != b.size())
    throw DimensionMismatchError("vector difference");
  std::vector<T> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    out[i] = a[i] - b[i];
  return out;
}

template <typename T>
std::vector<T> operator*(const T& s, const std::vector<T>& v)
{
  std::vector<T> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i)
    out[i] = s * v[i];
  return out;
}

template <typename T>
bool is_zero_vector(const std::vector<T>& v)
{
  for (const auto& x : v)
    if (x != T(0))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Exact elimination (field scalars; used with Rational)
// ---------------------------------------------------------------------------

/// In-place reduced row echelon form. Returns the rank; pivot columns are
/// reported through `pivot_cols` when non-null. Deterministic: scans columns
/// left to right and takes the first non-zero entry as pivot.
template <typename T>
std::size_t rref(Matrix<T>& m, std::vector<std::size_t>* pivot_cols = nullptr)
{
  std::size_t rank = 0;
  for (std::size_t col = 0; col < m.cols() && rank < m.rows(); ++col) {
    std::size_t pivot = rank;
    while (pivot < m.rows() && m(pivot, col) == T(0))
      ++pivot;
    if (pivot == m.rows())
      continue;
    m.swap_rows(rank, pivot);
    T inv = T(1) / m(rank, col);
    for (std::size_t j = col; j < m.cols(); ++j)
      m(rank, j) = m(rank, j) * inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == rank || m(i, col) == T(0))
        continue;
      T f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(rank, j);
    }
    if (pivot_cols)
      pivot_cols->push_back(col);
    ++rank;
  }
  return rank;
}

template <typename T>
std::size_t rank(Matrix<T> m)
{
  return rref(m);
}

/// Basis of {x : m x = 0}, one kernel vector per row, in the canonical form
/// produced by back-substitution from the RREF (free variable set to 1).
template <typename T>
Matrix<T> nullspace(Matrix<T> m)
{
  std::vector<std::size_t> pivots;
  std::size_t r = rref(m, &pivots);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots)
    is_pivot[c] = true;

  Matrix<T> basis(m.cols() - r, m.cols());
  std::size_t row = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free])
      continue;
    basis(row, free) = T(1);
    for (std::size_t k = 0; k < pivots.size(); ++k)
      basis(row, pivots[k]) = -m(k, free);
    ++row;
  }
  return basis;
}

template <typename T>
T determinant(Matrix<T> m)
{
  if (!m.is_square())
    throw DimensionMismatchError("determinant of non-square matrix");
  T det(1);
  for (std::size_t col = 0; col < m.cols(); ++col) {
    std::size_t pivot = col;
    while (pivot < m.rows() && m(pivot, col) == T(0))
      ++pivot;
    if (pivot == m.rows())
      return T(0);
    if (pivot != col) {
      m.swap_rows(col, pivot);
      det = -det;
    }
    det *= m(col, col);
    T inv = T(1) / m(col, col);
    for (std::size_t i = col + 1; i < m.rows(); ++i) {
      if (m(i, col) == T(0))
        continue;
      T f = m(i, col) * inv;
      for (std::size_t j = col; j < m.cols(); ++j)
        m(i, j) -= f * m(col, j);
    }
  }
  return det;
}

template <typename T>
bool is_invertible(const Matrix<T>& m)
{
  return m.is_square() && determinant(m) != T(0);
}

template <typename T>
Matrix<T> inverse(const Matrix<T>& m)
{
  if (!m.is_square())
    throw DimensionMismatchError("inverse of non-square matrix");
  std::size_t n = m.rows();
  Matrix<T> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      aug(i, j) = m(i, j);
    aug(i, n + i) = T(1);
  }
  std::vector<std::size_t> pivots;
  rref(aug, &pivots);
  // all pivots must land in the left block
  if (pivots.size() != n || (n > 0 && pivots.back() >= n))
    throw PreconditionError("matrix is singular");
  Matrix<T> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = aug(i, n + j);
  return out;
}

/// Solves m x = b exactly. Returns false when the system is inconsistent;
/// for underdetermined systems returns one solution (free variables zero).
template <typename T>
bool solve_linear(const Matrix<T>& m, const std::vector<T>& b, std::vector<T>& x)
{
  if (b.size() != m.rows())
    throw DimensionMismatchError("solve_linear right-hand side");
  Matrix<T> aug(m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j)
      aug(i, j) = m(i, j);
    aug(i, m.cols()) = b[i];
  }
  std::vector<std::size_t> pivots;
  std::size_t r = rref(aug, &pivots);
  if (!pivots.empty() && pivots.back() == m.cols())
    return false;
  x.assign(m.cols(), T(0));
  for (std::size_t k = 0; k < r; ++k)
    x[pivots[k]] = aug(k, m.cols());
  return true;
}

/// Stacks matrices vertically.
template <typename T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b)
{
  if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
    throw DimensionMismatchError("vstack widths");
  std::size_t cols = a.rows() == 0 ? b.cols() : a.cols();
  Matrix<T> out(a.rows() + b.rows(), cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < cols; ++j)
      out(a.rows() + i, j) = b(i, j);
  return out;
}

} // namespace nilgeo

#endif
