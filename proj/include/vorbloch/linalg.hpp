#pragma once

#include <optional>
#include <vector>

#include "vorbloch/rational.hpp"

namespace vorbloch {

template <class T>
struct Matrix {
  size_t rows = 0, cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(size_t r, size_t c) : rows(r), cols(c), a(r * c, T(0)) {}

  T& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const T& operator()(size_t i, size_t j) const { return a[i * cols + j]; }

  static Matrix identity(size_t n) {
    Matrix m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }
  static Matrix from_rows(const std::vector<std::vector<T>>& r) {
    Matrix m(r.size(), r.empty() ? 0 : r[0].size());
    for (size_t i = 0; i < m.rows; ++i)
      for (size_t j = 0; j < m.cols; ++j) m(i, j) = r[i][j];
    return m;
  }
  std::vector<T> row(size_t i) const { return std::vector<T>(a.begin() + i * cols, a.begin() + (i + 1) * cols); }
  std::vector<T> col(size_t j) const {
    std::vector<T> c(rows);
    for (size_t i = 0; i < rows; ++i) c[i] = (*this)(i, j);
    return c;
  }
  Matrix transpose() const {
    Matrix t(cols, rows);
    for (size_t i = 0; i < rows; ++i)
      for (size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  bool operator==(const Matrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

template <class T>
Matrix<T> operator*(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> z(x.rows, y.cols);
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (size_t j = 0; j < y.cols; ++j) z(i, j) += x(i, k) * y(k, j);
    }
  return z;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& x, const Matrix<T>& y) {
  Matrix<T> z = x;
  for (size_t i = 0; i < z.a.size(); ++i) z.a[i] += y.a[i];
  return z;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& x, const std::vector<T>& v) {
  std::vector<T> out(x.rows, T(0));
  for (size_t i = 0; i < x.rows; ++i)
    for (size_t j = 0; j < x.cols; ++j) out[i] += x(i, j) * v[j];
  return out;
}

using RatMat = Matrix<Rational>;
using IntMat = Matrix<Integer>;

RatMat to_rat(const IntMat& m);
RatMat scaled(const RatMat& m, const Rational& c);
// m + c*r
RatMat axpy(const RatMat& m, const Rational& c, const RatMat& r);

// x^T M x
Rational quad_value(const RatMat& m, const IntVec& x);
Rational quad_value(const RatMat& m, const RatVec& x);
Rational bilinear(const RatMat& m, const IntVec& x, const IntVec& y);

size_t rank(RatMat m);
size_t rank(const std::vector<RatVec>& rows);
size_t rank(const std::vector<IntVec>& rows);
Rational det(RatMat m);
std::optional<RatMat> inverse(const RatMat& m);
// Basis of {x : m x = 0}, each vector primitive integral.
std::vector<IntVec> kernel(const RatMat& m);
std::vector<IntVec> kernel(const std::vector<RatVec>& rows, size_t dim);
std::optional<RatVec> solve(const RatMat& m, const RatVec& b);

struct LDL {
  RatMat L;  // unit lower triangular
  RatVec D;
};
// Returns nullopt unless m is symmetric positive definite.
std::optional<LDL> ldl_positive(const RatMat& m);
bool is_symmetric(const RatMat& m);
bool is_positive_semidefinite(RatMat m);

// Indices of a maximal linearly independent subset, greedy in the given order.
std::vector<size_t> independent_subset(const std::vector<RatVec>& vecs);

}  // namespace vorbloch
