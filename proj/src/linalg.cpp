#include "vorbloch/linalg.hpp"

#include <utility>

namespace vorbloch {

RatMat to_rat(const IntMat& m) {
  RatMat r(m.rows, m.cols);
  for (size_t i = 0; i < m.a.size(); ++i) r.a[i] = m.a[i];
  return r;
}

RatMat scaled(const RatMat& m, const Rational& c) {
  RatMat r = m;
  for (auto& x : r.a) x *= c;
  return r;
}

RatMat axpy(const RatMat& m, const Rational& c, const RatMat& r) {
  RatMat out = m;
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] += c * r.a[i];
  return out;
}

Rational quad_value(const RatMat& m, const IntVec& x) {
  Rational s = 0;
  for (size_t i = 0; i < m.rows; ++i) {
    if (x[i] == 0) continue;
    Rational t = 0;
    for (size_t j = 0; j < m.cols; ++j)
      if (x[j] != 0) t += m(i, j) * x[j];
    s += t * x[i];
  }
  return s;
}

Rational quad_value(const RatMat& m, const RatVec& x) {
  Rational s = 0;
  for (size_t i = 0; i < m.rows; ++i) {
    Rational t = 0;
    for (size_t j = 0; j < m.cols; ++j) t += m(i, j) * x[j];
    s += t * x[i];
  }
  return s;
}

Rational bilinear(const RatMat& m, const IntVec& x, const IntVec& y) {
  Rational s = 0;
  for (size_t i = 0; i < m.rows; ++i) {
    if (x[i] == 0) continue;
    Rational t = 0;
    for (size_t j = 0; j < m.cols; ++j)
      if (y[j] != 0) t += m(i, j) * y[j];
    s += t * x[i];
  }
  return s;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<size_t> rref(RatMat& m) {
  std::vector<size_t> piv;
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rational inv = 1 / m(r, c);
    for (size_t j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rational f = m(i, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

RatMat from_vecs(const std::vector<RatVec>& rows, size_t dim) {
  RatMat m(rows.size(), dim);
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < dim; ++j) m(i, j) = rows[i][j];
  return m;
}

}  // namespace

size_t rank(RatMat m) {
  // forward elimination only
  size_t r = 0;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && m(p, c) == 0) ++p;
    if (p == m.rows) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    for (size_t i = r + 1; i < m.rows; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(r, c);
      for (size_t j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

size_t rank(const std::vector<RatVec>& rows) {
  if (rows.empty()) return 0;
  return rank(from_vecs(rows, rows[0].size()));
}

size_t rank(const std::vector<IntVec>& rows) {
  std::vector<RatVec> r;
  for (const auto& v : rows) r.push_back(to_rat(v));
  return rank(r);
}

Rational det(RatMat m) {
  size_t n = m.rows;
  Rational d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      d = -d;
    }
    d *= m(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == 0) continue;
      Rational f = m(i, c) / m(c, c);
      for (size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return d;
}

std::optional<RatMat> inverse(const RatMat& m) {
  size_t n = m.rows;
  RatMat aug(n, 2 * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
  RatMat inv(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

std::vector<IntVec> kernel(const RatMat& m0) {
  RatMat m = m0;
  auto piv = rref(m);
  std::vector<bool> is_piv(m.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<IntVec> basis;
  for (size_t f = 0; f < m.cols; ++f) {
    if (is_piv[f]) continue;
    RatVec v(m.cols, Rational(0));
    v[f] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
    basis.push_back(primitive(v));
  }
  return basis;
}

std::vector<IntVec> kernel(const std::vector<RatVec>& rows, size_t dim) {
  if (rows.empty()) {
    std::vector<IntVec> basis;
    for (size_t i = 0; i < dim; ++i) {
      IntVec e(dim, Integer(0));
      e[i] = 1;
      basis.push_back(e);
    }
    return basis;
  }
  return kernel(from_vecs(rows, dim));
}

std::optional<RatVec> solve(const RatMat& m, const RatVec& b) {
  RatMat aug(m.rows, m.cols + 1);
  for (size_t i = 0; i < m.rows; ++i) {
    for (size_t j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  auto piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
  RatVec x(m.cols, Rational(0));
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(r, m.cols);
  return x;
}

bool is_symmetric(const RatMat& m) {
  if (m.rows != m.cols) return false;
  for (size_t i = 0; i < m.rows; ++i)
    for (size_t j = i + 1; j < m.cols; ++j)
      if (m(i, j) != m(j, i)) return false;
  return true;
}

std::optional<LDL> ldl_positive(const RatMat& m) {
  if (!is_symmetric(m)) return std::nullopt;
  size_t n = m.rows;
  LDL f{RatMat::identity(n), RatVec(n)};
  for (size_t j = 0; j < n; ++j) {
    Rational d = m(j, j);
    for (size_t k = 0; k < j; ++k) d -= f.L(j, k) * f.L(j, k) * f.D[k];
    if (d <= 0) return std::nullopt;
    f.D[j] = d;
    for (size_t i = j + 1; i < n; ++i) {
      Rational s = m(i, j);
      for (size_t k = 0; k < j; ++k) s -= f.L(i, k) * f.L(j, k) * f.D[k];
      f.L(i, j) = s / d;
    }
  }
  return f;
}

std::vector<size_t> independent_subset(const std::vector<RatVec>& vecs) {
  std::vector<size_t> chosen;
  std::vector<RatVec> basis;  // echelonized rows
  std::vector<size_t> pivots;
  for (size_t idx = 0; idx < vecs.size(); ++idx) {
    RatVec v = vecs[idx];
    for (size_t b = 0; b < basis.size(); ++b) {
      size_t p = pivots[b];
      if (v[p] == 0) continue;
      Rational f = v[p] / basis[b][p];
      for (size_t j = 0; j < v.size(); ++j) v[j] -= f * basis[b][j];
    }
    size_t p = 0;
    while (p < v.size() && v[p] == 0) ++p;
    if (p == v.size()) continue;
    basis.push_back(v);
    pivots.push_back(p);
    chosen.push_back(idx);
  }
  return chosen;
}

}  // namespace vorbloch

namespace vorbloch {

bool is_positive_semidefinite(RatMat m) {
  if (!is_symmetric(m)) return false;
  size_t n = m.rows;
  std::vector<bool> done(n, false);
  for (size_t step = 0; step < n; ++step) {
    size_t p = n;
    for (size_t i = 0; i < n; ++i)
      if (!done[i] && m(i, i) > 0) {
        p = i;
        break;
      }
    if (p == n) {
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && m(i, j) != 0) return false;
      return true;
    }
    done[p] = true;
    for (size_t j = 0; j < n; ++j) {
      if (done[j] || m(j, p) == 0) continue;
      Rational f = m(j, p) / m(p, p);
      for (size_t k = 0; k < n; ++k)
        if (!done[k]) m(j, k) -= f * m(p, k);
    }
  }
  return true;
}

}  // namespace vorbloch
