#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>
#include <vector>

// Oracles written against plain GMP types only; none of them calls into the library.
namespace oracle {

using Z = mpz_class;
using Q = mpq_class;
using ZMat = std::vector<std::vector<Z>>;
using QMat = std::vector<std::vector<Q>>;

// Bareiss fraction-free determinant.
inline Z det(ZMat a) {
  size_t n = a.size();
  if (n == 0) return 1;
  Z prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && a[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

inline Q det(const QMat& a) {
  size_t n = a.size();
  QMat m = a;
  Q d = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && m[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(m[p], m[c]);
      d = -d;
    }
    d *= m[c][c];
    for (size_t i = c + 1; i < n; ++i) {
      Q f = m[i][c] / m[c][c];
      for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return d;
}

// Sylvester's criterion.
inline bool positive_definite(const QMat& a) {
  for (size_t k = 1; k <= a.size(); ++k) {
    QMat s(k, std::vector<Q>(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t j = 0; j < k; ++j) s[i][j] = a[i][j];
    if (det(s) <= 0) return false;
  }
  return true;
}

inline QMat inverse(const QMat& a) {
  size_t n = a.size();
  QMat m = a, inv(n, std::vector<Q>(n, 0));
  for (size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (m[p][c] == 0) ++p;
    std::swap(m[p], m[c]);
    std::swap(inv[p], inv[c]);
    Q piv = m[c][c];
    for (size_t j = 0; j < n; ++j) {
      m[c][j] /= piv;
      inv[c][j] /= piv;
    }
    for (size_t i = 0; i < n; ++i) {
      if (i == c || m[i][c] == 0) continue;
      Q f = m[i][c];
      for (size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

inline Q eval(const QMat& a, const std::vector<Z>& x) {
  Q s = 0;
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) s += a[i][j] * Q(x[i]) * Q(x[j]);
  return s;
}

// Nonzero x with a[x] <= c, first nonzero coordinate positive, sorted; box |x_i|^2 <= c (a^-1)_ii.
inline std::vector<std::vector<Z>> short_vectors_box(const QMat& a, const Q& c) {
  size_t n = a.size();
  QMat inv = inverse(a);
  std::vector<long> r(n);
  for (size_t i = 0; i < n; ++i) {
    Q b = c * inv[i][i];
    long k = 0;
    while (Q((k + 1) * (k + 1)) <= b) ++k;
    r[i] = k;
  }
  std::vector<std::vector<Z>> out;
  std::vector<Z> x(n);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == n) {
      size_t f = 0;
      while (f < n && x[f] == 0) ++f;
      if (f == n || x[f] < 0) return;
      if (eval(a, x) <= c) out.push_back(x);
      return;
    }
    for (long v = -r[i]; v <= r[i]; ++v) {
      x[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<Z> primitive(std::vector<Z> v) {
  Z g = 0;
  for (const auto& x : v) g = gcd(g, x);
  if (g > 1)
    for (auto& x : v) x /= g;
  return v;
}

// Extreme rays of the pointed cone {x : a.x >= 0}: cofactor vectors of (d-1)-subsets of rows.
inline std::vector<std::vector<Z>> extreme_rays_subsets(const std::vector<std::vector<Z>>& rows, int d) {
  std::set<std::vector<Z>> rays;
  size_t m = rows.size();
  std::vector<size_t> pick;
  std::function<void(size_t)> rec = [&](size_t start) {
    if (static_cast<int>(pick.size()) == d - 1) {
      std::vector<Z> v(d);
      bool nz = false;
      for (int j = 0; j < d; ++j) {
        ZMat minor;
        for (size_t r : pick) {
          std::vector<Z> row;
          for (int c = 0; c < d; ++c)
            if (c != j) row.push_back(rows[r][c]);
          minor.push_back(row);
        }
        v[j] = ((j % 2) ? -1 : 1) * det(minor);
        nz = nz || v[j] != 0;
      }
      if (!nz) return;
      for (int s : {1, -1}) {
        std::vector<Z> w = v;
        for (auto& x : w) x *= s;
        bool ok = true;
        for (const auto& a : rows) {
          Z t = 0;
          for (int c = 0; c < d; ++c) t += a[c] * w[c];
          if (t < 0) ok = false;
        }
        if (ok) rays.insert(primitive(w));
      }
      return;
    }
    for (size_t i = start; i < m; ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return {rays.begin(), rays.end()};
}

// Invariant factors from determinantal divisors (gcd of k x k minors).
inline std::vector<Z> invariant_factors_minors(const ZMat& a) {
  size_t r = a.size(), c = r ? a[0].size() : 0;
  std::vector<Z> dk{1};
  for (size_t k = 1; k <= std::min(r, c); ++k) {
    Z g = 0;
    std::vector<size_t> rs, cs;
    std::function<void(size_t)> pick_cols = [&](size_t s) {
      if (cs.size() == k) {
        ZMat m(k, std::vector<Z>(k));
        for (size_t i = 0; i < k; ++i)
          for (size_t j = 0; j < k; ++j) m[i][j] = a[rs[i]][cs[j]];
        g = gcd(g, det(m));
        return;
      }
      for (size_t j = s; j < c; ++j) {
        cs.push_back(j);
        pick_cols(j + 1);
        cs.pop_back();
      }
    };
    std::function<void(size_t)> pick_rows = [&](size_t s) {
      if (rs.size() == k) return pick_cols(0);
      for (size_t i = s; i < r; ++i) {
        rs.push_back(i);
        pick_rows(i + 1);
        rs.pop_back();
      }
    };
    pick_rows(0);
    if (g == 0) break;
    dk.push_back(g);
  }
  std::vector<Z> s;
  for (size_t k = 1; k < dk.size(); ++k) s.push_back(dk[k] / dk[k - 1]);
  return s;
}

// Catalan's constant from the alternating series, averaging consecutive partial sums.
inline long double catalan_series(long terms = 400000) {
  long double s = 0, prev = 0;
  for (long k = 0; k < terms; ++k) {
    prev = s;
    long double t = 1.0L / ((2.0L * k + 1) * (2.0L * k + 1));
    s += (k % 2) ? -t : t;
  }
  return (s + prev) / 2;
}

// L(2, chi_{-3}) = sum 1/(3k+1)^2 - 1/(3k+2)^2.
inline long double l2_chi3(long terms = 2000000) {
  long double s = 0;
  for (long k = terms - 1; k >= 0; --k) s += 1.0L / ((3.0L * k + 1) * (3.0L * k + 1)) - 1.0L / ((3.0L * k + 2) * (3.0L * k + 2));
  return s;
}

// Random positive definite symmetric form, entries p/q with |p| <= 10 and q in {1, 2, 3}.
template <class Rng>
QMat random_pd_form(Rng& rng, size_t n) {
  std::uniform_int_distribution<int> num(-10, 10), den(1, 3), diag(1, 10);
  for (;;) {
    QMat a(n, std::vector<Q>(n));
    for (size_t i = 0; i < n; ++i) {
      a[i][i] = Q(diag(rng), den(rng));
      for (size_t j = i + 1; j < n; ++j) a[i][j] = a[j][i] = Q(num(rng), den(rng));
    }
    for (auto& r : a)
      for (auto& x : r) x.canonicalize();
    if (positive_definite(a)) return a;
  }
}

// Random pointed cone {x : a.x >= 0} with d <= 4 and at most 10 constraints.
template <class Rng>
std::vector<std::vector<Z>> random_pointed_cone(Rng& rng, int d) {
  std::uniform_int_distribution<int> c(-3, 3), count(d, 10);
  for (;;) {
    int m = count(rng);
    std::vector<std::vector<Z>> rows(m, std::vector<Z>(d));
    for (auto& r : rows)
      for (auto& x : r) x = c(rng);
    // full column rank: some d x d minor is nonzero
    bool full = false;
    std::vector<size_t> pick;
    std::function<void(size_t)> rec = [&](size_t s) {
      if (full) return;
      if (static_cast<int>(pick.size()) == d) {
        ZMat mm;
        for (size_t i : pick) mm.push_back(rows[i]);
        full = det(mm) != 0;
        return;
      }
      for (size_t i = s; i < rows.size(); ++i) {
        pick.push_back(i);
        rec(i + 1);
        pick.pop_back();
      }
    };
    rec(0);
    if (full) return rows;
  }
}

}  // namespace oracle
