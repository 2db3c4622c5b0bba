#include "vorbloch/snf.hpp"

#include <utility>

namespace vorbloch {

namespace {

void swap_rows(IntMat& a, size_t i, size_t j) {
  for (size_t c = 0; c < a.cols; ++c) std::swap(a(i, c), a(j, c));
}

void swap_cols(IntMat& a, size_t i, size_t j) {
  for (size_t r = 0; r < a.rows; ++r) std::swap(a(r, i), a(r, j));
}

// row_i += f * row_j
void add_row(IntMat& a, size_t i, size_t j, const Integer& f) {
  for (size_t c = 0; c < a.cols; ++c)
    if (a(j, c) != 0) a(i, c) += f * a(j, c);
}

void add_col(IntMat& a, size_t i, size_t j, const Integer& f) {
  for (size_t r = 0; r < a.rows; ++r)
    if (a(r, j) != 0) a(r, i) += f * a(r, j);
}

Integer fdiv(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

SNFResult smith_normal_form(const IntMat& M) {
  SNFResult r;
  IntMat A = M;
  size_t m = A.rows, n = A.cols;
  r.U = IntMat::identity(m);
  r.V = IntMat::identity(n);
  for (size_t t = 0; t < std::min(m, n); ++t) {
    while (true) {
      // smallest nonzero entry in the trailing block
      size_t pi = m, pj = n;
      for (size_t i = t; i < m; ++i)
        for (size_t j = t; j < n; ++j)
          if (A(i, j) != 0 && (pi == m || abs(A(i, j)) < abs(A(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi == m) break;
      if (pi != t) {
        swap_rows(A, pi, t);
        swap_rows(r.U, pi, t);
      }
      if (pj != t) {
        swap_cols(A, pj, t);
        swap_cols(r.V, pj, t);
      }
      bool clean = true;
      for (size_t i = t + 1; i < m; ++i) {
        if (A(i, t) == 0) continue;
        Integer q = fdiv(A(i, t), A(t, t));
        add_row(A, i, t, -q);
        add_row(r.U, i, t, -q);
        if (A(i, t) != 0) clean = false;
      }
      for (size_t j = t + 1; j < n; ++j) {
        if (A(t, j) == 0) continue;
        Integer q = fdiv(A(t, j), A(t, t));
        add_col(A, j, t, -q);
        add_col(r.V, j, t, -q);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;
      // divisibility of the trailing block
      bool divides = true;
      for (size_t i = t + 1; i < m && divides; ++i)
        for (size_t j = t + 1; j < n; ++j)
          if (A(i, j) % A(t, t) != 0) {
            add_row(A, t, i, Integer(1));
            add_row(r.U, t, i, Integer(1));
            divides = false;
            break;
          }
      if (divides) break;
    }
    if (A(t, t) == 0) break;
    if (A(t, t) < 0) {
      for (size_t c = 0; c < n; ++c) A(t, c) = -A(t, c);
      for (size_t c = 0; c < m; ++c) r.U(t, c) = -r.U(t, c);
    }
    r.factors.push_back(A(t, t));
  }
  r.D = A;
  return r;
}

HomologyGroup homology_at(size_t dim_k, const IntMat& d_k, const IntMat& d_k1) {
  HomologyGroup h;
  size_t rk = d_k.rows && d_k.cols ? smith_normal_form(d_k).rank() : 0;
  SNFResult s1;
  size_t rk1 = 0;
  if (d_k1.rows && d_k1.cols) {
    s1 = smith_normal_form(d_k1);
    rk1 = s1.rank();
    for (const auto& f : s1.factors)
      if (f > 1) h.torsion.push_back(f);
  }
  h.betti = dim_k - rk - rk1;
  return h;
}

std::vector<IntVec> integer_kernel(const IntMat& M) {
  std::vector<IntVec> out;
  if (M.cols == 0) return out;
  if (M.rows == 0) {
    for (size_t j = 0; j < M.cols; ++j) {
      IntVec e(M.cols, Integer(0));
      e[j] = 1;
      out.push_back(e);
    }
    return out;
  }
  SNFResult s = smith_normal_form(M);
  for (size_t j = s.rank(); j < M.cols; ++j) out.push_back(s.V.col(j));
  return out;
}

}  // namespace vorbloch
