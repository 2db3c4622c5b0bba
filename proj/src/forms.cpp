#include "vorbloch/forms.hpp"

#include <stdexcept>

#include "vorbloch/lattice.hpp"

namespace vorbloch {

bool HermitianForm::is_hermitian() const {
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      if (at(i, j).conj() != at(j, i)) return false;
  return true;
}

HermitianForm hermitian_identity(const NumberField& F, int m) {
  HermitianForm h{m, std::vector<FieldElement>(m * m, F.zero())};
  for (int i = 0; i < m; ++i) h.at(i, i) = F.one();
  return h;
}

HermitianForm q_map(const NumberField& F, const std::vector<FieldElement>& v) {
  bool zero = true;
  for (const auto& x : v) zero = zero && x.is_zero();
  if (v.empty() || zero) throw std::invalid_argument("q(v) needs a nonzero vector");
  int m = static_cast<int>(v.size());
  HermitianForm h{m, std::vector<FieldElement>(m * m, F.zero())};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) h.at(i, j) = v[i] * v[j].conj();
  return h;
}

RatMat trace_form(const NumberField& F, const HermitianForm& A) {
  int n = F.degree(), m = A.m, N = m * n;
  std::vector<FieldElement> b, bc;
  for (int j = 0; j < n; ++j) {
    b.push_back(F.basis_element(j));
    bc.push_back(b.back().conj());
  }
  RatMat g(N, N);
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (A.at(i, k).is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        FieldElement left = bc[j] * A.at(i, k);
        for (int l = 0; l < n; ++l) g(i * n + j, k * n + l) = (left * b[l]).trace();
      }
    }
  return g;
}

IntVec vector_coords(const std::vector<FieldElement>& v) {
  IntVec x;
  for (const auto& e : v)
    for (const auto& c : e.coords()) {
      if (c.get_den() != 1) throw std::invalid_argument("vector is not integral");
      x.push_back(c.get_num());
    }
  return x;
}

std::vector<FieldElement> vector_from_coords(const NumberField& F, int m, const IntVec& x) {
  int n = F.degree();
  std::vector<FieldElement> v;
  for (int i = 0; i < m; ++i) v.push_back(F.from_coords(IntVec(x.begin() + i * n, x.begin() + (i + 1) * n)));
  return v;
}

TSubspace t_subspace(const NumberField& F, int m) {
  if (F.kind() == FieldKind::Other) throw std::domain_error("T-subspace needs a totally real or CM field");
  int n = F.degree();
  TSubspace T;
  T.m = m;
  T.n = n;
  T.N = m * n;
  // basis of the fixed field of the involution
  RatMat fix = axpy(F.data().conj, Rational(-1), RatMat::identity(n));
  auto real_basis = kernel(fix);
  for (int i = 0; i < m; ++i)
    for (int k = i; k < m; ++k) {
      if (i == k) {
        for (const auto& c : real_basis) {
          HermitianForm h{m, std::vector<FieldElement>(m * m, F.zero())};
          h.at(i, i) = F.from_coords(c);
          T.herm.push_back(h);
        }
      } else {
        for (int j = 0; j < n; ++j) {
          HermitianForm h{m, std::vector<FieldElement>(m * m, F.zero())};
          h.at(i, k) = F.basis_element(j);
          h.at(k, i) = F.basis_element(j).conj();
          T.herm.push_back(h);
        }
      }
    }
  for (const auto& h : T.herm) T.basis.push_back(trace_form(F, h));
  // choose pivot entries so that coordinates can be read off a matrix in span T
  std::vector<std::pair<int, int>> entries;
  for (int r = 0; r < T.N; ++r)
    for (int c = r; c < T.N; ++c) entries.emplace_back(r, c);
  std::vector<RatVec> rows;
  for (auto [r, c] : entries) {
    RatVec row;
    for (const auto& b : T.basis) row.push_back(b(r, c));
    rows.push_back(row);
  }
  auto idx = independent_subset(rows);
  if (static_cast<int>(idx.size()) != T.dim()) throw std::logic_error("T basis is not independent");
  RatMat sq(T.dim(), T.dim());
  for (int i = 0; i < T.dim(); ++i) {
    T.pivots.push_back(entries[idx[i]]);
    for (int k = 0; k < T.dim(); ++k) sq(i, k) = rows[idx[i]][k];
  }
  T.solver = *inverse(sq);
  return T;
}

std::optional<RatVec> t_coords(const TSubspace& T, const RatMat& q) {
  RatVec e;
  for (auto [r, c] : T.pivots) e.push_back(q(r, c));
  RatVec x = T.solver * e;
  if (!(t_matrix(T, x) == q)) return std::nullopt;
  return x;
}

RatMat t_matrix(const TSubspace& T, const RatVec& coords) {
  RatMat q(T.N, T.N);
  for (int k = 0; k < T.dim(); ++k)
    if (coords[k] != 0) q = axpy(q, coords[k], T.basis[k]);
  return q;
}

HermitianForm t_hermitian(const NumberField& F, const TSubspace& T, const RatVec& coords) {
  HermitianForm h{T.m, std::vector<FieldElement>(T.m * T.m, F.zero())};
  for (int k = 0; k < T.dim(); ++k)
    if (coords[k] != 0)
      for (int i = 0; i < T.m * T.m; ++i) h.a[i] += T.herm[k].a[i] * coords[k];
  return h;
}

RatVec t_functional(const TSubspace& T, const IntVec& x) {
  RatVec f;
  for (const auto& b : T.basis) f.push_back(quad_value(b, x));
  return f;
}

bool is_perfect(const TSubspace& T, const RatMat& q) {
  if (!t_coords(T, q)) throw std::invalid_argument("form is not in span T");
  std::vector<RatVec> rows;
  for (const auto& v : minimum(q).vectors) rows.push_back(t_functional(T, v));
  return static_cast<int>(rank(rows)) == T.dim();
}

}  // namespace vorbloch

namespace vorbloch {

FieldElement herm_value(const HermitianForm& A, const std::vector<FieldElement>& x, const std::vector<FieldElement>& y) {
  FieldElement acc = A.a[0] * Rational(0);
  for (int i = 0; i < A.m; ++i) {
    if (x[i].is_zero()) continue;
    FieldElement row = acc * Rational(0);
    for (int j = 0; j < A.m; ++j)
      if (!y[j].is_zero() && !A.at(i, j).is_zero()) row += A.at(i, j) * y[j];
    acc += x[i].conj() * row;
  }
  return acc;
}

FieldElement f_det(const NumberField& F, FMatrix a, int m) {
  FieldElement d = F.one();
  for (int c = 0; c < m; ++c) {
    int p = -1;
    for (int r = c; r < m; ++r)
      if (!a[r * m + c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return F.zero();
    if (p != c) {
      for (int k = 0; k < m; ++k) std::swap(a[p * m + k], a[c * m + k]);
      d = -d;
    }
    d *= a[c * m + c];
    FieldElement inv = a[c * m + c].inverse();
    for (int r = c + 1; r < m; ++r) {
      if (a[r * m + c].is_zero()) continue;
      FieldElement f = a[r * m + c] * inv;
      for (int k = c; k < m; ++k) a[r * m + k] -= f * a[c * m + k];
    }
  }
  return d;
}

std::optional<FMatrix> f_inverse(const NumberField& F, FMatrix a, int m) {
  FMatrix b(m * m, F.zero());
  for (int i = 0; i < m; ++i) b[i * m + i] = F.one();
  for (int c = 0; c < m; ++c) {
    int p = -1;
    for (int r = c; r < m; ++r)
      if (!a[r * m + c].is_zero()) {
        p = r;
        break;
      }
    if (p < 0) return std::nullopt;
    for (int k = 0; k < m; ++k) {
      std::swap(a[p * m + k], a[c * m + k]);
      std::swap(b[p * m + k], b[c * m + k]);
    }
    FieldElement inv = a[c * m + c].inverse();
    for (int k = 0; k < m; ++k) {
      a[c * m + k] *= inv;
      b[c * m + k] *= inv;
    }
    for (int r = 0; r < m; ++r) {
      if (r == c || a[r * m + c].is_zero()) continue;
      FieldElement f = a[r * m + c];
      for (int k = 0; k < m; ++k) {
        a[r * m + k] -= f * a[c * m + k];
        b[r * m + k] -= f * b[c * m + k];
      }
    }
  }
  return b;
}

FMatrix f_mul(const NumberField& F, const FMatrix& a, const FMatrix& b, int m) {
  FMatrix c(m * m, F.zero());
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (a[i * m + k].is_zero()) continue;
      for (int j = 0; j < m; ++j) c[i * m + j] += a[i * m + k] * b[k * m + j];
    }
  return c;
}

FMatrix f_adjoint(const FMatrix& a, int m) {
  FMatrix c(a.size());
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) c[i * m + j] = a[j * m + i].conj();
  return c;
}

RatMat z_action(const NumberField& F, const FMatrix& u, int m) {
  int n = F.degree(), N = m * n;
  RatMat z(N, N);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < n; ++l) {
      FieldElement bl = F.basis_element(l);
      for (int i = 0; i < m; ++i) {
        FieldElement e = u[i * m + k] * bl;
        for (int j = 0; j < n; ++j) z(i * n + j, k * n + l) = e.coords()[j];
      }
    }
  return z;
}

std::vector<size_t> f_independent(const NumberField& F, const std::vector<std::vector<FieldElement>>& vecs) {
  std::vector<std::vector<FieldElement>> basis;  // echelon rows
  std::vector<int> lead;
  std::vector<size_t> idx;
  for (size_t t = 0; t < vecs.size(); ++t) {
    std::vector<FieldElement> v = vecs[t];
    for (size_t b = 0; b < basis.size(); ++b) {
      int c = lead[b];
      if (v[c].is_zero()) continue;
      FieldElement f = v[c];
      for (size_t k = 0; k < v.size(); ++k) v[k] -= f * basis[b][k];
    }
    int c = -1;
    for (size_t k = 0; k < v.size(); ++k)
      if (!v[k].is_zero()) {
        c = static_cast<int>(k);
        break;
      }
    if (c < 0) continue;
    FieldElement inv = v[c].inverse();
    for (auto& x : v) x *= inv;
    basis.push_back(v);
    lead.push_back(c);
    idx.push_back(t);
  }
  (void)F;
  return idx;
}

}  // namespace vorbloch
