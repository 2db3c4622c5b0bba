#pragma once

#include <optional>
#include <vector>

#include "vorbloch/field.hpp"
#include "vorbloch/linalg.hpp"

namespace vorbloch {

// m x m matrix over F with A = A* (row-major).
struct HermitianForm {
  int m = 0;
  std::vector<FieldElement> a;
  FieldElement& at(int i, int j) { return a[i * m + j]; }
  const FieldElement& at(int i, int j) const { return a[i * m + j]; }
  bool is_hermitian() const;
};

HermitianForm hermitian_identity(const NumberField& F, int m);
// q(v) = v v*; throws std::invalid_argument on the zero vector.
HermitianForm q_map(const NumberField& F, const std::vector<FieldElement>& v);
// Gram matrix of x -> Tr(x* A x) on coordinates x_{i,j} (entry i, basis element j), index i*n+j.
RatMat trace_form(const NumberField& F, const HermitianForm& A);

// Coordinates of an O_F^m vector (length m*n) and back.
IntVec vector_coords(const std::vector<FieldElement>& v);
std::vector<FieldElement> vector_from_coords(const NumberField& F, int m, const IntVec& x);

// Image of Her_m(F) inside Sym_N(Q) under trace_form.
struct TSubspace {
  int m = 0, n = 0, N = 0;
  std::vector<RatMat> basis;
  std::vector<HermitianForm> herm;  // preimages of basis
  std::vector<std::pair<int, int>> pivots;  // entries (r,c) used to read coordinates
  RatMat solver;                            // coords = solver * entries at pivots
  int dim() const { return static_cast<int>(basis.size()); }
};

// Throws std::domain_error unless F is totally real or CM.
TSubspace t_subspace(const NumberField& F, int m);
std::optional<RatVec> t_coords(const TSubspace& T, const RatMat& q);
RatMat t_matrix(const TSubspace& T, const RatVec& coords);
HermitianForm t_hermitian(const NumberField& F, const TSubspace& T, const RatVec& coords);
// (T_k[x])_k: the functional Y -> Y[x] on T.
RatVec t_functional(const TSubspace& T, const IntVec& x);
// Rank of {t_functional(v) : v in Min(q)} equals dim T. Throws std::invalid_argument if q is not in span T.
bool is_perfect(const TSubspace& T, const RatMat& q);

// x* A y
FieldElement herm_value(const HermitianForm& A, const std::vector<FieldElement>& x, const std::vector<FieldElement>& y);

// Square matrices over F, row-major m x m.
using FMatrix = std::vector<FieldElement>;
FieldElement f_det(const NumberField& F, FMatrix a, int m);
std::optional<FMatrix> f_inverse(const NumberField& F, FMatrix a, int m);
FMatrix f_mul(const NumberField& F, const FMatrix& a, const FMatrix& b, int m);
FMatrix f_adjoint(const FMatrix& a, int m);  // conjugate transpose
// Z-linear action of U on O_F^m in coordinates (N x N integer matrix, column k*n+l = coords of U (b_l e_k)).
RatMat z_action(const NumberField& F, const FMatrix& u, int m);
// Indices of a maximal F-linearly independent subset, greedy.
std::vector<size_t> f_independent(const NumberField& F, const std::vector<std::vector<FieldElement>>& vecs);

}  // namespace vorbloch
