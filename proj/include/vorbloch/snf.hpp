#pragma once

#include <vector>

#include "vorbloch/linalg.hpp"

namespace vorbloch {

// U * M * V = D with U, V unimodular and D = diag(s_1, ..., s_r, 0, ...), s_i | s_{i+1}, s_i > 0.
struct SNFResult {
  IntMat U, V, D;
  std::vector<Integer> factors;  // s_1..s_r
  size_t rank() const { return factors.size(); }
};

SNFResult smith_normal_form(const IntMat& M);

struct HomologyGroup {
  size_t betti = 0;
  std::vector<Integer> torsion;  // invariant factors > 1
};

// H_k for C_k with d_k : C_k -> C_{k-1} (rows C_{k-1}) and d_{k+1} : C_{k+1} -> C_k.
HomologyGroup homology_at(size_t dim_k, const IntMat& d_k, const IntMat& d_k1);
// Z-basis of the kernel of M (columns of V beyond the rank).
std::vector<IntVec> integer_kernel(const IntMat& M);

}  // namespace vorbloch
