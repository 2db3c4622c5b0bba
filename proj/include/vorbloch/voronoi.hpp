#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorbloch/forms.hpp"
#include "vorbloch/lattice.hpp"

namespace vorbloch {

struct PerfectClass {
  RatMat rep;  // minimum 1
  RatVec coords;  // coordinates in T
  MinData min_data;
  std::string key;
  int parent = -1, parent_ray = -1;
  std::vector<IntVec> rays;  // extreme rays of P_T(rep), T-coordinates
  std::vector<int> dead_ends;
  bool processed = false;
};

struct VoronoiEdge {
  int from = 0, to = 0, ray = 0;
  Rational rho;
};

struct VoronoiGraph {
  std::vector<PerfectClass> classes;
  std::vector<VoronoiEdge> edges;
  bool complete = false;
  std::vector<std::string> anomalies;
  double dd_seconds = 0, seconds = 0;
};

struct EnumOptions {
  size_t budget = 1000;        // class-count limit
  bool reverse_rays = false;   // second traversal order
  size_t equiv_budget = 5000000;
};

RatMat first_perfect_form(int m);
// |Min|, det and the multiset of |inner products| between minimal vectors.
std::string invariant_key(const RatMat& q, const MinData& md);
RatMat normalized(const RatMat& q, const Rational& min);

// Smallest rho > 0 with min(A + rho R) = min(A) and Min(A + rho R) not inside Min(A).
// Throws std::domain_error for a positive semidefinite R (dead end).
Rational neighbor_rho(const RatMat& A, const RatMat& R, const MinData& minA);
Rational neighbor_rho(const RatMat& A, const RatMat& R);

RatMat initial_t_perfect(const TSubspace& T, const RatMat& Q0, size_t step_guard = 1000);

enum class EquivGroup { GL, SL };
struct EquivResult {
  enum Status { Equivalent, NotEquivalent, BudgetExhausted } status = NotEquivalent;
  FMatrix U;  // m x m over O_F with U* A U = B
  RatMat Z;   // its action on coordinates: Z^T A Z = B
  std::string reason;
};
EquivResult equivalence_test(const NumberField& F, const TSubspace& T, const RatMat& A, const RatMat& B, EquivGroup g,
                             size_t budget = 5000000);

VoronoiGraph enumerate_perfect(const NumberField& F, const TSubspace& T, const RatMat& A0, const EnumOptions& opt,
                               const VoronoiGraph* resume = nullptr);

// Shared by the traversal and the cell complex: P_T(A) as a cone in T-coordinates.
std::vector<IntVec> min_functionals(const TSubspace& T, const MinData& md);

}  // namespace vorbloch
