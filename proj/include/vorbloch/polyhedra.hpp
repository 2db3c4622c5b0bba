#pragma once

#include <cstdint>
#include <vector>

#include "vorbloch/rational.hpp"

namespace vorbloch {

// Cone {x : a.x >= 0 for a in ineq, a.x = 0 for a in eq}.
struct HRep {
  int d = 0;
  std::vector<IntVec> ineq, eq;
};

struct VRep {
  int d = 0;
  std::vector<IntVec> rays;       // primitive, lexicographically sorted, orthogonal to the lineality space
  std::vector<IntVec> lineality;  // basis
};

struct DDStats {
  size_t max_intermediate = 0;
  double seconds = 0;
};

enum class Adjacency { Combinatorial, Rank };

VRep dd_convert(const HRep& h, Adjacency test = Adjacency::Combinatorial, DDStats* stats = nullptr);
// All k-dimensional faces as sorted ray-index sets; throws std::out_of_range unless 0 <= k <= d.
std::vector<std::vector<int>> vrep_faces(const VRep& v, const HRep& h, int k);
std::vector<IntVec> linearity_space(const HRep& h);

// Small dynamic bitset used for tight-constraint sets.
class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t n) : w_((n + 63) / 64, 0) {}
  void set(size_t i) { w_[i / 64] |= uint64_t(1) << (i % 64); }
  bool test(size_t i) const { return w_[i / 64] >> (i % 64) & 1; }
  size_t count() const;
  Bits operator&(const Bits& o) const;
  bool subset_of(const Bits& o) const;
  bool operator==(const Bits& o) const { return w_ == o.w_; }
  bool operator<(const Bits& o) const { return w_ < o.w_; }
  void resize(size_t n) { w_.resize((n + 63) / 64, 0); }

 private:
  std::vector<uint64_t> w_;
};

}  // namespace vorbloch
