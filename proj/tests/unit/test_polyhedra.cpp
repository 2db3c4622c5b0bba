#include <doctest.h>

#include "oracles.hpp"
#include "vorbloch/cell_complex.hpp"
#include "vorbloch/polyhedra.hpp"

using namespace vorbloch;

namespace {

Integer det_rows(const std::vector<IntVec>& rows) { return oracle::det(rows); }

// Triangulates the homogenized polytope and returns the determinants of its simplices.
std::vector<Integer> simplex_dets(const HRep& h) {
  VRep v = dd_convert(h);
  std::vector<int> order(v.rays.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
  std::vector<Integer> out;
  for (const auto& s : pulling_triangulation(v, h, order)) {
    std::vector<IntVec> rows;
    for (int i : s) rows.push_back(v.rays[i]);
    out.push_back(det_rows(rows));
  }
  return out;
}

}  // namespace

TEST_CASE("double description agrees with subset enumeration") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 40; ++t) {
    int d = 2 + t % 3;
    auto rows = oracle::random_pointed_cone(rng, d);
    HRep h{d, rows, {}};
    VRep v = dd_convert(h);
    CHECK(v.lineality.empty());
    CHECK(v.rays == oracle::extreme_rays_subsets(rows, d));
    CHECK(dd_convert(h, Adjacency::Rank).rays == v.rays);
  }
}

TEST_CASE("square cone") {
  HRep h{3, {{0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}}, {}};
  VRep v = dd_convert(h);
  CHECK(v.rays.size() == 4);
  CHECK(vrep_faces(v, h, 1).size() == 4);
  CHECK(vrep_faces(v, h, 2).size() == 4);
  CHECK(vrep_faces(v, h, 3).size() == 1);
  CHECK_THROWS_AS(vrep_faces(v, h, 4), std::out_of_range);
}

TEST_CASE("lineality of a half space") {
  HRep h{3, {{1, 0, 0}}, {}};
  VRep v = dd_convert(h);
  CHECK(v.lineality.size() == 2);
  CHECK(v.rays.size() == 1);
}

TEST_CASE("pulling triangulation of a prism") {
  // 0 <= x, y; x + y <= 1; 0 <= z <= 1
  HRep h{4, {{0, 1, 0, 0}, {0, 0, 1, 0}, {1, -1, -1, 0}, {0, 0, 0, 1}, {1, 0, 0, -1}}, {}};
  auto dets = simplex_dets(h);
  CHECK(dets.size() == 3);
  Integer vol = 0;
  for (const auto& x : dets) {
    CHECK(x != 0);
    CHECK(sgn(x) == sgn(dets[0]));
    vol += abs(x);
  }
  CHECK(vol == 3);
}

TEST_CASE("pulling triangulation of a square pyramid") {
  // 0 <= x, y, z; x + z <= 1; y + z <= 1
  HRep h{4, {{0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}, {1, -1, 0, -1}, {1, 0, -1, -1}}, {}};
  auto dets = simplex_dets(h);
  CHECK(dets.size() == 2);
  Integer vol = 0;
  for (const auto& x : dets) vol += abs(x);
  CHECK(vol == 2);
}

TEST_CASE("bitset") {
  Bits a(100), b(100);
  a.set(3);
  a.set(70);
  b.set(70);
  CHECK(a.count() == 2);
  CHECK(b.subset_of(a));
  CHECK_FALSE(a.subset_of(b));
  CHECK((a & b) == b);
}
