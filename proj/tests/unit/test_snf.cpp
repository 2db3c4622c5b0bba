#include <doctest.h>

#include "oracles.hpp"
#include "vorbloch/snf.hpp"

using namespace vorbloch;

namespace {

IntMat random_matrix(std::mt19937_64& rng, size_t r, size_t c, int bound) {
  std::uniform_int_distribution<int> e(-bound, bound);
  IntMat m(r, c);
  for (auto& x : m.a) x = e(rng);
  return m;
}

oracle::ZMat rows_of(const IntMat& m) {
  oracle::ZMat out(m.rows);
  for (size_t i = 0; i < m.rows; ++i) out[i] = m.row(i);
  return out;
}

}  // namespace

TEST_CASE("smith normal form agrees with determinantal divisors") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 150; ++t) {
    size_t r = 1 + t % 5, c = 1 + (t / 5) % 5;
    IntMat m = random_matrix(rng, r, c, t % 3 == 0 ? 2 : 20);
    SNFResult s = smith_normal_form(m);
    CHECK(s.factors == oracle::invariant_factors_minors(rows_of(m)));
    CHECK(s.U * m * s.V == s.D);
    CHECK(abs(oracle::det(rows_of(s.U))) == 1);
    CHECK(abs(oracle::det(rows_of(s.V))) == 1);
  }
}

TEST_CASE("zero and rank deficient matrices") {
  IntMat z(3, 2);
  CHECK(smith_normal_form(z).rank() == 0);
  IntMat m = IntMat::from_rows({{2, 4}, {4, 8}});
  auto s = smith_normal_form(m);
  CHECK(s.factors == std::vector<Integer>{2});
  auto k = integer_kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(m * k[0] == IntVec{0, 0});
}

TEST_CASE("homology of a circle and of the projective plane") {
  // circle: two vertices, two edges
  IntMat d1 = IntMat::from_rows({{-1, 1}, {1, -1}});
  IntMat none(2, 0);
  auto h1 = homology_at(2, d1, none);
  CHECK(h1.betti == 1);
  CHECK(h1.torsion.empty());
  IntMat d0(0, 2);
  CHECK(homology_at(2, d0, d1).betti == 1);
  // RP^2 cellular: one cell per dimension, d1 = 0, d2 = 2
  IntMat e1 = IntMat::from_rows({{0}});
  IntMat e2 = IntMat::from_rows({{2}});
  auto h = homology_at(1, e1, e2);
  CHECK(h.betti == 0);
  CHECK(h.torsion == std::vector<Integer>{2});
}
