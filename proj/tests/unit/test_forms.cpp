#include <doctest.h>

#include "oracles.hpp"
#include "vorbloch/forms.hpp"
#include "vorbloch/lattice.hpp"

using namespace vorbloch;

namespace {

RatMat to_ratmat(const oracle::QMat& a) {
  RatMat m(a.size(), a.size());
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < a.size(); ++j) m(i, j) = a[i][j];
  return m;
}

}  // namespace

TEST_CASE("fincke-pohst agrees with box enumeration") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 60; ++t) {
    size_t n = 1 + t % 4;
    auto a = oracle::random_pd_form(rng, n);
    Rational c = a[0][0] * Rational(1 + t % 3, 1);
    for (size_t i = 1; i < n; ++i) c = std::min(c, Rational(a[i][i] * (1 + t % 3)));
    CHECK(fincke_pohst(to_ratmat(a), c) == oracle::short_vectors_box(a, c));
  }
}

TEST_CASE("minimum of A2 and D4") {
  RatMat a2 = RatMat::from_rows({{2, -1}, {-1, 2}});
  auto md = minimum(a2);
  CHECK(md.min == 2);
  CHECK(md.vectors.size() == 3);
  RatMat d4 = RatMat::from_rows({{2, -1, 0, 0}, {-1, 2, -1, -1}, {0, -1, 2, 0}, {0, -1, 0, 2}});
  CHECK(minimum(d4).vectors.size() == 12);
  CHECK_THROWS_AS(fincke_pohst(RatMat::from_rows({{1, 2}, {2, 1}}), Rational(1)), std::invalid_argument);
  CHECK_FALSE(is_positive_definite(RatMat::from_rows({{1, 1}, {1, 1}})));
}

TEST_CASE("trace form of the hermitian identity") {
  auto F = NumberField::create(Poly{1, 0, 1});
  RatMat t = trace_form(F, hermitian_identity(F, 2));
  CHECK(t.rows == 4);
  CHECK(is_positive_definite(t));
  IntVec e0{1, 0, 0, 0};
  CHECK(quad_value(t, e0) == 2);
}

TEST_CASE("hermitian subspace dimensions") {
  CHECK(t_subspace(NumberField::create(Poly{1, 0, 1}), 2).dim() == 4);
  CHECK(t_subspace(NumberField::create(Poly{1, 1, 1}), 2).dim() == 4);
  std::vector<RatPoly> basis{{1}, {0, 1}, {0, 0, 1}, {0, 0, 0, 1}};
  CHECK(t_subspace(NumberField::create(Poly{1, 1, 1, 1, 1}, basis), 2).dim() == 8);
  CHECK(t_subspace(NumberField::rationals(), 3).dim() == 6);
  CHECK_THROWS_AS(t_subspace(NumberField::create(Poly{-2, 0, 0, 1}), 2), std::domain_error);
}

TEST_CASE("coordinates round trip through span T") {
  auto F = NumberField::create(Poly{1, 1, 1});
  auto T = t_subspace(F, 2);
  RatMat q = trace_form(F, hermitian_identity(F, 2));
  auto c = t_coords(T, q);
  REQUIRE(c.has_value());
  CHECK(t_matrix(T, *c) == q);
  RatMat off = RatMat::identity(4);
  off(0, 1) = off(1, 0) = 1;
  CHECK_FALSE(t_coords(T, off).has_value());
}

TEST_CASE("perfectness") {
  auto Q = NumberField::rationals();
  CHECK(is_perfect(t_subspace(Q, 2), RatMat::from_rows({{1, Rational(-1, 2)}, {Rational(-1, 2), 1}})));
  CHECK_FALSE(is_perfect(t_subspace(Q, 2), RatMat::identity(2)));
}
