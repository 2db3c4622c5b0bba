#include <doctest.h>

#include <random>

#include "vorbloch/bloch.hpp"

using namespace vorbloch;

namespace {

using Pt = std::array<FieldElement, 2>;

FieldElement random_element(const NumberField& F, std::mt19937_64& rng, int bound = 6) {
  std::uniform_int_distribution<int> c(-bound, bound);
  IntVec v(F.degree());
  for (auto& x : v) x = c(rng);
  return F.from_coords(v);
}

FieldElement generic_element(const NumberField& F, std::mt19937_64& rng) {
  for (;;) {
    auto x = random_element(F, rng);
    if (!x.is_zero() && !x.is_one()) return x;
  }
}

PreBlochElement single(const FieldElement& x, long n = 1) {
  PreBlochElement e;
  e.add(x, n);
  return e;
}

}  // namespace

TEST_CASE("cr3 normalization, permutations and invariance") {
  auto F = NumberField::create(Poly{1, 0, 1});
  std::mt19937_64 rng(3);
  for (int t = 0; t < 30; ++t) {
    auto x = generic_element(F, rng);
    Pt a{F.one(), F.zero()}, b{F.zero(), F.one()}, c{F.one(), F.one()}, d{x, F.one()};
    auto v = cr3(std::array<Pt, 4>{a, b, c, d});
    REQUIRE(v.has_value());
    CHECK(*v == x);
    CHECK(*cr3(std::array<Pt, 4>{b, a, d, c}) == x);
    auto odd = *cr3(std::array<Pt, 4>{b, a, c, d});
    bool in_orbit = odd == F.one() - x || odd == x.inverse() || odd == (F.one() - x.inverse()).inverse();
    CHECK(in_orbit);
    FMatrix g;
    do {
      g = {random_element(F, rng, 3), random_element(F, rng, 3), random_element(F, rng, 3), random_element(F, rng, 3)};
    } while (f_det(F, g, 2).is_zero());
    auto apply = [&](const Pt& p) { return Pt{g[0] * p[0] + g[1] * p[1], g[2] * p[0] + g[3] * p[1]}; };
    CHECK(*cr3(std::array<Pt, 4>{apply(a), apply(b), apply(c), apply(d)}) == x);
    CHECK_FALSE(cr3(std::array<Pt, 4>{a, b, c, a}).has_value());
  }
}

TEST_CASE("cr2 normalization and alternation") {
  auto F = NumberField::create(Poly{1, 1, 1});
  std::mt19937_64 rng(4);
  auto x = generic_element(F, rng), y = generic_element(F, rng);
  Pt a{F.one(), F.zero()}, b{F.zero(), F.one()}, c{x, y};
  auto r = cr2(std::array<Pt, 3>{a, b, c});
  REQUIRE(r.has_value());
  CHECK(r->first == x);
  CHECK(r->second == y);
  WedgeSpace W(F);
  auto s = cr2(std::array<Pt, 3>{b, a, c});
  REQUIRE(s.has_value());
  WedgeElement sum = W.wedge(r->first, r->second);
  W.add(sum, W.wedge(s->first, s->second), 1);
  CHECK(sum.is_zero());
  CHECK_FALSE(cr2(std::array<Pt, 3>{a, a, c}).has_value());
}

TEST_CASE("delta2 of standard elements") {
  for (const Poly& p : {Poly{1, 0, 1}, Poly{1, 1, 1}, Poly{2, 1, 1}}) {
    auto F = NumberField::create(p);
    WedgeSpace W(F);
    std::mt19937_64 rng(9);
    for (int t = 0; t < 40; ++t) {
      auto x = generic_element(F, rng);
      PreBlochElement c = single(x);
      c.add(F.one() - x, 1);
      CHECK(delta2(W, c).is_zero());
      PreBlochElement angle = single(x);
      angle.add(x.inverse(), 1);
      CHECK(delta2(W, angle.scaled(2)).is_zero());
      auto y = generic_element(F, rng);
      try {
        CHECK(delta2(W, five_term(x, y)).is_zero());
      } catch (const std::invalid_argument&) {
      }
    }
    CHECK_THROWS_AS(five_term(F.from_int(2), F.from_int(2)), std::invalid_argument);
  }
}

TEST_CASE("a generic single term is not in the Bloch group") {
  auto F = NumberField::create(Poly{1, 0, 1});
  WedgeSpace W(F);
  auto x = F.from_coords(IntVec{2, 1});
  CHECK_FALSE(delta2(W, single(x)).is_zero());
  auto cert = verify_bloch(F, single(x));
  CHECK(cert.regime == "exact");
  CHECK_FALSE(cert.passed);
  CHECK_FALSE(cert.residue.is_zero());
  PreBlochElement c = single(x);
  c.add(F.one() - x, 1);
  CHECK(verify_bloch(F, c).passed);
}

TEST_CASE("pre-Bloch bookkeeping") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto x = F.from_int(3);
  PreBlochElement e = single(x, 2);
  e.add(x, -2);
  CHECK(e.terms.empty());
  e.add(x, 3);
  CHECK_FALSE(e.all_coefficients_even());
  CHECK(e.scaled(2).all_coefficients_even());
}

TEST_CASE("torsion generators") {
  auto gauss = NumberField::create(Poly{1, 0, 1});
  auto eis = NumberField::create(Poly{1, 1, 1});
  CHECK(torsion_generator(gauss, 2).order_B == 1);
  CHECK(torsion_generator(eis, 3).order_B == 1);
  auto t5 = torsion_generator(gauss, 5);
  CHECK(t5.nu_p == 0);
  CHECK(t5.order_hat == 1);
}

TEST_CASE("chain compatibility") {
  for (const Poly& p : {Poly{1, 0, 1}, Poly{1, 1, 1}}) {
    auto r = chain_compatibility_check(NumberField::create(p), 100, 17);
    CHECK(r.ok);
    CHECK(r.sign == 1);
    CHECK(r.tested > 0);
  }
}

TEST_CASE("bloch element of the gaussian cycle") {
  auto F = NumberField::create(Poly{1, 0, 1});
  TSubspace T = t_subspace(F, 2);
  auto g = enumerate_perfect(F, T, initial_t_perfect(T, trace_form(F, hermitian_identity(F, 2))), EnumOptions{});
  auto cx = build_complex(F, T, g);
  auto h = complex_homology(cx, 12);
  REQUIRE(h.h3.size() == 1);
  auto beta = bloch_from_cycle(F, cx, h.h3[0]);
  CHECK_FALSE(beta.terms.empty());
  CHECK(beta.all_coefficients_even());
  auto cert = verify_bloch(F, beta);
  CHECK(cert.regime == "exact");
  CHECK(cert.passed);
}
