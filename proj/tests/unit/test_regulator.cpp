#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vorbloch/regulator.hpp"

using namespace vorbloch;

namespace {

constexpr int kPrec = 60;

CBall cb(double re, double im) {
  return CBall(Ball::from_rational(Rational(re), 200), Ball::from_rational(Rational(im), 200));
}

CBall one() { return cb(1, 0); }

double D(const CBall& z) { return bloch_wigner_D(z, kPrec).mid_d(); }

}  // namespace

TEST_CASE("D at i is Catalan's constant") {
  Ball d = bloch_wigner_D(cb(0, 1), kPrec);
  CHECK(std::fabs(d.mid_d() - static_cast<double>(oracle::catalan_series())) < 1e-13);
  CHECK(d.rad.to_double() < 1e-15);
  CHECK(d.overlaps(Ball::catalan(200)));
}

TEST_CASE("D symmetries") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 200; ++t) {
    CBall z = cb(u(rng), u(rng));
    double d = D(z);
    CHECK(std::fabs(D(one() - one() / z) - d) < 1e-12);
    CHECK(std::fabs(D(one() / (one() - z)) - d) < 1e-12);
    CHECK(std::fabs(D(one() / z) + d) < 1e-12);
    CHECK(std::fabs(D(one() - z) + d) < 1e-12);
    CHECK(std::fabs(D(z.conj()) + d) < 1e-12);
  }
}

TEST_CASE("D five-term relation") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 200; ++t) {
    CBall x = cb(u(rng), u(rng)), y = cb(u(rng), u(rng));
    double s = D(x) - D(y) + D(y / x) - D((one() - one() / x) / (one() - one() / y)) + D((one() - x) / (one() - y));
    CHECK(std::fabs(s) < 1e-12);
  }
}

TEST_CASE("D vanishes on the real line and rejects the singular points") {
  CHECK(std::fabs(D(cb(0.3, 0))) < 1e-15);
  CHECK_THROWS_AS(bloch_wigner_D(cb(0, 0), kPrec), std::domain_error);
  CHECK_THROWS_AS(bloch_wigner_D(cb(1, 0), kPrec), std::domain_error);
}

TEST_CASE("rational zeta at two") {
  auto z = zeta_F_2(NumberField::rationals(), kPrec, 100000);
  Ball pi = Ball::pi(200);
  Ball truth = pi * pi / Ball::from_int(6, 200);
  CHECK(z.value.contains(truth));
  CHECK(z.tail_relative < 1e-4);
}

TEST_CASE("gaussian zeta at two") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto z = zeta_F_2(F, kPrec, 100000);
  Ball pi = Ball::pi(200);
  Ball truth = pi * pi / Ball::from_int(6, 200) * Ball::catalan(200);
  CHECK(z.value.contains(truth));
  Ball vol = borel_volume(F, z.value);
  CHECK(std::fabs(vol.mid_d() - 0.30532186472) < 1e-6);
}

TEST_CASE("zeta enclosures shrink with the prime bound") {
  auto F = NumberField::create(Poly{1, 1, 1});
  auto a = zeta_F_2(F, kPrec, 1000), b = zeta_F_2(F, kPrec, 100000);
  CHECK(b.value.width() < a.value.width());
  CHECK(a.value.overlaps(b.value));
  CHECK(b.tail_relative < a.tail_relative);
}

TEST_CASE("residue degrees") {
  auto gauss = NumberField::create(Poly{1, 0, 1});
  CHECK(residue_degree_counts(gauss, 5)[1] == 2);
  CHECK(residue_degree_counts(gauss, 3)[2] == 1);
  std::vector<RatPoly> basis{{1}, {0, 1}, {0, 0, 1}, {0, 0, 0, 1}};
  auto z5 = NumberField::create(Poly{1, 1, 1, 1, 1}, basis);
  CHECK(residue_degree_counts(z5, 11)[1] == 4);
  CHECK(residue_degree_counts(z5, 2)[4] == 1);
  CHECK(residue_degree_counts(z5, 19)[2] == 2);
  CHECK(residue_degree_counts(z5, 7)[4] == 1);
}

TEST_CASE("regulator entries are linear and kill c_F") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto x = F.from_coords(IntVec{2, 1}), y = F.from_coords(IntVec{-1, 3});
  PreBlochElement a, b, ab;
  a.add(x, 2);
  b.add(y, -3);
  ab += a;
  ab += b;
  Ball ea = regulator_entry(F, a, 1, kPrec), eb = regulator_entry(F, b, 1, kPrec);
  CHECK(regulator_entry(F, ab, 1, kPrec).overlaps(ea + eb));
  PreBlochElement c;
  c.add(x, 1);
  c.add(F.one() - x, 1);
  CHECK(regulator_entry(F, c, 1, kPrec).contains_zero());
}

TEST_CASE("index report verdicts") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto z = zeta_F_2(F, kPrec, 100000);
  Ball vol = borel_volume(F, z.value);
  Ball good = vol * Ball::from_int(24, 200);
  auto r = index_report(F, {{good}}, z.value, 12, 1, 24, 1e-3);
  CHECK(r.lemma == Verdict::Pass);
  CHECK(r.index_general == 2);
  CHECK(r.index_example == 1);
  auto bad = index_report(F, {{vol * Ball::from_int(25, 200)}}, z.value, 12, 1, 24, 1e-3);
  CHECK(bad.lemma == Verdict::Fail);
  CHECK(to_string(Verdict::Pass) == "pass");
}

TEST_CASE("ball determinant") {
  auto b = [](long v) { return Ball::from_int(v, 100); };
  Ball d = ball_det({{b(2), b(1)}, {b(1), b(3)}});
  CHECK(d.contains(Rational(5)));
}
