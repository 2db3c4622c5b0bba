#include <doctest.h>

#include "vorbloch/arith.hpp"
#include "vorbloch/field.hpp"

using namespace vorbloch;

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("6/-4") == Rational(-3, 2));
  CHECK(to_string(parse_rational("-10/4")) == "-5/2");
  CHECK(parse_integer("123456789012345678901234567890") * 10 == parse_integer("1234567890123456789012345678900"));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_integer("x1"));
  CHECK(floor_q(Rational(-7, 2)) == -4);
  CHECK(ceil_q(Rational(-7, 2)) == -3);
  CHECK(floor_add_sqrt(Rational(0), Rational(10)) == 3);
  CHECK(ceil_sub_sqrt(Rational(0), Rational(10)) == -3);
}

TEST_CASE("gaussian field invariants") {
  auto F = NumberField::create(Poly{1, 0, 1});
  CHECK(F.degree() == 2);
  CHECK(F.disc() == -4);
  CHECK(F.r1() == 0);
  CHECK(F.r2() == 1);
  CHECK(F.kind() == FieldKind::CM);
  CHECK(F.mu_order() == 4);
  auto i = F.generator();
  CHECK((i * i + F.one()).is_zero());
  auto x = F.from_coords(IntVec{3, 4});
  CHECK(x.norm() == 25);
  CHECK((x * x.inverse()).is_one());
  CHECK(x.conj() == F.from_coords(IntVec{3, -4}));
  CBall z = F.embed(i, 1, 100);
  CHECK(z.re.contains(Rational(0)));
  CHECK(z.im.contains(Rational(1)));
}

TEST_CASE("eisenstein and other quadratic discriminants") {
  CHECK(NumberField::create(Poly{1, 1, 1}).disc() == -3);
  CHECK(NumberField::create(Poly{1, 1, 1}).mu_order() == 6);
  CHECK(NumberField::create(Poly{2, 1, 1}).disc() == -7);
  CHECK(NumberField::create(Poly{2, 0, 1}).disc() == -8);
  CHECK(NumberField::create(Poly{3, 1, 1}).disc() == -11);
  CHECK(NumberField::create(Poly{5, 0, 1}).disc() == -20);
}

TEST_CASE("cyclotomic field of fifth roots") {
  std::vector<RatPoly> basis{{1}, {0, 1}, {0, 0, 1}, {0, 0, 0, 1}};
  auto F = NumberField::create(Poly{1, 1, 1, 1, 1}, basis);
  CHECK(F.degree() == 4);
  CHECK(F.disc() == 125);
  CHECK(F.r2() == 2);
  CHECK(F.kind() == FieldKind::CM);
  CHECK(F.mu_order() == 10);
  CHECK(F.sqrt5_in_field());
  auto z = F.generator();
  CHECK(z.pow(5).is_one());
}

TEST_CASE("invalid field input") {
  CHECK_THROWS_AS(NumberField::create(Poly{-1, 0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(NumberField::create(Poly{1, 0, 2}), std::invalid_argument);
  std::vector<RatPoly> bad{{1}, {0, Rational(1, 3)}};
  CHECK_THROWS_AS(NumberField::create(Poly{1, 0, 1}, bad), std::invalid_argument);
}

TEST_CASE("minus one as a sum of two squares") {
  CHECK(NumberField::create(Poly{1, 0, 1}).minus_one_sum_of_two_squares().status == TwoSquaresResult::True);
  CHECK(NumberField::create(Poly{1, 1, 1}).minus_one_sum_of_two_squares().status == TwoSquaresResult::True);
  CHECK(NumberField::create(Poly{2, 0, 1}).minus_one_sum_of_two_squares().status == TwoSquaresResult::True);
  // 2 splits in Q(sqrt -7), so -1 is not a sum of two squares 2-adically
  CHECK(NumberField::create(Poly{2, 1, 1}).minus_one_sum_of_two_squares().status == TwoSquaresResult::False);
  CHECK(NumberField::create(Poly{-2, 0, 1}).minus_one_sum_of_two_squares().status == TwoSquaresResult::False);
}

TEST_CASE("euclidean arithmetic and factorization") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto a = F.from_coords(IntVec{7, 3}), b = F.from_coords(IntVec{2, -1});
  auto [q, r] = euclid_divmod(a, b);
  CHECK(q * b + r == a);
  CHECK(r.norm() < b.norm());
  auto bz = bezout(a, b);
  CHECK(bz.s * a + bz.t * b == bz.g);
  auto x = F.from_coords(IntVec{-30, 10});
  auto fx = factor(F, x);
  FieldElement prod = fx.unit;
  for (const auto& [p, e] : fx.primes) prod *= p.pow(e);
  CHECK(prod == x);
  CHECK(is_unit(fx.unit));
  CHECK(torsion_units(F).size() == 4);
  CHECK(imaginary_quadratic_class_number(Integer(-4)) == 1);
  CHECK(imaginary_quadratic_class_number(Integer(-20)) == 2);
  CHECK(imaginary_quadratic_class_number(Integer(-23)) == 3);
}

TEST_CASE("dickson polynomials") {
  auto F = NumberField::rationals();
  auto y = F.from_int(3);
  CHECK(dickson(y, 0) == F.from_int(2));
  CHECK(dickson(y, 1) == y);
  CHECK(dickson(y, 2) == F.from_int(7));
  CHECK(dickson(y, 3) == F.from_int(18));
}
