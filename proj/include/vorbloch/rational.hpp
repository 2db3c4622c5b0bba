#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace vorbloch {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVec = std::vector<Integer>;
using RatVec = std::vector<Rational>;

// Accepts "p", "-p", "p/q"; result is canonicalized.
Rational parse_rational(const std::string& s);
Integer parse_integer(const std::string& s);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

Integer floor_q(const Rational& q);
Integer ceil_q(const Rational& q);

// Largest integer k with k >= c and (k-c)^2 <= r, i.e. floor(c + sqrt(r)), r >= 0.
Integer floor_add_sqrt(const Rational& c, const Rational& r);
// Smallest integer k with (c-k)^2 <= r and k <= c, i.e. ceil(c - sqrt(r)).
Integer ceil_sub_sqrt(const Rational& c, const Rational& r);

// Scale to an integer vector with content 1 (zero vector stays zero).
IntVec primitive(const RatVec& v);
IntVec primitive(const IntVec& v);
Integer content(const IntVec& v);

RatVec to_rat(const IntVec& v);
Rational dot(const RatVec& a, const RatVec& b);
Integer dot(const IntVec& a, const IntVec& b);
bool is_zero(const RatVec& v);
bool is_zero(const IntVec& v);

// Flip sign so that the first nonzero entry is positive.
IntVec canonical_sign(IntVec v);

std::vector<std::string> to_strings(const RatVec& v);
std::vector<std::string> to_strings(const IntVec& v);

}  // namespace vorbloch
