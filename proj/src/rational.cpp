#include "vorbloch/rational.hpp"

#include <stdexcept>

namespace vorbloch {

Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: '" + s + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  q.canonicalize();
  return q;
}

Integer parse_integer(const std::string& s) {
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) throw std::invalid_argument("not an integer: '" + s + "'");
  return z;
}

std::string to_string(const Rational& q) { return q.get_str(10); }
std::string to_string(const Integer& z) { return z.get_str(10); }

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

namespace {

// floor(sqrt(r)) for rational r >= 0.
Integer floor_sqrt(const Rational& r) {
  // floor(sqrt(a/b)) = floor(sqrt(a*b)/b) = floor(isqrt(a*b)/b) (monotone, exact)
  Integer ab = r.get_num() * r.get_den();
  Integer s;
  mpz_sqrt(s.get_mpz_t(), ab.get_mpz_t());
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), s.get_mpz_t(), r.get_den_mpz_t());
  return q;
}

}  // namespace

Integer floor_add_sqrt(const Rational& c, const Rational& r) {
  // start from floor(c) + floor(sqrt(r)) (a lower bound up to 1) and walk up exactly
  Integer k = floor_q(c) + floor_sqrt(r);
  auto ok = [&](const Integer& t) {
    Rational d = Rational(t) - c;
    return d <= 0 || d * d <= r;
  };
  while (!ok(k)) --k;
  while (ok(k + 1)) ++k;
  return k;
}

Integer ceil_sub_sqrt(const Rational& c, const Rational& r) {
  return -floor_add_sqrt(-c, r);
}

Integer content(const IntVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

IntVec primitive(const IntVec& v) {
  Integer g = content(v);
  if (g == 0) return v;
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) mpz_divexact(out[i].get_mpz_t(), v[i].get_mpz_t(), g.get_mpz_t());
  return out;
}

IntVec primitive(const RatVec& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IntVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    Rational t = v[i] * l;
    out[i] = t.get_num();
  }
  return primitive(out);
}

RatVec to_rat(const IntVec& v) {
  RatVec out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i];
  return out;
}

Rational dot(const RatVec& a, const RatVec& b) {
  Rational s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Integer dot(const IntVec& a, const IntVec& b) {
  Integer s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool is_zero(const RatVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

bool is_zero(const IntVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

IntVec canonical_sign(IntVec v) {
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return v;
}

std::vector<std::string> to_strings(const RatVec& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(to_string(x));
  return s;
}

std::vector<std::string> to_strings(const IntVec& v) {
  std::vector<std::string> s;
  for (const auto& x : v) s.push_back(to_string(x));
  return s;
}

}  // namespace vorbloch
