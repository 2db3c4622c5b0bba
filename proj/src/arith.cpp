#include "vorbloch/arith.hpp"

#include <map>
#include <stdexcept>

#include "vorbloch/lattice.hpp"

namespace vorbloch {

bool is_unit(const FieldElement& x) {
  if (x.is_zero() || !x.is_integral()) return false;
  Rational n = x.norm();
  return n == 1 || n == -1;
}

std::vector<FieldElement> torsion_units(const NumberField& F) {
  std::vector<FieldElement> out;
  FieldElement z = F.root_of_unity(), acc = F.one();
  for (int k = 0; k < F.mu_order(); ++k) {
    out.push_back(acc);
    acc *= z;
  }
  return out;
}

long imaginary_quadratic_class_number(const Integer& disc) {
  if (disc >= 0) throw std::invalid_argument("discriminant must be negative");
  Integer D = disc;
  long h = 0;
  for (Integer a = 1; 3 * a * a <= -D; ++a)
    for (Integer b = -a + 1; b <= a; ++b) {
      Integer num = b * b - D;
      if (num % (4 * a) != 0) continue;
      Integer c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      Integer g = gcd(gcd(a, b), c);
      if (g == 1) ++h;
    }
  return h;
}

bool is_norm_euclidean_imaginary_quadratic(const NumberField& F) {
  if (!F.is_imaginary_quadratic()) return false;
  const Integer& d = F.disc();
  return d == -3 || d == -4 || d == -7 || d == -8 || d == -11;
}

std::pair<FieldElement, FieldElement> euclid_divmod(const FieldElement& a, const FieldElement& b) {
  NumberField F(a.data_ptr());
  if (b.is_zero()) throw std::domain_error("division by zero");
  RatVec c = (a / b).coords();
  int n = F.degree();
  Rational nb = abs(b.norm());
  std::optional<FieldElement> best_q, best_r;
  Rational best;
  for (int mask = 0; mask < (1 << n); ++mask) {
    IntVec q(n);
    for (int i = 0; i < n; ++i) q[i] = (mask >> i & 1) ? ceil_q(c[i]) : floor_q(c[i]);
    FieldElement qe = F.from_coords(q);
    FieldElement r = a - qe * b;
    Rational nr = abs(r.norm());
    if (!best_q || nr < best) {
      best = nr;
      best_q = qe;
      best_r = r;
    }
  }
  if (!(best < nb)) throw std::domain_error("field is not norm-Euclidean for this division");
  return {*best_q, *best_r};
}

Bezout bezout(const FieldElement& a, const FieldElement& b) {
  NumberField F(a.data_ptr());
  // invariant: r0 = s0 a + t0 b, r1 = s1 a + t1 b
  FieldElement r0 = a, r1 = b, s0 = F.one(), s1 = F.zero(), t0 = F.zero(), t1 = F.one();
  while (!r1.is_zero()) {
    auto [q, r] = euclid_divmod(r0, r1);
    FieldElement s2 = s0 - q * s1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  return {r0, s0, t0};
}

FieldElement dickson(const FieldElement& y, int r) {
  NumberField F(y.data_ptr());
  FieldElement a = F.from_int(2), b = y;
  if (r == 0) return a;
  for (int i = 1; i < r; ++i) {
    FieldElement c = y * b - a;
    a = b;
    b = c;
  }
  return b;
}

FieldElement canonical_associate(const NumberField& F, const FieldElement& x) {
  FieldElement best = x;
  for (const auto& u : torsion_units(F)) {
    FieldElement y = u * x;
    if (best < y) best = y;
  }
  return best;
}

namespace {

std::vector<std::pair<Integer, int>> factor_integer(Integer n) {
  std::vector<std::pair<Integer, int>> out;
  n = abs(n);
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (p > 100000000) throw std::runtime_error("integer too large for trial division");
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// Prime elements above p, canonical associates, sorted.
std::vector<FieldElement> primes_above(const NumberField& F, const Integer& p) {
  std::vector<FieldElement> out;
  Rational bound = Rational(2 * p);
  for (const auto& v : fincke_pohst(F.t2_gram(), bound)) {
    FieldElement x = F.from_coords(v);
    if (x.norm() == Rational(p)) {
      FieldElement c = canonical_associate(F, x);
      bool dup = false;
      for (const auto& o : out) dup = dup || o == c;
      if (!dup) out.push_back(c);
    }
  }
  if (out.empty()) out.push_back(canonical_associate(F, F.from_rational(Rational(p))));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

namespace {

void factor_integral(const NumberField& F, FieldElement a, int sign, std::map<FieldElement, int>& exps) {
  for (const auto& [p, e] : factor_integer(a.norm().get_num())) {
    (void)e;
    for (const auto& pi : primes_above(F, p))
      while (true) {
        FieldElement q = a / pi;
        if (!q.is_integral()) break;
        a = q;
        exps[pi] += sign;
      }
  }
}

}  // namespace

Factorization factor(const NumberField& F, const FieldElement& x) {
  if (!is_norm_euclidean_imaginary_quadratic(F)) throw std::domain_error("factorization needs a norm-Euclidean imaginary quadratic field");
  if (x.is_zero()) throw std::domain_error("cannot factor zero");
  Integer den = 1;
  for (const auto& c : x.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  std::map<FieldElement, int> exps;
  factor_integral(F, x * Rational(den), 1, exps);
  if (den != 1) factor_integral(F, F.from_rational(Rational(den)), -1, exps);
  Factorization f;
  FieldElement prod = F.one();
  for (const auto& [pi, e] : exps)
    if (e != 0) {
      f.primes.emplace_back(pi, e);
      prod *= pi.pow(e);
    }
  f.unit = x / prod;
  if (!is_unit(f.unit)) throw std::logic_error("factorization left a non-unit cofactor");
  return f;
}

}  // namespace vorbloch
