#include "vorbloch/field.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "vorbloch/lattice.hpp"

namespace vorbloch {

// ---------------------------------------------------------------- polynomials

void poly_trim(RatPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

RatPoly to_ratpoly(const Poly& p) {
  RatPoly r(p.begin(), p.end());
  poly_trim(r);
  return r;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly c(a.size() + b.size() - 1, Rational(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  poly_trim(c);
  return c;
}

RatPoly poly_rem(RatPoly a, const RatPoly& b) {
  poly_trim(a);
  if (b.empty()) throw std::domain_error("polynomial division by zero");
  while (a.size() >= b.size()) {
    Rational f = a.back() / b.back();
    size_t shift = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
  }
  return a;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    RatPoly r = poly_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lc = a.back();
    for (auto& c : a) c /= lc;
  }
  return a;
}

RatPoly poly_derivative(const RatPoly& a) {
  RatPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(a[i] * static_cast<long>(i));
  poly_trim(d);
  return d;
}

int sturm_real_root_count(const Poly& p) {
  std::vector<RatPoly> seq{to_ratpoly(p)};
  seq.push_back(poly_derivative(seq[0]));
  while (!seq.back().empty()) {
    RatPoly r = poly_rem(seq[seq.size() - 2], seq.back());
    for (auto& c : r) c = -c;
    if (r.empty()) break;
    seq.push_back(r);
  }
  auto changes = [&](bool at_plus) {
    int count = 0, last = 0;
    for (const auto& s : seq) {
      if (s.empty()) continue;
      int sg = sgn(s.back());
      if (!at_plus && (s.size() - 1) % 2 == 1) sg = -sg;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  };
  return changes(false) - changes(true);
}

FieldElement eval_poly(const Poly& p, const FieldElement& x) {
  NumberField f(x.data_ptr());
  FieldElement acc = f.zero();
  for (size_t i = p.size(); i-- > 0;) acc = acc * x + f.from_rational(Rational(p[i]));
  return acc;
}

std::string to_string(FieldKind k) {
  switch (k) {
    case FieldKind::TotallyReal: return "totally-real";
    case FieldKind::CM: return "CM";
    default: return "other";
  }
}

// ---------------------------------------------------------------- numerics

namespace {

void strip(CBall& z) {
  mpfr_set_zero(z.re.rad.get(), 1);
  mpfr_set_zero(z.im.rad.get(), 1);
}

CBall cconst(const Rational& q, mpfr_prec_t prec) { return CBall(Ball::from_rational(q, prec), Ball(prec)); }

CBall horner(const RatPoly& p, const CBall& z) {
  mpfr_prec_t prec = z.prec();
  if (p.empty()) return CBall(prec);
  CBall acc = cconst(p.back(), prec);
  for (size_t i = p.size() - 1; i-- > 0;) acc = acc * z + cconst(p[i], prec);
  return acc;
}

double cabs_d(const CBall& z) { return std::hypot(z.re.mid_d(), z.im.mid_d()); }

std::vector<std::complex<long double>> durand_kerner(const Poly& p) {
  int n = static_cast<int>(p.size()) - 1;
  std::vector<long double> c(p.size());
  for (size_t i = 0; i < p.size(); ++i) c[i] = p[i].get_d();
  if (n == 1) return {std::complex<long double>(-c[0], 0)};
  long double bound = 1;
  for (int i = 0; i < n; ++i) bound = std::max(bound, 1 + std::fabs(c[i]));
  std::vector<std::complex<long double>> z(n);
  std::complex<long double> seed(0.4L, 0.9L);
  for (int k = 0; k < n; ++k) z[k] = std::pow(seed, k) * (bound * 0.5L);
  auto eval = [&](std::complex<long double> x) {
    std::complex<long double> acc = c[n];
    for (int i = n - 1; i >= 0; --i) acc = acc * x + c[i];
    return acc;
  };
  for (int it = 0; it < 5000; ++it) {
    long double delta = 0;
    for (int k = 0; k < n; ++k) {
      std::complex<long double> den = 1;
      for (int j = 0; j < n; ++j)
        if (j != k) den *= (z[k] - z[j]);
      if (std::abs(den) == 0) den = 1e-30L;
      auto step = eval(z[k]) / den;
      z[k] -= step;
      delta = std::max(delta, std::abs(step) / std::max<long double>(1, std::abs(z[k])));
    }
    if (delta < 1e-17L) break;
  }
  return z;
}

struct RootSet {
  std::vector<CBall> roots;
  bool ok = false;
};

// Refine approximate roots by Newton at `prec` and certify disjoint inclusion disks.
RootSet certify_roots(const Poly& p, std::vector<CBall> z, int r1, mpfr_prec_t prec) {
  RatPoly rp = to_ratpoly(p), dp = poly_derivative(rp);
  int n = static_cast<int>(rp.size()) - 1;
  RootSet out;
  std::vector<Real> radius;
  for (auto& zi : z) {
    CBall w{Ball(prec), Ball(prec)};
    mpfr_set(w.re.mid.get(), zi.re.mid.get(), MPFR_RNDN);
    mpfr_set(w.im.mid.get(), zi.im.mid.get(), MPFR_RNDN);
    for (int it = 0; it < 400; ++it) {
      CBall pv = horner(rp, w), dv = horner(dp, w);
      strip(pv);
      strip(dv);
      if (dv.contains_zero()) break;
      CBall step = pv / dv;
      strip(step);
      w = w - step;
      strip(w);
      double s = cabs_d(step), a = std::max(1.0, cabs_d(w));
      if (s == 0 || std::log2(s / a) < -static_cast<double>(prec) + 8) break;
    }
    // inclusion radius n |p(w)| / |p'(w)|
    CBall pv = horner(rp, w), dv = horner(dp, w);
    Ball num = abs(pv);
    Real den = abs(dv).abs_lower();
    if (mpfr_sgn(den.get()) <= 0) return out;
    Real r(kRadPrec);
    mpfr_mul_si(r.get(), num.abs_upper().get(), n, MPFR_RNDU);
    mpfr_div(r.get(), r.get(), den.get(), MPFR_RNDU);
    radius.push_back(r);
    zi = w;
  }
  for (size_t i = 0; i < z.size(); ++i)
    for (size_t j = i + 1; j < z.size(); ++j) {
      Ball d = abs(z[i] - z[j]);
      Real s(kRadPrec);
      mpfr_add(s.get(), radius[i].get(), radius[j].get(), MPFR_RNDU);
      if (!mpfr_greater_p(d.abs_lower().get(), s.get())) return out;
    }
  std::vector<size_t> real_idx, upper_idx;
  for (size_t i = 0; i < z.size(); ++i) {
    Real aim(prec);
    mpfr_abs(aim.get(), z[i].im.mid.get(), MPFR_RNDD);
    if (mpfr_lessequal_p(aim.get(), radius[i].get()))
      real_idx.push_back(i);
    else if (mpfr_sgn(z[i].im.mid.get()) > 0)
      upper_idx.push_back(i);
  }
  if (static_cast<int>(real_idx.size()) != r1 || static_cast<int>(upper_idx.size()) * 2 + r1 != n) return out;
  auto key = [&](size_t i) { return std::make_pair(z[i].re.mid_d(), z[i].im.mid_d()); };
  std::sort(real_idx.begin(), real_idx.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
  std::sort(upper_idx.begin(), upper_idx.end(), [&](size_t a, size_t b) { return key(a) < key(b); });
  for (size_t i : real_idx) {
    CBall c{Ball(prec), Ball(prec)};
    mpfr_set(c.re.mid.get(), z[i].re.mid.get(), MPFR_RNDN);
    mpfr_set(c.re.rad.get(), radius[i].get(), MPFR_RNDU);
    out.roots.push_back(c);
  }
  std::vector<CBall> upper;
  for (size_t i : upper_idx) {
    CBall c = z[i];
    mpfr_set(c.re.rad.get(), radius[i].get(), MPFR_RNDU);
    mpfr_set(c.im.rad.get(), radius[i].get(), MPFR_RNDU);
    upper.push_back(c);
  }
  for (auto& c : upper) out.roots.push_back(c);
  for (auto& c : upper) out.roots.push_back(c.conj());
  out.ok = true;
  return out;
}

std::vector<CBall> isolate_roots(const Poly& p, int r1, mpfr_prec_t prec) {
  auto approx = durand_kerner(p);
  std::vector<CBall> z;
  for (auto& a : approx) {
    CBall c{Ball(prec), Ball(prec)};
    mpfr_set_ld(c.re.mid.get(), a.real(), MPFR_RNDN);
    mpfr_set_ld(c.im.mid.get(), a.imag(), MPFR_RNDN);
    z.push_back(c);
  }
  for (mpfr_prec_t w = prec; w <= prec * 64; w *= 2) {
    auto rs = certify_roots(p, z, r1, w);
    if (rs.ok) return rs.roots;
  }
  throw std::runtime_error("root isolation failed");
}

std::vector<CBall> refine_roots(const Poly& p, const std::vector<CBall>& cached, int r1, mpfr_prec_t prec) {
  for (mpfr_prec_t w = prec; w <= prec * 16; w *= 2) {
    auto rs = certify_roots(p, cached, r1, w);
    if (rs.ok) return rs.roots;
  }
  throw std::runtime_error("root refinement failed");
}

// Solve A x = b numerically (midpoints only); nullopt if singular.
std::optional<std::vector<CBall>> csolve(std::vector<std::vector<CBall>> a, std::vector<CBall> b) {
  size_t n = b.size();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (cabs_d(a[r][c]) > cabs_d(a[piv][c])) piv = r;
    if (cabs_d(a[piv][c]) == 0) return std::nullopt;
    std::swap(a[piv], a[c]);
    std::swap(b[piv], b[c]);
    for (size_t r = c + 1; r < n; ++r) {
      CBall f = a[r][c] / a[c][c];
      strip(f);
      for (size_t k = c; k < n; ++k) {
        a[r][k] = a[r][k] - f * a[c][k];
        strip(a[r][k]);
      }
      b[r] = b[r] - f * b[c];
      strip(b[r]);
    }
  }
  std::vector<CBall> x(n, CBall(b[0].prec()));
  for (size_t i = n; i-- > 0;) {
    CBall s = b[i];
    for (size_t k = i + 1; k < n; ++k) s = s - a[i][k] * x[k];
    x[i] = s / a[i][i];
    strip(x[i]);
  }
  return x;
}

Integer round_mid(const Ball& b) {
  Real r(b.prec());
  mpfr_round(r.get(), b.mid.get());
  Integer z;
  mpfr_get_z(z.get_mpz_t(), r.get(), MPFR_RNDN);
  return z;
}

Integer poly_discriminant(const Poly& p) {
  int n = static_cast<int>(p.size()) - 1;
  std::vector<Integer> s(2 * n, Integer(0));
  auto a = [&](int i) { return p[i]; };  // monic: a(n) = 1
  s[0] = n;
  for (int k = 1; k < 2 * n; ++k) {
    Integer v = 0;
    if (k <= n) {
      v = -Integer(k) * a(n - k);
      for (int i = 1; i < k; ++i) v -= a(n - i) * s[k - i];
    } else {
      for (int i = 1; i <= n; ++i) v -= a(n - i) * s[k - i];
    }
    s[k] = v;
  }
  RatMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = s[i + j];
  return det(g).get_num();
}

// Squarefree decomposition |d| = f^2 * d0 by trial division.
std::pair<Integer, Integer> squarefree_split(Integer d) {
  Integer f = 1, d0 = 1;
  int sign = d < 0 ? -1 : 1;
  d = abs(d);
  for (Integer q = 2; q * q <= d; ++q) {
    int e = 0;
    while (d % q == 0) {
      d /= q;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) f *= q;
    if (e % 2) d0 *= q;
  }
  d0 *= d;
  return {f, d0 * sign};
}

}  // namespace

bool is_irreducible(const Poly& p) {
  int n = static_cast<int>(p.size()) - 1;
  if (n <= 1) return n == 1;
  RatPoly rp = to_ratpoly(p);
  if (poly_gcd(rp, poly_derivative(rp)).size() > 1) return false;
  if (n > 24) throw std::invalid_argument("irreducibility test limited to degree <= 24");
  int r1 = sturm_real_root_count(p);
  for (mpfr_prec_t prec = 128; prec <= 4096; prec *= 2) {
    auto roots = isolate_roots(p, r1, prec);
    bool undecided = false;
    for (unsigned long mask = 1; mask < (1UL << n) && !undecided; ++mask) {
      int k = __builtin_popcountl(mask);
      if (k > n / 2) continue;
      std::vector<CBall> coef{CBall(Ball::from_int(1, prec), Ball(prec))};
      for (int i = 0; i < n; ++i) {
        if (!(mask >> i & 1)) continue;
        std::vector<CBall> next(coef.size() + 1, CBall(prec));
        for (size_t j = 0; j < coef.size(); ++j) {
          next[j + 1] = next[j + 1] + coef[j];
          next[j] = next[j] - coef[j] * roots[i];
        }
        coef = next;
      }
      Poly g;
      bool candidate = true;
      for (auto& c : coef) {
        if (!c.im.contains_zero()) {
          candidate = false;
          break;
        }
        Integer z = round_mid(c.re);
        if (!c.re.contains(Rational(z))) {
          candidate = false;
          break;
        }
        if (c.re.width() >= 0.5 || c.im.width() >= 0.5) undecided = true;
        g.push_back(z);
      }
      if (!candidate || undecided) continue;
      if (poly_rem(rp, to_ratpoly(g)).empty()) return false;
    }
    if (!undecided) return true;
  }
  throw std::runtime_error("irreducibility undecided");
}

// ---------------------------------------------------------------- elements

FieldElement::FieldElement(std::shared_ptr<const FieldData> f, RatVec coords) : f_(std::move(f)), c_(std::move(coords)) {}

bool FieldElement::is_zero() const { return vorbloch::is_zero(c_); }
bool FieldElement::is_one() const { return c_ == f_->one; }
bool FieldElement::is_integral() const {
  for (const auto& x : c_)
    if (x.get_den() != 1) return false;
  return true;
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  int n = f_->n;
  RatVec r(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    if (c_[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (o.c_[j] == 0) continue;
      Rational t = c_[i] * o.c_[j];
      const RatVec& m = f_->mul[i * n + j];
      for (int k = 0; k < n; ++k)
        if (m[k] != 0) r[k] += t * m[k];
    }
  }
  c_ = std::move(r);
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) { return *this *= o.inverse(); }

FieldElement FieldElement::operator*(const Rational& q) const {
  FieldElement r = *this;
  for (auto& x : r.c_) x *= q;
  return r;
}

RatMat FieldElement::mult_matrix() const {
  int n = f_->n;
  RatMat m(n, n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      if (c_[i] == 0) continue;
      const RatVec& t = f_->mul[i * n + j];
      for (int k = 0; k < n; ++k) m(k, j) += c_[i] * t[k];
    }
  return m;
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero in number field");
  auto x = solve(mult_matrix(), f_->one);
  return FieldElement(f_, *x);
}

FieldElement FieldElement::pow(long e) const {
  FieldElement base = e < 0 ? inverse() : *this;
  unsigned long k = e < 0 ? -static_cast<unsigned long>(e) : static_cast<unsigned long>(e);
  FieldElement acc(f_, f_->one);
  while (k) {
    if (k & 1) acc *= base;
    k >>= 1;
    if (k) base *= base;
  }
  return acc;
}

FieldElement FieldElement::conj() const {
  if (f_->kind == FieldKind::Other) throw std::domain_error("field has no CM involution");
  return FieldElement(f_, f_->conj * c_);
}

Rational FieldElement::norm() const { return det(mult_matrix()); }

Rational FieldElement::trace() const {
  Rational t = 0;
  for (int i = 0; i < f_->n; ++i) t += c_[i] * f_->basis_trace[i];
  return t;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? ", " : "") << vorbloch::to_string(c_[i]);
  os << "]";
  return os.str();
}

// ---------------------------------------------------------------- field

namespace {

RatPoly power_mul_mod(const RatPoly& a, const RatPoly& b, const RatPoly& f) { return poly_rem(poly_mul(a, b), f); }

RatVec power_coords(RatPoly p, int n) {
  p.resize(n, Rational(0));
  return p;
}

}  // namespace

NumberField NumberField::rationals() { return create(Poly{Integer(0), Integer(1)}); }

NumberField NumberField::create(const Poly& min_poly_in, const std::optional<std::vector<RatPoly>>& basis_in) {
  Poly p = min_poly_in;
  while (p.size() > 1 && p.back() == 0) p.pop_back();
  int n = static_cast<int>(p.size()) - 1;
  if (n < 1) throw std::invalid_argument("min_poly must have degree >= 1");
  if (p.back() != 1) throw std::invalid_argument("min_poly must be monic");
  if (!is_irreducible(p)) throw std::invalid_argument("min_poly is reducible over Q");

  auto d = std::make_shared<FieldData>();
  d->n = n;
  d->min_poly = p;
  RatPoly fp = to_ratpoly(p);
  d->r1 = sturm_real_root_count(p);
  d->r2 = (n - d->r1) / 2;

  // integral basis
  std::vector<RatPoly> basis;
  if (basis_in) {
    basis = *basis_in;
    if (static_cast<int>(basis.size()) != n) throw std::invalid_argument("integral_basis must have n elements");
    d->basis_origin = "user-supplied";
  } else if (n == 2 && d->r1 == 0) {
    Integer b = p[1], c = p[0];
    Integer disc = b * b - 4 * c;
    auto [f, d0] = squarefree_split(disc);
    // sqrt(d0) = (2θ + b)/f
    Rational inv_f = Rational(1) / Rational(f);
    Integer m4 = d0 % 4;
    if (m4 < 0) m4 += 4;
    if (m4 == 1)
      basis = {{Rational(1)}, {(1 + Rational(b) * inv_f) / 2, inv_f}};
    else
      basis = {{Rational(1)}, {Rational(b) * inv_f, 2 * inv_f}};
    d->basis_origin = "imaginary-quadratic-standard";
  } else {
    for (int i = 0; i < n; ++i) {
      RatPoly e(i + 1, Rational(0));
      e[i] = 1;
      basis.push_back(e);
    }
    d->basis_origin = n == 1 ? "power-basis" : "power-basis (maximality unverified)";
  }
  for (auto& b : basis) {
    poly_trim(b);
    if (static_cast<int>(b.size()) > n) throw std::invalid_argument("integral_basis element has degree >= n");
  }
  d->basis = basis;
  d->to_power = RatMat(n, n);
  for (int j = 0; j < n; ++j)
    for (size_t i = 0; i < basis[j].size(); ++i) d->to_power(i, j) = basis[j][i];
  auto inv = inverse(d->to_power);
  if (!inv) throw std::invalid_argument("integral_basis is not linearly independent");
  d->from_power = *inv;

  d->mul.resize(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RatVec c = d->from_power * power_coords(power_mul_mod(basis[i], basis[j], fp), n);
      for (const auto& x : c)
        if (x.get_den() != 1)
          throw std::invalid_argument("integral_basis is not closed under multiplication into its Z-span");
      d->mul[i * n + j] = c;
    }
  RatPoly one_p{Rational(1)};
  d->one = d->from_power * power_coords(one_p, n);
  for (const auto& x : d->one)
    if (x.get_den() != 1) throw std::invalid_argument("1 is not in the Z-span of integral_basis");
  RatPoly theta = n == 1 ? RatPoly{-Rational(p[0])} : RatPoly{Rational(0), Rational(1)};
  d->gen = d->from_power * power_coords(theta, n);

  d->basis_trace.assign(n, Rational(0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d->basis_trace[i] += d->mul[i * n + j][j];

  // discriminant of the integral basis
  {
    RatMat g(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        Rational t = 0;
        for (int k = 0; k < n; ++k) t += d->mul[i * n + j][k] * d->basis_trace[k];
        g(i, j) = t;
      }
    d->disc = det(g).get_num();
  }

  d->roots_prec = 384;
  d->roots = isolate_roots(p, d->r1, d->roots_prec);

  // complex conjugation as a field automorphism
  d->conj = RatMat::identity(n);
  if (d->r1 == n) {
    d->kind = FieldKind::TotallyReal;
  } else if (d->r1 == 0) {
    Integer pd = poly_discriminant(p);
    for (mpfr_prec_t prec : {512, 2048}) {
      auto roots = refine_roots(p, d->roots, d->r1, prec);
      std::vector<std::vector<CBall>> a(n, std::vector<CBall>(n, CBall(prec)));
      std::vector<CBall> rhs;
      for (int j = 0; j < n; ++j) {
        CBall pw(Ball::from_int(1, prec), Ball(prec));
        CBall z = roots[j];
        strip(z);
        for (int k = 0; k < n; ++k) {
          a[j][k] = pw;
          pw = pw * z;
          strip(pw);
        }
        rhs.push_back(z.conj());
      }
      auto sol = csolve(a, rhs);
      if (!sol) continue;
      RatPoly cp;
      bool ok = true;
      for (auto& s : *sol) {
        Ball scaled = s.re * Ball::from_rational(Rational(pd), prec);
        if (std::fabs(s.im.mid_d()) > 1e-6) ok = false;
        Rational q(round_mid(scaled), pd);
        q.canonicalize();
        cp.push_back(q);
      }
      if (!ok) continue;
      poly_trim(cp);
      // exact check: f(c) = 0 and c != θ
      RatPoly acc;
      for (size_t i = fp.size(); i-- > 0;) {
        acc = power_mul_mod(acc, cp, fp);
        if (acc.empty()) acc = {fp[i]};
        else acc[0] += fp[i];
        poly_trim(acc);
      }
      if (!acc.empty() || cp == theta) continue;
      // numeric check that c realizes complex conjugation at every root
      bool matches = true;
      for (int j = 0; j < n && matches; ++j) {
        CBall v = horner(cp, roots[j]) - roots[j].conj();
        if (cabs_d(v) > 1e-30) matches = false;
      }
      if (!matches) continue;
      for (int j = 0; j < n; ++j) {
        // conj(b_j) = b_j(c)
        RatPoly accj;
        const RatPoly& bj = basis[j];
        for (size_t i = bj.size(); i-- > 0;) {
          accj = power_mul_mod(accj, cp, fp);
          if (accj.empty()) accj = {bj[i]};
          else accj[0] += bj[i];
          poly_trim(accj);
        }
        RatVec col = d->from_power * power_coords(accj, n);
        for (int i = 0; i < n; ++i) d->conj(i, j) = col[i];
      }
      d->kind = FieldKind::CM;
      break;
    }
  }

  d->mu_order = 2;
  d->mu_gen = d->one;
  for (auto& x : d->mu_gen) x = -x;
  if (d->kind == FieldKind::CM) {
    NumberField tmp(d);
    auto roots_of_unity = tmp.short_elements(Rational(n));
    d->mu_order = static_cast<int>(roots_of_unity.size()) * 2;
    std::vector<FieldElement> all;
    for (auto& z : roots_of_unity) {
      all.push_back(z);
      all.push_back(-z);
    }
    double best = 1e9;
    for (auto& z : all) {
      int ord = 0;
      FieldElement acc = z;
      for (int k = 1; k <= d->mu_order; ++k) {
        if (acc.is_one()) {
          ord = k;
          break;
        }
        acc *= z;
      }
      if (ord != d->mu_order) continue;
      CBall v = tmp.embed(z, 1, 64);
      double ang = std::atan2(v.im.mid_d(), v.re.mid_d());
      if (ang <= 0) ang += 2 * M_PI;
      if (ang < best) {
        best = ang;
        d->mu_gen = z.coords();
      }
    }
  }
  return NumberField(d);
}

FieldElement NumberField::zero() const { return FieldElement(d_, RatVec(d_->n, Rational(0))); }
FieldElement NumberField::one() const { return FieldElement(d_, d_->one); }
FieldElement NumberField::from_coords(const RatVec& c) const {
  if (static_cast<int>(c.size()) != d_->n) throw std::invalid_argument("coordinate vector has wrong length");
  return FieldElement(d_, c);
}
FieldElement NumberField::from_coords(const IntVec& c) const { return from_coords(to_rat(c)); }
FieldElement NumberField::basis_element(int i) const {
  RatVec c(d_->n, Rational(0));
  c[i] = 1;
  return FieldElement(d_, c);
}
FieldElement NumberField::generator() const { return FieldElement(d_, d_->gen); }
FieldElement NumberField::from_power(const RatPoly& p) const {
  FieldElement acc = zero();
  FieldElement th = generator();
  for (size_t i = p.size(); i-- > 0;) acc = acc * th + from_rational(p[i]);
  return acc;
}
FieldElement NumberField::root_of_unity() const { return FieldElement(d_, d_->mu_gen); }

std::vector<CBall> NumberField::embed_all(const FieldElement& x, int precision) const {
  std::vector<CBall> out;
  mpfr_prec_t w = precision + 32;
  auto roots = w + 16 <= d_->roots_prec ? d_->roots : refine_roots(d_->min_poly, d_->roots, d_->r1, w);
  for (const auto& r : roots) {
    CBall acc(w);
    for (int i = 0; i < d_->n; ++i) {
      if (x.coords()[i] == 0) continue;
      acc = acc + Ball::from_rational(x.coords()[i], w) * horner(d_->basis[i], r);
    }
    out.push_back(acc);
  }
  return out;
}

CBall NumberField::embed(const FieldElement& x, int sigma, int precision) const {
  if (sigma < 1 || sigma > num_embeddings()) throw std::out_of_range("embedding index out of range");
  int idx = sigma - 1;  // real roots first, then upper half-plane roots
  for (mpfr_prec_t w = precision + 32;; w *= 2) {
    auto roots = w + 16 <= d_->roots_prec ? d_->roots : refine_roots(d_->min_poly, d_->roots, d_->r1, w);
    CBall acc(w);
    for (int i = 0; i < d_->n; ++i) {
      if (x.coords()[i] == 0) continue;
      acc = acc + Ball::from_rational(x.coords()[i], w) * horner(d_->basis[i], roots[idx]);
    }
    double mag = std::max(1.0, cabs_d(acc));
    if (acc.rad_max() <= std::ldexp(mag, 1 - precision) / 2) return acc;
    if (w > 64 * (precision + 32)) throw std::runtime_error("embedding precision escalation failed");
  }
}

RatMat NumberField::t2_gram() const {
  if (d_->kind == FieldKind::Other) throw std::domain_error("T2 form needs a totally real or CM field");
  int n = d_->n;
  RatMat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = (basis_element(i) * basis_element(j).conj()).trace();
  return g;
}

std::vector<FieldElement> NumberField::short_elements(const Rational& bound) const {
  std::vector<FieldElement> out;
  for (const auto& v : fincke_pohst(t2_gram(), bound)) out.push_back(from_coords(v));
  return out;
}

std::optional<FieldElement> NumberField::sqrt(const FieldElement& y) const {
  if (y.is_zero()) return zero();
  int n = d_->n;
  if (n == 1) {
    Rational q = y.coords()[0];
    if (q < 0) return std::nullopt;
    Integer a = q.get_num(), b = q.get_den(), sa, sb;
    if (!mpz_perfect_square_p(a.get_mpz_t()) || !mpz_perfect_square_p(b.get_mpz_t())) return std::nullopt;
    mpz_sqrt(sa.get_mpz_t(), a.get_mpz_t());
    mpz_sqrt(sb.get_mpz_t(), b.get_mpz_t());
    return from_rational(Rational(sa, sb));
  }
  // scale to an integral element: y * den^2
  Integer den = 1;
  for (const auto& c : y.coords()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  FieldElement yi = y * Rational(den * den);
  mpfr_prec_t prec = 256;
  auto roots = refine_roots(d_->min_poly, d_->roots, d_->r1, prec);
  std::vector<CBall> vals;
  for (int j = 0; j < n; ++j) {
    CBall acc(prec);
    for (int i = 0; i < n; ++i) acc = acc + Ball::from_rational(yi.coords()[i], prec) * horner(d_->basis[i], roots[j]);
    strip(acc);
    vals.push_back(acc);
  }
  for (int j = 0; j < d_->r1; ++j)
    if (vals[j].re.mid_d() < 0) return std::nullopt;
  std::vector<std::vector<CBall>> a(n, std::vector<CBall>(n, CBall(prec)));
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      a[j][i] = horner(d_->basis[i], roots[j]);
      strip(a[j][i]);
    }
  int places = d_->r1 + d_->r2;
  auto csqrt = [&](const CBall& z) {
    Ball r = abs(z);
    Ball re = vorbloch::sqrt(mul_2exp(r + z.re, -1));
    Ball im = vorbloch::sqrt(mul_2exp(r - z.re, -1));
    if (z.im.mid_d() < 0) im = -im;
    CBall s(re, im);
    strip(s);
    return s;
  };
  for (unsigned long mask = 0; mask < (1UL << places); ++mask) {
    std::vector<CBall> t(n, CBall(prec));
    for (int j = 0; j < places; ++j) {
      CBall s = j < d_->r1 ? CBall(vorbloch::sqrt(abs(vals[j].re)), Ball(prec)) : csqrt(vals[j]);
      strip(s);
      if (mask >> j & 1) s = CBall(-s.re, -s.im);
      t[j] = s;
      if (j >= d_->r1) t[j + d_->r2] = s.conj();
    }
    auto sol = csolve(a, t);
    if (!sol) continue;
    IntVec c;
    for (auto& s : *sol) c.push_back(round_mid(s.re));
    FieldElement x = from_coords(c);
    if (x * x == yi) {
      FieldElement r = x * (Rational(1) / Rational(den));
      IntVec key = primitive(r.coords());
      if (canonical_sign(key) != key) r = -r;
      return r;
    }
  }
  return std::nullopt;
}

std::vector<int> NumberField::local_degrees_at(long p) const {
  int n = d_->n;
  double total = std::pow(static_cast<double>(p), n);
  if (total > (1 << 22)) throw std::invalid_argument("residue algebra too large for enumeration");
  long count = static_cast<long>(total);
  std::vector<long> table(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        Integer v = d_->mul[i * n + j][k].get_num() % p;
        if (v < 0) v += p;
        table[(i * n + j) * n + k] = v.get_si();
      }
  auto decode = [&](long code) {
    std::vector<long> v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = code % p;
      code /= p;
    }
    return v;
  };
  auto mult = [&](const std::vector<long>& a, const std::vector<long>& b) {
    std::vector<long> r(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!a[i] || !b[j]) continue;
        for (int k = 0; k < n; ++k) r[k] = (r[k] + a[i] * b[j] % p * table[(i * n + j) * n + k]) % p;
      }
    return r;
  };
  std::vector<std::vector<long>> idem;
  for (long code = 1; code < count; ++code) {
    auto e = decode(code);
    if (mult(e, e) == e) idem.push_back(e);
  }
  auto rank_mod_p = [&](std::vector<std::vector<long>> m) {
    int r = 0;
    for (int c = 0; c < n && r < static_cast<int>(m.size()); ++c) {
      int piv = -1;
      for (int i = r; i < static_cast<int>(m.size()); ++i)
        if (m[i][c] % p) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(m[piv], m[r]);
      long inv = 1;
      for (long t = 1; t < p; ++t)
        if (m[r][c] * t % p == 1) inv = t;
      for (int i = 0; i < static_cast<int>(m.size()); ++i) {
        if (i == r || m[i][c] % p == 0) continue;
        long f = m[i][c] * inv % p;
        for (int k = 0; k < n; ++k) m[i][k] = ((m[i][k] - f * m[r][k]) % p + p) % p;
      }
      ++r;
    }
    return r;
  };
  std::vector<int> degs;
  for (const auto& e : idem) {
    bool primitive_idem = true;
    for (const auto& f : idem)
      if (f != e && mult(f, e) == f) {
        primitive_idem = false;
        break;
      }
    if (!primitive_idem) continue;
    std::vector<std::vector<long>> rows;
    for (int j = 0; j < n; ++j) {
      std::vector<long> bj(n, 0);
      bj[j] = 1;
      rows.push_back(mult(e, bj));
    }
    degs.push_back(rank_mod_p(rows));
  }
  std::sort(degs.begin(), degs.end());
  return degs;
}

TwoSquaresResult NumberField::minus_one_sum_of_two_squares(int height) const {
  TwoSquaresResult r;
  if (d_->r1 > 0) {
    r.status = TwoSquaresResult::False;
    r.method = "real embedding: sums of squares are nonnegative there";
    return r;
  }
  if (auto s = sqrt(from_int(-1))) {
    r.status = TwoSquaresResult::True;
    r.method = "sqrt(-1) in F";
    r.a = *s;
    r.b = zero();
    return r;
  }
  // bounded-height certificate search
  int n = d_->n;
  long side = 2L * height + 1;
  long total = 1;
  for (int i = 0; i < n && total <= 200000; ++i) total *= side;
  if (total <= 200000) {
    for (long code = 0; code < total; ++code) {
      IntVec c(n);
      long t = code;
      for (int i = 0; i < n; ++i) {
        c[i] = t % side - height;
        t /= side;
      }
      FieldElement a = from_coords(c);
      if (a.is_zero()) continue;
      if (auto b = sqrt(from_int(-1) - a * a)) {
        r.status = TwoSquaresResult::True;
        r.method = "explicit certificate (bounded-height search)";
        r.a = a;
        r.b = *b;
        return r;
      }
    }
  }
  if (d_->basis_origin.find("unverified") != std::string::npos) {
    r.method = "no certificate within height bound; local criterion needs a maximal order";
    return r;
  }
  auto degs = local_degrees_at(2);
  bool all_even = std::all_of(degs.begin(), degs.end(), [](int x) { return x % 2 == 0; });
  r.status = all_even ? TwoSquaresResult::True : TwoSquaresResult::False;
  r.method = "local degrees above 2 (Hasse principle for the quaternion algebra (-1,-1))";
  return r;
}

bool NumberField::sqrt5_in_field() const { return sqrt(from_int(5)).has_value(); }

}  // namespace vorbloch
