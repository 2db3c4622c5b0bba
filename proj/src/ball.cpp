#include "vorbloch/ball.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace vorbloch {

Real::Real(mpfr_prec_t prec) {
  mpfr_init2(v_, prec);
  mpfr_set_zero(v_, 1);
}
Real::Real(const Real& o) {
  mpfr_init2(v_, o.prec());
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
Real::Real(Real&& o) noexcept {
  mpfr_init2(v_, o.prec());
  mpfr_swap(v_, o.v_);
}
Real& Real::operator=(const Real& o) {
  if (this != &o) {
    mpfr_set_prec(v_, o.prec());
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
Real& Real::operator=(Real&& o) noexcept {
  if (this != &o) {
    if (prec() != o.prec()) mpfr_set_prec(v_, o.prec());
    mpfr_swap(v_, o.v_);
  }
  return *this;
}
Real::~Real() { mpfr_clear(v_); }

std::string Real::to_string(int digits) const {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Rg", digits, v_);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

namespace {

void add_round_err(Ball& b) {
  Real e(kRadPrec);
  mpfr_abs(e.get(), b.mid.get(), MPFR_RNDU);
  mpfr_mul_2si(e.get(), e.get(), 1 - static_cast<long>(b.prec()), MPFR_RNDU);
  mpfr_add(b.rad.get(), b.rad.get(), e.get(), MPFR_RNDU);
}

mpfr_prec_t pmax(const Ball& x, const Ball& y) { return std::max(x.prec(), y.prec()); }

// |v| rounded up into a radius-precision value.
Real abs_up(const Real& v) {
  Real r(kRadPrec);
  mpfr_abs(r.get(), v.get(), MPFR_RNDU);
  return r;
}

}  // namespace

Ball::Ball(mpfr_prec_t prec) : mid(prec), rad(kRadPrec) {}

Ball Ball::from_rational(const Rational& q, mpfr_prec_t prec) {
  Ball b(prec);
  if (mpfr_set_q(b.mid.get(), q.get_mpq_t(), MPFR_RNDN) != 0) add_round_err(b);
  return b;
}

Ball Ball::from_int(long v, mpfr_prec_t prec) {
  Ball b(prec);
  if (mpfr_set_si(b.mid.get(), v, MPFR_RNDN) != 0) add_round_err(b);
  return b;
}

Ball Ball::pi(mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_const_pi(b.mid.get(), MPFR_RNDN);
  add_round_err(b);
  return b;
}

Ball Ball::catalan(mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_const_catalan(b.mid.get(), MPFR_RNDN);
  add_round_err(b);
  return b;
}

Ball Ball::from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec) {
  Ball b(prec);
  mpfr_add(b.mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(b.mid.get(), b.mid.get(), 1, MPFR_RNDN);
  Real a(kRadPrec), c(kRadPrec);
  mpfr_sub(a.get(), hi.get(), b.mid.get(), MPFR_RNDU);
  mpfr_sub(c.get(), b.mid.get(), lo.get(), MPFR_RNDU);
  mpfr_max(b.rad.get(), a.get(), c.get(), MPFR_RNDU);
  return b;
}

Real Ball::upper() const {
  Real r(prec() + 8);
  mpfr_add(r.get(), mid.get(), rad.get(), MPFR_RNDU);
  return r;
}

Real Ball::lower() const {
  Real r(prec() + 8);
  mpfr_sub(r.get(), mid.get(), rad.get(), MPFR_RNDD);
  return r;
}

Real Ball::abs_upper() const {
  Real r(prec() + 8);
  mpfr_abs(r.get(), mid.get(), MPFR_RNDU);
  mpfr_add(r.get(), r.get(), rad.get(), MPFR_RNDU);
  return r;
}

Real Ball::abs_lower() const {
  Real r(prec() + 8);
  mpfr_abs(r.get(), mid.get(), MPFR_RNDD);
  mpfr_sub(r.get(), r.get(), rad.get(), MPFR_RNDD);
  if (mpfr_sgn(r.get()) < 0) mpfr_set_zero(r.get(), 1);
  return r;
}

bool Ball::positive() const { return mpfr_sgn(lower().get()) > 0; }
bool Ball::negative() const { return mpfr_sgn(upper().get()) < 0; }

bool Ball::contains(const Ball& o) const {
  return mpfr_lessequal_p(lower().get(), o.lower().get()) && mpfr_greaterequal_p(upper().get(), o.upper().get());
}

bool Ball::overlaps(const Ball& o) const {
  return mpfr_lessequal_p(lower().get(), o.upper().get()) && mpfr_lessequal_p(o.lower().get(), upper().get());
}

bool Ball::contains(const Rational& q) const {
  mpq_t lo, hi;
  mpq_init(lo);
  mpq_init(hi);
  mpfr_get_q(lo, lower().get());
  mpfr_get_q(hi, upper().get());
  bool in = mpq_cmp(lo, q.get_mpq_t()) <= 0 && mpq_cmp(q.get_mpq_t(), hi) <= 0;
  mpq_clear(lo);
  mpq_clear(hi);
  return in;
}

double Ball::width() const { return 2 * mpfr_get_d(rad.get(), MPFR_RNDU); }

void Ball::add_error(const Real& e) {
  Real a = abs_up(e);
  mpfr_add(rad.get(), rad.get(), a.get(), MPFR_RNDU);
}

void Ball::add_error(double e) {
  Real a(kRadPrec);
  mpfr_set_d(a.get(), e < 0 ? -e : e, MPFR_RNDU);
  mpfr_add(rad.get(), rad.get(), a.get(), MPFR_RNDU);
}

Ball Ball::operator-() const {
  Ball b = *this;
  mpfr_neg(b.mid.get(), b.mid.get(), MPFR_RNDN);
  return b;
}

Ball operator+(const Ball& x, const Ball& y) {
  Ball z(pmax(x, y));
  int t = mpfr_add(z.mid.get(), x.mid.get(), y.mid.get(), MPFR_RNDN);
  mpfr_add(z.rad.get(), x.rad.get(), y.rad.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball operator-(const Ball& x, const Ball& y) { return x + (-y); }

Ball operator*(const Ball& x, const Ball& y) {
  Ball z(pmax(x, y));
  int t = mpfr_mul(z.mid.get(), x.mid.get(), y.mid.get(), MPFR_RNDN);
  Real ax = abs_up(x.mid), ay = abs_up(y.mid), s(kRadPrec);
  mpfr_mul(s.get(), ax.get(), y.rad.get(), MPFR_RNDU);
  mpfr_add(z.rad.get(), z.rad.get(), s.get(), MPFR_RNDU);
  mpfr_mul(s.get(), ay.get(), x.rad.get(), MPFR_RNDU);
  mpfr_add(z.rad.get(), z.rad.get(), s.get(), MPFR_RNDU);
  mpfr_mul(s.get(), x.rad.get(), y.rad.get(), MPFR_RNDU);
  mpfr_add(z.rad.get(), z.rad.get(), s.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball operator/(const Ball& x, const Ball& y) {
  Real ylo = y.abs_lower();
  if (mpfr_sgn(ylo.get()) <= 0) throw std::domain_error("ball division by an interval containing zero");
  Ball z(pmax(x, y));
  int t = mpfr_div(z.mid.get(), x.mid.get(), y.mid.get(), MPFR_RNDN);
  Real am = abs_up(z.mid), s(kRadPrec);
  // |x/y - xm/ym| <= (rx + |xm/ym| ry) / min|y|
  Real slack(kRadPrec);
  mpfr_mul_2si(slack.get(), am.get(), 1 - static_cast<long>(z.prec()), MPFR_RNDU);
  mpfr_add(am.get(), am.get(), slack.get(), MPFR_RNDU);
  mpfr_mul(s.get(), am.get(), y.rad.get(), MPFR_RNDU);
  mpfr_add(s.get(), s.get(), x.rad.get(), MPFR_RNDU);
  mpfr_div(z.rad.get(), s.get(), ylo.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball sqr(const Ball& x) { return x * x; }

Ball abs(const Ball& x) {
  if (!x.contains_zero()) {
    Ball b = x;
    mpfr_abs(b.mid.get(), b.mid.get(), MPFR_RNDN);
    return b;
  }
  Real zero(x.prec());
  return Ball::from_endpoints(zero, x.abs_upper(), x.prec());
}

Ball mul_2exp(const Ball& x, long e) {
  Ball b = x;
  mpfr_mul_2si(b.mid.get(), b.mid.get(), e, MPFR_RNDN);
  mpfr_mul_2si(b.rad.get(), b.rad.get(), e, MPFR_RNDU);
  return b;
}

Ball sqrt(const Ball& x) {
  Real lo = x.lower();
  if (mpfr_sgn(lo.get()) < 0) {
    if (x.negative()) throw std::domain_error("sqrt of a negative ball");
    // straddles zero: clamp to [0, sqrt(upper)]
    Real hi(x.prec());
    mpfr_sqrt(hi.get(), x.upper().get(), MPFR_RNDU);
    Real zero(x.prec());
    return Ball::from_endpoints(zero, hi, x.prec());
  }
  Ball z(x.prec());
  int t = mpfr_sqrt(z.mid.get(), x.mid.get(), MPFR_RNDN);
  if (mpfr_sgn(x.rad.get()) != 0) {
    Real s(kRadPrec), a(kRadPrec), b(kRadPrec);
    mpfr_sqrt(s.get(), x.mid.get(), MPFR_RNDD);
    mpfr_sqrt(b.get(), x.rad.get(), MPFR_RNDU);
    if (mpfr_sgn(s.get()) > 0) {
      mpfr_div(a.get(), x.rad.get(), s.get(), MPFR_RNDU);
      mpfr_min(b.get(), a.get(), b.get(), MPFR_RNDU);
    }
    mpfr_set(z.rad.get(), b.get(), MPFR_RNDU);
  }
  if (t != 0) add_round_err(z);
  return z;
}

Ball log(const Ball& x) {
  Real lo = x.lower();
  if (mpfr_sgn(lo.get()) <= 0) throw std::domain_error("log of a ball not certainly positive");
  Ball z(x.prec());
  int t = mpfr_log(z.mid.get(), x.mid.get(), MPFR_RNDN);
  mpfr_div(z.rad.get(), x.rad.get(), lo.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball exp(const Ball& x) {
  Ball z(x.prec());
  int t = mpfr_exp(z.mid.get(), x.mid.get(), MPFR_RNDN);
  Real up(kRadPrec);
  mpfr_exp(up.get(), x.upper().get(), MPFR_RNDU);
  mpfr_mul(z.rad.get(), up.get(), x.rad.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball atan2(const Ball& y, const Ball& x) {
  if (!x.positive() && y.contains_zero())
    throw std::domain_error("argument ball touches the branch cut");
  Ball z(pmax(x, y));
  int t = mpfr_atan2(z.mid.get(), y.mid.get(), x.mid.get(), MPFR_RNDN);
  Real r(z.prec() + 8), s(kRadPrec);
  mpfr_hypot(r.get(), x.mid.get(), y.mid.get(), MPFR_RNDD);
  mpfr_add(s.get(), x.rad.get(), y.rad.get(), MPFR_RNDU);
  mpfr_sub(r.get(), r.get(), s.get(), MPFR_RNDD);
  if (mpfr_sgn(r.get()) <= 0) throw std::domain_error("argument of a ball containing zero");
  mpfr_div(z.rad.get(), s.get(), r.get(), MPFR_RNDU);
  if (t != 0) add_round_err(z);
  return z;
}

Ball intersect(const Ball& a, const Ball& b) {
  Real lo = a.lower(), hi = a.upper();
  Real blo = b.lower(), bhi = b.upper();
  if (mpfr_less_p(lo.get(), blo.get())) lo = blo;
  if (mpfr_greater_p(hi.get(), bhi.get())) hi = bhi;
  if (mpfr_greater_p(lo.get(), hi.get())) throw std::logic_error("intersection of disjoint enclosures");
  return Ball::from_endpoints(lo, hi, std::max(a.prec(), b.prec()));
}

Ball union_hull(const Ball& a, const Ball& b) {
  Real lo = a.lower(), hi = a.upper();
  Real blo = b.lower(), bhi = b.upper();
  if (mpfr_greater_p(lo.get(), blo.get())) lo = blo;
  if (mpfr_less_p(hi.get(), bhi.get())) hi = bhi;
  return Ball::from_endpoints(lo, hi, std::max(a.prec(), b.prec()));
}

double CBall::rad_max() const {
  return std::max(mpfr_get_d(re.rad.get(), MPFR_RNDU), mpfr_get_d(im.rad.get(), MPFR_RNDU));
}

CBall operator+(const CBall& x, const CBall& y) { return CBall(x.re + y.re, x.im + y.im); }
CBall operator-(const CBall& x, const CBall& y) { return CBall(x.re - y.re, x.im - y.im); }
CBall operator*(const CBall& x, const CBall& y) {
  return CBall(x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re);
}
CBall operator*(const Ball& s, const CBall& y) { return CBall(s * y.re, s * y.im); }
CBall operator/(const CBall& x, const CBall& y) {
  Ball d = abs2(y);
  CBall n = x * y.conj();
  return CBall(n.re / d, n.im / d);
}

Ball abs2(const CBall& z) {
  Ball a = sqr(z.re) + sqr(z.im);
  // a sum of squares is nonnegative; tighten the lower end
  if (a.contains_zero()) {
    Real zero(a.prec());
    return Ball::from_endpoints(zero, a.upper(), a.prec());
  }
  return a;
}

Ball abs(const CBall& z) { return sqrt(abs2(z)); }
Ball arg(const CBall& z) { return atan2(z.im, z.re); }

CBall log(const CBall& z) { return CBall(mul_2exp(log(abs2(z)), -1), arg(z)); }

std::string mid_string(const Ball& b, int digits) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.*Re", digits - 1, b.mid.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

std::string rad_string(const Ball& b) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.6RUe", b.rad.get());
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

}  // namespace vorbloch
