#pragma once

#include <mpfr.h>

#include <string>

#include "vorbloch/rational.hpp"

namespace vorbloch {

// RAII wrapper over an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec = 128);
  Real(const Real& o);
  Real(Real&& o) noexcept;
  Real& operator=(const Real& o);
  Real& operator=(Real&& o) noexcept;
  ~Real();

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  std::string to_string(int digits) const;

 private:
  mpfr_t v_;
};

constexpr mpfr_prec_t kRadPrec = 64;

// Real interval [mid - rad, mid + rad]; rad is always an upper bound.
class Ball {
 public:
  explicit Ball(mpfr_prec_t prec = 128);
  static Ball from_rational(const Rational& q, mpfr_prec_t prec);
  static Ball from_int(long v, mpfr_prec_t prec);
  static Ball pi(mpfr_prec_t prec);
  static Ball catalan(mpfr_prec_t prec);
  // [lo, hi] exactly representable endpoints enlarged outward
  static Ball from_endpoints(const Real& lo, const Real& hi, mpfr_prec_t prec);

  Real mid;
  Real rad;

  mpfr_prec_t prec() const { return mid.prec(); }
  Real upper() const;  // mid + rad rounded up
  Real lower() const;  // mid - rad rounded down
  Real abs_upper() const;
  Real abs_lower() const;  // max(0, |mid| - rad)
  bool positive() const;   // certainly > 0
  bool negative() const;
  bool contains_zero() const { return !positive() && !negative(); }
  bool contains(const Ball& o) const;
  bool overlaps(const Ball& o) const;
  bool contains(const Rational& q) const;
  double width() const;  // 2*rad as double
  double mid_d() const { return mid.to_double(); }
  void add_error(const Real& e);
  void add_error(double e);

  Ball operator-() const;
  friend Ball operator+(const Ball& x, const Ball& y);
  friend Ball operator-(const Ball& x, const Ball& y);
  friend Ball operator*(const Ball& x, const Ball& y);
  friend Ball operator/(const Ball& x, const Ball& y);
};

Ball sqrt(const Ball& x);
Ball log(const Ball& x);
Ball exp(const Ball& x);
Ball sqr(const Ball& x);
Ball abs(const Ball& x);
Ball mul_2exp(const Ball& x, long e);
// arg of x + iy; throws if the ball touches the branch cut (x <= 0, y = 0)
Ball atan2(const Ball& y, const Ball& x);
Ball intersect(const Ball& a, const Ball& b);
Ball union_hull(const Ball& a, const Ball& b);

struct CBall {
  Ball re, im;
  explicit CBall(mpfr_prec_t prec = 128) : re(prec), im(prec) {}
  CBall(Ball r, Ball i) : re(std::move(r)), im(std::move(i)) {}
  mpfr_prec_t prec() const { return re.prec(); }
  CBall conj() const { return CBall(re, -im); }
  bool contains_zero() const { return re.contains_zero() && im.contains_zero(); }
  double rad_max() const;
};

CBall operator+(const CBall& x, const CBall& y);
CBall operator-(const CBall& x, const CBall& y);
CBall operator*(const CBall& x, const CBall& y);
CBall operator/(const CBall& x, const CBall& y);
CBall operator*(const Ball& s, const CBall& y);
Ball abs2(const CBall& z);
Ball abs(const CBall& z);
Ball arg(const CBall& z);
CBall log(const CBall& z);

std::string mid_string(const Ball& b, int digits = 30);
std::string rad_string(const Ball& b);

}  // namespace vorbloch
