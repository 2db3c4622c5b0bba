#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vorbloch/ball.hpp"
#include "vorbloch/linalg.hpp"
#include "vorbloch/rational.hpp"

namespace vorbloch {

using Poly = std::vector<Integer>;      // c0 + c1 x + ... (monic when used as min_poly)
using RatPoly = std::vector<Rational>;  // same layout

enum class FieldKind { TotallyReal, CM, Other };

struct FieldData;

class FieldElement {
 public:
  FieldElement() = default;
  FieldElement(std::shared_ptr<const FieldData> f, RatVec coords);

  const RatVec& coords() const { return c_; }
  const FieldData& data() const { return *f_; }
  const std::shared_ptr<const FieldData>& data_ptr() const { return f_; }
  bool valid() const { return f_ != nullptr; }

  bool is_zero() const;
  bool is_one() const;
  bool is_integral() const;  // integer coordinates on the integral basis

  FieldElement operator-() const;
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  FieldElement operator*(const Rational& q) const;
  bool operator==(const FieldElement& o) const { return c_ == o.c_; }
  bool operator!=(const FieldElement& o) const { return c_ != o.c_; }
  bool operator<(const FieldElement& o) const { return c_ < o.c_; }

  FieldElement inverse() const;
  FieldElement pow(long e) const;
  FieldElement conj() const;  // CM involution; identity for totally real fields
  Rational norm() const;
  Rational trace() const;
  RatMat mult_matrix() const;  // column j = coords of this * b_j

  std::string to_string() const;

 private:
  std::shared_ptr<const FieldData> f_;
  RatVec c_;
};

struct TwoSquaresResult {
  enum Status { True, False, Undecided } status = Undecided;
  std::string method;
  std::optional<FieldElement> a, b;  // certificate when found explicitly
};

struct FieldData {
  int n = 0;
  Poly min_poly;
  std::vector<RatPoly> basis;  // integral basis as polynomials in the generator
  std::string basis_origin;    // "user-supplied", "imaginary-quadratic-standard", "power-basis (maximality unverified)"
  RatMat to_power, from_power;
  std::vector<RatVec> mul;  // mul[i*n+j] = coords of b_i*b_j
  RatVec one;               // coords of 1
  RatVec gen;               // coords of the generator θ
  RatVec basis_trace;
  int r1 = 0, r2 = 0;
  Integer disc;
  FieldKind kind = FieldKind::Other;
  RatMat conj;  // involution on coordinates (identity if totally real)
  int mu_order = 2;
  RatVec mu_gen;
  // certified roots: r1 real ascending, then r2 with Im>0 by ascending real part, then their conjugates
  std::vector<CBall> roots;
  mpfr_prec_t roots_prec = 0;
};

class NumberField {
 public:
  NumberField() = default;
  explicit NumberField(std::shared_ptr<const FieldData> d) : d_(std::move(d)) {}

  static NumberField rationals();
  // Throws std::invalid_argument on reducible/non-monic input or a basis not closed under multiplication.
  static NumberField create(const Poly& min_poly, const std::optional<std::vector<RatPoly>>& basis = std::nullopt);

  const FieldData& data() const { return *d_; }
  const std::shared_ptr<const FieldData>& ptr() const { return d_; }
  int degree() const { return d_->n; }
  int r1() const { return d_->r1; }
  int r2() const { return d_->r2; }
  const Integer& disc() const { return d_->disc; }
  FieldKind kind() const { return d_->kind; }
  bool is_imaginary_quadratic() const { return d_->n == 2 && d_->r2 == 1; }

  FieldElement zero() const;
  FieldElement one() const;
  FieldElement from_int(long v) const { return one() * Rational(v); }
  FieldElement from_rational(const Rational& q) const { return one() * q; }
  FieldElement from_coords(const RatVec& c) const;
  FieldElement from_coords(const IntVec& c) const;
  FieldElement basis_element(int i) const;
  FieldElement generator() const;
  FieldElement from_power(const RatPoly& p) const;  // polynomial in the generator
  FieldElement root_of_unity() const;               // generator of μ_F
  int mu_order() const { return d_->mu_order; }

  int num_embeddings() const { return d_->r1 + d_->r2; }
  // σ is 1-based, 1..r1+r2. Width <= 2^(1-precision) max(1,|σ(x)|).
  CBall embed(const FieldElement& x, int sigma, int precision) const;
  // All n complex images (root order of FieldData::roots), at roughly the requested precision.
  std::vector<CBall> embed_all(const FieldElement& x, int precision) const;

  // Gram matrix of Tr(x * conj(y)) on the basis (exact; requires TotallyReal or CM).
  RatMat t2_gram() const;
  // All elements of the basis lattice with Tr(x conj x) <= bound, up to sign.
  std::vector<FieldElement> short_elements(const Rational& bound) const;
  // Square root in F of an integral element, if one exists.
  std::optional<FieldElement> sqrt(const FieldElement& y) const;

  TwoSquaresResult minus_one_sum_of_two_squares(int height = 20) const;
  bool sqrt5_in_field() const;
  // Local degrees [F_p : Q_2] for the primes above 2 (from O_F/2O_F).
  std::vector<int> local_degrees_at(long p) const;

 private:
  std::shared_ptr<const FieldData> d_;
};

// Polynomial helpers over Q.
RatPoly to_ratpoly(const Poly& p);
RatPoly poly_mul(const RatPoly& a, const RatPoly& b);
RatPoly poly_rem(RatPoly a, const RatPoly& b);
RatPoly poly_gcd(RatPoly a, RatPoly b);
RatPoly poly_derivative(const RatPoly& a);
void poly_trim(RatPoly& a);
int sturm_real_root_count(const Poly& p);
bool is_irreducible(const Poly& p);
FieldElement eval_poly(const Poly& p, const FieldElement& x);

std::string to_string(FieldKind k);

}  // namespace vorbloch
