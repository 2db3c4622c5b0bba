#include "vorbloch/lattice.hpp"

#include <algorithm>
#include <stdexcept>

namespace vorbloch {

bool is_positive_definite(const RatMat& q) { return ldl_positive(q).has_value(); }

namespace {

struct Enumerator {
  size_t n;
  const LDL& f;
  Rational bound;
  IntVec x;
  std::vector<IntVec>* out;

  void level(size_t j, const Rational& used, bool all_zero_above) {
    Rational c = 0;
    for (size_t i = j + 1; i < n; ++i)
      if (x[i] != 0) c -= f.L(i, j) * x[i];
    Rational rem = (bound - used) / f.D[j];
    if (rem < 0) return;
    Integer lo = ceil_sub_sqrt(c, rem);
    Integer hi = floor_add_sqrt(c, rem);
    if (all_zero_above && lo < 0) lo = 0;
    for (Integer v = lo; v <= hi; ++v) {
      x[j] = v;
      Rational d = Rational(v) - c;
      Rational u = used + f.D[j] * d * d;
      if (u > bound) continue;
      bool zero = all_zero_above && v == 0;
      if (j == 0) {
        if (!zero) out->push_back(x);
      } else {
        level(j - 1, u, zero);
      }
    }
    x[j] = 0;
  }
};

}  // namespace

std::vector<IntVec> fincke_pohst(const RatMat& q, const Rational& bound) {
  auto f = ldl_positive(q);
  if (!f) throw std::invalid_argument("fincke_pohst: form is not positive definite");
  std::vector<IntVec> out;
  if (q.rows == 0 || bound <= 0) return out;
  Enumerator e{q.rows, *f, bound, IntVec(q.rows, Integer(0)), &out};
  e.level(q.rows - 1, Rational(0), true);
  for (auto& v : out) v = canonical_sign(std::move(v));
  std::sort(out.begin(), out.end());
  return out;
}

MinData minimum(const RatMat& q) {
  if (q.rows == 0) throw std::invalid_argument("minimum: empty form");
  Rational c = q(0, 0);
  for (size_t i = 1; i < q.rows; ++i) c = std::min(c, q(i, i));
  auto vs = fincke_pohst(q, c);
  MinData md;
  md.min = c;
  for (const auto& v : vs) md.min = std::min(md.min, quad_value(q, v));
  for (auto& v : vs)
    if (quad_value(q, v) == md.min) md.vectors.push_back(std::move(v));
  return md;
}

}  // namespace vorbloch
