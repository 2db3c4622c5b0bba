#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vorbloch/cell_complex.hpp"

namespace vorbloch {

// Finite integer combination of [x], x in F minus {0, 1}.
struct PreBlochElement {
  std::map<FieldElement, Integer> terms;
  void add(const FieldElement& x, const Integer& n);
  PreBlochElement& operator+=(const PreBlochElement& o);
  PreBlochElement scaled(const Integer& k) const;
  bool all_coefficients_even() const;
};

// Cross-ratio of four cusps: x for (inf, 0, 1, x); nullopt on repeated points.
std::optional<FieldElement> cr3(const NumberField& F, const std::array<Cusp, 4>& p);
std::optional<FieldElement> cr3(const std::array<std::array<FieldElement, 2>, 4>& v);
// (a, b) with (p0 | p1)^{-1} p2 = (a, b)^T; nullopt on repeated points in P^1.
std::optional<std::pair<FieldElement, FieldElement>> cr2(const std::array<std::array<FieldElement, 2>, 3>& p);

// Coordinates in the modified wedge square of F^* (norm-Euclidean imaginary quadratic F):
// mu part zeta ^ zeta (mod m), zeta ^ c_i (mod w, or w/2 modulo {+-1} ^ F^*), c_i ^ c_j (i < j).
struct WedgeElement {
  Integer mu_mu;
  std::map<int, Integer> mu_c;
  std::map<std::pair<int, int>, Integer> c_c;
  bool is_zero() const;
};

class WedgeSpace {
 public:
  // modulo_nu: work modulo {+-1} ^ F^*.
  WedgeSpace(NumberField F, bool modulo_nu = true);
  WedgeElement zero() const { return {}; }
  WedgeElement wedge(const FieldElement& a, const FieldElement& b);
  void add(WedgeElement& acc, const WedgeElement& x, const Integer& k) const;
  std::string to_string(const WedgeElement& x) const;
  const std::vector<FieldElement>& primes() const { return primes_; }
  int mu_order() const { return w_; }

 private:
  struct Decomp {
    long zeta = 0;
    std::map<int, long> exps;
  };
  Decomp decompose(const FieldElement& x);
  void reduce(WedgeElement& x) const;

  NumberField F_;
  bool mod_nu_;
  int w_, m_;
  std::vector<FieldElement> units_;
  std::vector<FieldElement> primes_;
};

WedgeElement delta2(WedgeSpace& W, const PreBlochElement& e);
// [x] - [y] + [y/x] - [(1 - 1/x)/(1 - 1/y)] + [(1 - x)/(1 - y)]; throws std::invalid_argument on degenerate input.
PreBlochElement five_term(const FieldElement& x, const FieldElement& y);

// 2 * sum_j w_j sum_k sign_k [cr3(tetrahedron)]; throws std::logic_error on a degenerate tetrahedron.
PreBlochElement bloch_from_cycle(const NumberField& F, const VoronoiComplex& cx, const H3Generator& gen);

struct BlochCertificate {
  std::string regime;  // "exact" or "unsupported"
  bool passed = false;
  WedgeElement residue;
  std::string residue_text;
};
BlochCertificate verify_bloch(const NumberField& F, const PreBlochElement& beta, bool modulo_nu = true);

struct TorsionGenerator {
  int p = 0;
  int nu_p = 0;  // largest v with zeta_{p^v} + zeta_{p^v}^{-1} in F
  int d_p = 0;   // largest d with zeta_{p^d} in F
  PreBlochElement element;
  Integer order_hat, order_B, order_Bbar;
  std::string note;
};
TorsionGenerator torsion_generator(const NumberField& F, int p);

struct ChainCheck {
  bool ok = true;
  int sign = 0;  // f2 d3 = sign * delta f3
  size_t tested = 0;
  std::string counterexample;
};
// Random 4-tuples of O_F^2 vectors with coordinates in [-bound, bound].
ChainCheck chain_compatibility_check(const NumberField& F, size_t trials, unsigned seed, int bound = 5);

}  // namespace vorbloch
