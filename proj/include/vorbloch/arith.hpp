#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vorbloch/field.hpp"

namespace vorbloch {

bool is_unit(const FieldElement& x);
// Roots of unity in O_F (all w of them), powers of the generator.
std::vector<FieldElement> torsion_units(const NumberField& F);
// Class number of an imaginary quadratic field by counting reduced forms.
long imaginary_quadratic_class_number(const Integer& disc);
// Imaginary quadratic with disc in {-3,-4,-7,-8,-11}.
bool is_norm_euclidean_imaginary_quadratic(const NumberField& F);

// a = q b + r with |N(r)| < |N(b)|; throws std::domain_error if no such rounding exists.
std::pair<FieldElement, FieldElement> euclid_divmod(const FieldElement& a, const FieldElement& b);
struct Bezout {
  FieldElement g, s, t;  // s a + t b = g
};
Bezout bezout(const FieldElement& a, const FieldElement& b);

// Prime element factorization in a norm-Euclidean imaginary quadratic field:
// x = unit * prod p_i^e_i with canonical prime representatives.
struct Factorization {
  FieldElement unit;
  std::vector<std::pair<FieldElement, int>> primes;
};
Factorization factor(const NumberField& F, const FieldElement& x);
// Canonical associate: the lexicographically greatest coordinate vector among u x, u torsion unit.
FieldElement canonical_associate(const NumberField& F, const FieldElement& x);

// C_r(y) with C_r(z + 1/z) = z^r + z^-r, r >= 0.
FieldElement dickson(const FieldElement& y, int r);

}  // namespace vorbloch
