#pragma once

#include <vector>

#include "vorbloch/linalg.hpp"

namespace vorbloch {

// Nonzero x in Z^N with Q[x] <= C, one per ±pair (first nonzero coordinate positive),
// sorted lexicographically. Throws std::invalid_argument unless Q is positive definite.
std::vector<IntVec> fincke_pohst(const RatMat& q, const Rational& bound);

struct MinData {
  Rational min;
  std::vector<IntVec> vectors;  // up to sign, canonical representatives
};

MinData minimum(const RatMat& q);

bool is_positive_definite(const RatMat& q);

}  // namespace vorbloch
