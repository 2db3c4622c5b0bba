#pragma once

#include <string>
#include <vector>

#include "vorbloch/ball.hpp"
#include "vorbloch/bloch.hpp"

namespace vorbloch {

// Bloch-Wigner dilogarithm; radius covers evaluation and truncation error.
// Throws std::domain_error when z is too close to 0 or 1 for its radius.
Ball bloch_wigner_D(const CBall& z, int precision);

// sum n_k D(sigma(x_k)), sigma in 1..r1+r2
Ball regulator_entry(const NumberField& F, const PreBlochElement& beta, int sigma, int precision);

// Residue degree counts above p: counts[f] = number of primes of residue degree f.
std::vector<int> residue_degree_counts(const NumberField& F, long p);

struct ZetaValue {
  Ball value;
  long prime_bound = 0;
  double tail_relative = 0;  // certified relative bound for the omitted Euler factors
};
// Euler product over p <= prime_bound with an explicit tail enclosure.
ZetaValue zeta_F_2(const NumberField& F, int precision, long prime_bound = 10000000);

// 2^{1-3 r2} pi^{-2 r2} |disc|^{3/2} zeta_F(2)
Ball borel_volume(const NumberField& F, const Ball& zeta2);

enum class Verdict { Pass, Fail, Inconclusive };
std::string to_string(Verdict v);

struct IndexReport {
  Ball det_M, vol;
  long N = 0;
  long k2 = 0, k3tor = 0;
  int r2 = 0;
  Ball lemma_ratio;     // |det M| / ((2N)^r2 vol)
  Verdict lemma = Verdict::Inconclusive;
  Ball det_over_2pi;    // |det M| / (2 pi)^r2
  Ball observed_index;  // |det M| / ((2 pi)^r2 R_2), R_2 from the zeta value and the K-group orders
  Rational index_general;  // 2^{1+r2} N^r2 k2 / k3tor
  Rational index_example;  // k2 (imaginary quadratic constant)
  std::string matches;          // observed_index vs the constants: "index_general", "index_example", "both" or "neither"
  std::string literal_matches;  // det_over_2pi vs the same constants
  double tolerance = 1e-6;
};

Ball ball_det(const std::vector<std::vector<Ball>>& m);
IndexReport index_report(const NumberField& F, const std::vector<std::vector<Ball>>& M, const Ball& zeta2, long N,
                         long k2, long k3tor, double tolerance = 1e-6);

}  // namespace vorbloch
