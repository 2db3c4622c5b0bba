#include "vorbloch/regulator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace vorbloch {

namespace {

// B_0 .. B_m
const std::vector<Rational>& bernoulli(size_t m) {
  static std::vector<Rational> b{Rational(1)};
  while (b.size() <= m) {
    size_t k = b.size();
    Rational s = 0;
    Integer binom = 1;  // C(k+1, j)
    for (size_t j = 0; j < k; ++j) {
      s += Rational(binom) * b[j];
      binom = binom * Integer(k + 1 - j) / Integer(j + 1);
    }
    Rational v = -s / Rational(Integer(k + 1));
    v.canonicalize();
    b.push_back(v);
  }
  return b;
}

}  // namespace

Ball bloch_wigner_D(const CBall& z0, int precision) {
  mpfr_prec_t wp = precision + 40;
  Ball one = Ball::from_int(1, wp);
  CBall z = z0;
  int sign = 1;
  double re = z.re.mid_d(), im = z.im.mid_d();
  if (re * re + im * im > 1) {
    z = CBall(one, Ball::from_int(0, wp)) / z;
    sign = -sign;
  }
  if (z.re.mid_d() > 0.5) {
    z = CBall(one, Ball::from_int(0, wp)) - z;
    sign = -sign;
  }
  if (z.contains_zero()) throw std::domain_error("dilogarithm argument too close to 0 or 1");
  CBall w = CBall(one, Ball::from_int(0, wp)) - z;
  CBall lw = log(w);
  CBall u(-lw.re, -lw.im);
  double umax = abs(u).upper().to_double();
  double rho = umax / (2 * M_PI);
  if (rho >= 0.9) throw std::domain_error("dilogarithm reduction failed");
  // tail after K terms: 4|u| rho^{2K+2} / (1 - rho^2)
  size_t K = 1;
  auto tail = [&](size_t k) { return 4 * umax * std::pow(rho, 2.0 * k + 2) / (1 - rho * rho); };
  while (tail(K) > std::ldexp(1.0, -static_cast<int>(wp)) && K < 4000) ++K;
  const auto& B = bernoulli(2 * K);
  CBall u2 = u * u;
  CBall li = u - Ball::from_rational(Rational(1, 4), wp) * u2;
  CBall p = u;
  Integer fact = 1;  // (2k+1)!
  for (size_t k = 1; k <= K; ++k) {
    p = p * u2;
    fact *= Integer(2 * k) * Integer(2 * k + 1);
    Rational c = B[2 * k] / Rational(fact);
    li = li + Ball::from_rational(c, wp) * p;
  }
  Ball d = li.im + (-u.im) * log(abs(z));
  d.add_error(2 * tail(K) + std::ldexp(1.0, -static_cast<int>(wp)));
  return sign > 0 ? d : -d;
}

Ball regulator_entry(const NumberField& F, const PreBlochElement& beta, int sigma, int precision) {
  mpfr_prec_t wp = precision + 40;
  Ball acc = Ball::from_int(0, wp);
  for (const auto& [x, n] : beta.terms) {
    if (sigma <= F.r1()) continue;
    if (F.kind() == FieldKind::CM && x.conj() == x) continue;
    CBall z = F.embed(x, sigma, static_cast<int>(wp));
    acc = acc + Ball::from_rational(Rational(n), wp) * bloch_wigner_D(z, precision);
  }
  return acc;
}

std::vector<int> residue_degree_counts(const NumberField& F, long p) {
  if (p < 2 || p > (1L << 31)) throw std::invalid_argument("prime out of range");
  const FieldData& d = F.data();
  int n = d.n;
  using u64 = uint64_t;
  u64 P = static_cast<u64>(p);
  auto modp = [&](const Rational& q) {
    if (q.get_den() != 1) throw std::logic_error("multiplication table is not integral");
    Integer v = q.get_num() % p;
    if (v < 0) v += p;
    return static_cast<u64>(v.get_ui());
  };
  std::vector<u64> table(n * n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) table[(i * n + j) * n + k] = modp(d.mul[i * n + j][k]);
  auto mult = [&](const std::vector<u64>& a, const std::vector<u64>& b) {
    std::vector<u64> r(n, 0);
    for (int i = 0; i < n; ++i) {
      if (!a[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (!b[j]) continue;
        u64 ab = a[i] * b[j] % P;
        for (int k = 0; k < n; ++k) r[k] = (r[k] + ab * table[(i * n + j) * n + k]) % P;
      }
    }
    return r;
  };
  std::vector<u64> one(n);
  for (int i = 0; i < n; ++i) one[i] = modp(d.one[i]);
  // Frobenius matrix: column j = b_j^p
  std::vector<std::vector<u64>> M(n, std::vector<u64>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<u64> base(n, 0), acc = one;
    base[j] = 1;
    for (u64 e = P; e; e >>= 1) {
      if (e & 1) acc = mult(acc, base);
      base = mult(base, base);
    }
    for (int i = 0; i < n; ++i) M[i][j] = acc[i];
  }
  auto matmul = [&](const std::vector<std::vector<u64>>& a, const std::vector<std::vector<u64>>& b) {
    std::vector<std::vector<u64>> c(n, std::vector<u64>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k)
        for (int j = 0; j < n; ++j) c[i][j] = (c[i][j] + a[i][k] * b[k][j]) % P;
    return c;
  };
  auto rank_mod = [&](std::vector<std::vector<u64>> a) {
    int r = 0;
    for (int c = 0; c < n && r < n; ++c) {
      int piv = -1;
      for (int i = r; i < n; ++i)
        if (a[i][c]) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      std::swap(a[piv], a[r]);
      u64 inv = 1, b = a[r][c];
      for (u64 e = P - 2; e; e >>= 1) {
        if (e & 1) inv = inv * b % P;
        b = b * b % P;
      }
      for (int i = 0; i < n; ++i) {
        if (i == r || !a[i][c]) continue;
        u64 f = a[i][c] * inv % P;
        for (int j = 0; j < n; ++j) a[i][j] = (a[i][j] + (P - f) * a[r][j]) % P;
      }
      ++r;
    }
    return r;
  };
  // g[d] = dim ker(M^d - I) = sum_i gcd(f_i, d) = sum_{e | d} phi(e) A(e), A(e) = #{i : e | f_i}
  std::vector<int> g(n + 1, 0);
  auto Mk = M;
  for (int k = 1; k <= n; ++k) {
    auto A = Mk;
    for (int i = 0; i < n; ++i) A[i][i] = (A[i][i] + P - 1) % P;
    g[k] = n - rank_mod(A);
    Mk = matmul(Mk, M);
  }
  auto phi = [](int m) {
    int r = 0;
    for (int k = 1; k <= m; ++k) r += std::gcd(k, m) == 1;
    return r;
  };
  auto mobius = [](int m) {
    int r = 1;
    for (int q = 2; q <= m; ++q)
      if (m % q == 0) {
        m /= q;
        if (m % q == 0) return 0;
        r = -r;
      }
    return r;
  };
  std::vector<int> Acnt(n + 1, 0);
  for (int e = 1; e <= n; ++e) {
    int s = g[e];
    for (int k = 1; k < e; ++k)
      if (e % k == 0) s -= phi(k) * Acnt[k];
    if (s % phi(e) != 0) throw std::logic_error("inconsistent Frobenius fixed spaces");
    Acnt[e] = s / phi(e);
  }
  std::vector<int> counts(n + 1, 0);
  for (int f = 1; f <= n; ++f)
    for (int m = f; m <= n; m += f) counts[f] += mobius(m / f) * Acnt[m];
  for (int f = 1; f <= n; ++f)
    if (counts[f] < 0) throw std::logic_error("inconsistent Frobenius fixed spaces");
  return counts;
}

ZetaValue zeta_F_2(const NumberField& F, int precision, long prime_bound) {
  if (prime_bound < 17) throw std::invalid_argument("prime bound too small");
  mpfr_prec_t wp = precision + 30;
  int n = F.degree();
  std::vector<char> composite(prime_bound + 1, 0);
  Real lo(wp), hi(wp), t(wp);
  mpfr_set_ui(lo.get(), 1, MPFR_RNDN);
  mpfr_set_ui(hi.get(), 1, MPFR_RNDN);
  for (long p = 2; p <= prime_bound; ++p) {
    if (composite[p]) continue;
    for (long q = p * p; q <= prime_bound; q += p) composite[q] = 1;
    auto counts = residue_degree_counts(F, p);
    for (int f = 1; f <= n; ++f)
      for (int c = 0; c < counts[f]; ++c) {
        // multiply by 1 - p^{-2f}
        for (int dir = 0; dir < 2; ++dir) {
          Real& r = dir ? hi : lo;
          mpfr_rnd_t rnd = dir ? MPFR_RNDU : MPFR_RNDD;
          mpfr_rnd_t opp = dir ? MPFR_RNDD : MPFR_RNDU;
          mpfr_set_ui(t.get(), static_cast<unsigned long>(p), opp);
          mpfr_pow_si(t.get(), t.get(), -2L * f, opp);
          mpfr_ui_sub(t.get(), 1, t.get(), rnd);
          mpfr_mul(r.get(), r.get(), t.get(), rnd);
        }
      }
  }
  // zeta in [1/hi, exp(tau)/lo]
  double B = static_cast<double>(prime_bound);
  double tau = n * (1 + 2 / (B * B)) * 2.51012 / (B * std::log(B)) * (1 + 1e-9);
  Real zlo(wp), zhi(wp), e(wp);
  mpfr_ui_div(zlo.get(), 1, hi.get(), MPFR_RNDD);
  mpfr_set_d(e.get(), tau, MPFR_RNDU);
  mpfr_exp(e.get(), e.get(), MPFR_RNDU);
  mpfr_div(zhi.get(), e.get(), lo.get(), MPFR_RNDU);
  ZetaValue z{Ball::from_endpoints(zlo, zhi, wp), prime_bound, std::expm1(tau)};
  return z;
}

Ball borel_volume(const NumberField& F, const Ball& zeta2) {
  mpfr_prec_t wp = zeta2.prec();
  int r2 = F.r2();
  Ball D = Ball::from_rational(Rational(abs(F.disc())), wp);
  Ball v = D * sqrt(D) * zeta2;
  Ball pi = Ball::pi(wp);
  for (int i = 0; i < 2 * r2; ++i) v = v / pi;
  return mul_2exp(v, 1 - 3 * r2);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    default:
      return "inconclusive";
  }
}

Ball ball_det(const std::vector<std::vector<Ball>>& m) {
  size_t n = m.size();
  if (n == 0) return Ball::from_int(1, 128);
  mpfr_prec_t wp = m[0][0].prec();
  std::vector<size_t> perm(n);
  for (size_t i = 0; i < n; ++i) perm[i] = i;
  Ball acc = Ball::from_int(0, wp);
  do {
    int s = 1;
    for (size_t i = 0; i < n; ++i)
      for (size_t j = i + 1; j < n; ++j)
        if (perm[j] < perm[i]) s = -s;
    Ball t = Ball::from_int(s, wp);
    for (size_t i = 0; i < n; ++i) t = t * m[i][perm[i]];
    acc = acc + t;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return acc;
}

namespace {

Verdict near_one(const Ball& r, double tol) {
  Ball d = r - Ball::from_int(1, r.prec());
  double hi = d.abs_upper().to_double(), lo = d.abs_lower().to_double();
  if (hi <= tol) return Verdict::Pass;
  if (lo > tol) return Verdict::Fail;
  return Verdict::Inconclusive;
}

}  // namespace

IndexReport index_report(const NumberField& F, const std::vector<std::vector<Ball>>& M, const Ball& zeta2, long N,
                         long k2, long k3tor, double tolerance) {
  if (k2 <= 0 || k3tor <= 0 || N <= 0) throw std::invalid_argument("N and K-group orders must be positive");
  IndexReport r;
  r.N = N;
  r.k2 = k2;
  r.k3tor = k3tor;
  r.r2 = F.r2();
  r.tolerance = tolerance;
  r.det_M = ball_det(M);
  mpfr_prec_t wp = r.det_M.prec();
  Ball ad = abs(r.det_M);
  r.vol = borel_volume(F, zeta2);
  Ball twoN = Ball::from_int(2 * N, wp), twopi = mul_2exp(Ball::pi(wp), 1);
  Ball denom = r.vol, p2 = Ball::from_int(1, wp);
  for (int i = 0; i < r.r2; ++i) {
    denom = denom * twoN;
    p2 = p2 * twopi;
  }
  r.lemma_ratio = ad / denom;
  r.lemma = near_one(r.lemma_ratio, tolerance);
  r.det_over_2pi = ad / p2;
  // R_2 = |D|^{3/2} zeta_F(2) |K3 tor| / ((2 pi)^{3 r2} 2^{r2} |K2|)
  Ball D = Ball::from_rational(Rational(abs(F.disc())), wp);
  Ball R2 = D * sqrt(D) * zeta2 * Ball::from_int(k3tor, wp) / Ball::from_int(k2, wp);
  R2 = mul_2exp(R2 / (p2 * p2 * p2), -r.r2);
  r.observed_index = ad / (p2 * R2);
  Integer num = Integer(1) << (1 + r.r2);
  for (int i = 0; i < r.r2; ++i) num *= N;
  r.index_general = Rational(num * k2, k3tor);
  r.index_general.canonicalize();
  r.index_example = Rational(k2);
  auto which = [&](const Ball& x) {
    bool g = near_one(x / Ball::from_rational(r.index_general, wp), tolerance) == Verdict::Pass;
    bool e = near_one(x / Ball::from_rational(r.index_example, wp), tolerance) == Verdict::Pass;
    return std::string(g && e ? "both" : (g ? "index_general" : (e ? "index_example" : "neither")));
  };
  r.matches = which(r.observed_index);
  r.literal_matches = which(r.det_over_2pi);
  return r;
}

}  // namespace vorbloch
