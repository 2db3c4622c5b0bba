#include "vorbloch/bloch.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <random>
#include <sstream>
#include <stdexcept>

#include "vorbloch/arith.hpp"

namespace vorbloch {

void PreBlochElement::add(const FieldElement& x, const Integer& n) {
  if (n == 0) return;
  auto it = terms.find(x);
  if (it == terms.end()) {
    terms.emplace(x, n);
    return;
  }
  it->second += n;
  if (it->second == 0) terms.erase(it);
}

PreBlochElement& PreBlochElement::operator+=(const PreBlochElement& o) {
  for (const auto& [x, n] : o.terms) add(x, n);
  return *this;
}

PreBlochElement PreBlochElement::scaled(const Integer& k) const {
  PreBlochElement out;
  for (const auto& [x, n] : terms) out.add(x, n * k);
  return out;
}

bool PreBlochElement::all_coefficients_even() const {
  for (const auto& t : terms)
    if (t.second % 2 != 0) return false;
  return true;
}

namespace {

FieldElement det2(const std::array<FieldElement, 2>& p, const std::array<FieldElement, 2>& q) {
  return p[0] * q[1] - p[1] * q[0];
}

bool flat(const FieldElement& x) { return x.is_zero() || x.is_one(); }

}  // namespace

std::optional<FieldElement> cr3(const std::array<std::array<FieldElement, 2>, 4>& v) {
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (det2(v[i], v[j]).is_zero()) return std::nullopt;
  return det2(v[0], v[2]) * det2(v[1], v[3]) / (det2(v[0], v[3]) * det2(v[1], v[2]));
}

std::optional<FieldElement> cr3(const NumberField& F, const std::array<Cusp, 4>& p) {
  return cr3({cusp_vector(F, p[0]), cusp_vector(F, p[1]), cusp_vector(F, p[2]), cusp_vector(F, p[3])});
}

std::optional<std::pair<FieldElement, FieldElement>> cr2(const std::array<std::array<FieldElement, 2>, 3>& p) {
  FieldElement d = det2(p[0], p[1]);
  if (d.is_zero() || det2(p[0], p[2]).is_zero() || det2(p[1], p[2]).is_zero()) return std::nullopt;
  return std::make_pair(det2(p[2], p[1]) / d, det2(p[0], p[2]) / d);
}

bool WedgeElement::is_zero() const { return mu_mu == 0 && mu_c.empty() && c_c.empty(); }

WedgeSpace::WedgeSpace(NumberField F, bool modulo_nu) : F_(std::move(F)), mod_nu_(modulo_nu) {
  if (!is_norm_euclidean_imaginary_quadratic(F_))
    throw std::domain_error("exact wedge coordinates need a norm-Euclidean imaginary quadratic field");
  w_ = F_.mu_order();
  m_ = std::gcd(w_, 1 + w_ / 2);
  units_ = torsion_units(F_);
}

WedgeSpace::Decomp WedgeSpace::decompose(const FieldElement& x) {
  Factorization f = factor(F_, x);
  Decomp d;
  auto it = std::find(units_.begin(), units_.end(), f.unit);
  if (it == units_.end()) throw std::logic_error("factorization unit is not a root of unity");
  d.zeta = it - units_.begin();
  for (const auto& [p, e] : f.primes) {
    auto pi = std::find(primes_.begin(), primes_.end(), p);
    int idx = static_cast<int>(pi - primes_.begin());
    if (pi == primes_.end()) primes_.push_back(p);
    d.exps[idx] += e;
  }
  return d;
}

void WedgeSpace::reduce(WedgeElement& x) const {
  auto md = [](Integer v, long m) {
    v %= m;
    if (v < 0) v += m;
    return v;
  };
  x.mu_mu = mod_nu_ ? Integer(0) : md(x.mu_mu, m_);
  long mc = mod_nu_ ? w_ / 2 : w_;
  for (auto it = x.mu_c.begin(); it != x.mu_c.end();) {
    it->second = md(it->second, mc);
    it = it->second == 0 ? x.mu_c.erase(it) : std::next(it);
  }
  for (auto it = x.c_c.begin(); it != x.c_c.end();) it = it->second == 0 ? x.c_c.erase(it) : std::next(it);
}

WedgeElement WedgeSpace::wedge(const FieldElement& a, const FieldElement& b) {
  if (a.is_zero() || b.is_zero()) throw std::invalid_argument("wedge of zero");
  Decomp x = decompose(a), y = decompose(b);
  WedgeElement out;
  out.mu_mu = Integer(x.zeta) * y.zeta;
  std::set<int> support;
  for (const auto& e : x.exps) support.insert(e.first);
  for (const auto& e : y.exps) support.insert(e.first);
  auto ex = [](const std::map<int, long>& m, int i) {
    auto it = m.find(i);
    return it == m.end() ? 0L : it->second;
  };
  for (int i : support) {
    long ai = ex(x.exps, i), bi = ex(y.exps, i);
    out.mu_c[i] = Integer(x.zeta) * bi - Integer(y.zeta) * ai + Integer(w_ / 2) * ai * bi;
    for (int j : support)
      if (j > i) out.c_c[{i, j}] = Integer(ai) * ex(y.exps, j) - Integer(ex(x.exps, j)) * bi;
  }
  reduce(out);
  return out;
}

void WedgeSpace::add(WedgeElement& acc, const WedgeElement& x, const Integer& k) const {
  acc.mu_mu += k * x.mu_mu;
  for (const auto& [i, v] : x.mu_c) acc.mu_c[i] += k * v;
  for (const auto& [ij, v] : x.c_c) acc.c_c[ij] += k * v;
  reduce(acc);
}

std::string WedgeSpace::to_string(const WedgeElement& x) const {
  std::ostringstream os;
  bool first = true;
  auto sep = [&]() {
    if (!first) os << " + ";
    first = false;
  };
  if (x.mu_mu != 0) {
    sep();
    os << vorbloch::to_string(x.mu_mu) << " zeta^zeta";
  }
  for (const auto& [i, v] : x.mu_c) {
    sep();
    os << vorbloch::to_string(v) << " zeta^" << primes_[i].to_string();
  }
  for (const auto& [ij, v] : x.c_c) {
    sep();
    os << vorbloch::to_string(v) << " " << primes_[ij.first].to_string() << "^" << primes_[ij.second].to_string();
  }
  if (first) os << "0";
  return os.str();
}

WedgeElement delta2(WedgeSpace& W, const PreBlochElement& e) {
  WedgeElement acc;
  for (const auto& [x, n] : e.terms) {
    if (flat(x)) throw std::invalid_argument("pre-Bloch argument is 0 or 1");
    NumberField F(x.data_ptr());
    W.add(acc, W.wedge(F.one() - x, x), n);
  }
  return acc;
}

PreBlochElement five_term(const FieldElement& x, const FieldElement& y) {
  if (flat(x) || flat(y) || x == y) throw std::invalid_argument("five-term arguments must be distinct and not 0 or 1");
  NumberField F(x.data_ptr());
  FieldElement one = F.one();
  std::array<FieldElement, 5> a{x, y, y / x, (one - x.inverse()) / (one - y.inverse()), (one - x) / (one - y)};
  for (const auto& t : a)
    if (flat(t)) throw std::invalid_argument("degenerate five-term argument");
  PreBlochElement e;
  const int sign[5] = {1, -1, 1, -1, 1};
  for (int i = 0; i < 5; ++i) e.add(a[i], sign[i]);
  return e;
}

PreBlochElement bloch_from_cycle(const NumberField& F, const VoronoiComplex& cx, const H3Generator& gen) {
  PreBlochElement beta;
  for (size_t j = 0; j < cx.tetrahedra.size() && j < gen.weights.size(); ++j)
    for (const auto& t : cx.tetrahedra[j]) {
      auto x = cr3(F, t.v);
      if (!x) throw std::logic_error("degenerate tetrahedron in cycle");
      beta.add(*x, 2 * gen.weights[j] * t.sign);
    }
  return beta;
}

BlochCertificate verify_bloch(const NumberField& F, const PreBlochElement& beta, bool modulo_nu) {
  BlochCertificate c;
  std::optional<WedgeSpace> W;
  try {
    W.emplace(F, modulo_nu);
  } catch (const std::domain_error& e) {
    c.regime = "unsupported";
    c.residue_text = e.what();
    return c;
  }
  c.regime = "exact";
  c.residue = delta2(*W, beta);
  c.passed = c.residue.is_zero();
  c.residue_text = W->to_string(c.residue);
  return c;
}

namespace {

Integer ipow(long p, int e) {
  Integer r = 1;
  for (int i = 0; i < e; ++i) r *= p;
  return r;
}

int valuation(long n, long p) {
  int v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

}  // namespace

TorsionGenerator torsion_generator(const NumberField& F, int p) {
  if (p < 2) throw std::invalid_argument("p must be prime");
  for (int q = 2; q * q <= p; ++q)
    if (p % q == 0) throw std::invalid_argument("p must be prime");
  TorsionGenerator tg;
  tg.p = p;
  int w = F.mu_order();
  tg.d_p = valuation(w, p);
  std::optional<FieldElement> y;
  if (p == 2) {
    tg.nu_p = 2;
    y = F.zero();
    while (auto z = two_cos_pi_over(F, static_cast<int>(ipow(2, tg.nu_p).get_si()))) {
      ++tg.nu_p;
      y = z;
    }
  } else {
    tg.nu_p = 0;
    y = F.from_int(2);
    while (auto z = two_cos_pi_over(F, static_cast<int>(ipow(p, tg.nu_p + 1).get_si()))) {
      ++tg.nu_p;
      y = -*z;
    }
  }
  long q = ipow(p, tg.nu_p).get_si();
  size_t skipped = 0;
  if (p == 2) {
    for (long k = 1; k <= q / 2; ++k) {
      FieldElement c = dickson(*y, static_cast<int>(2 * k - 1));
      FieldElement den = c - F.from_int(2);
      if (den.is_zero()) {
        ++skipped;
        continue;
      }
      FieldElement t = (c - dickson(*y, 2)) / den;
      if (flat(t)) {
        ++skipped;
        continue;
      }
      tg.element.add(t, 1);
    }
  } else {
    for (long k = 1; k <= q; ++k) {
      FieldElement ck = dickson(*y, static_cast<int>(k));
      if (ck.is_zero()) {
        ++skipped;
        continue;
      }
      FieldElement t = dickson(*y, static_cast<int>(k + 1)) * dickson(*y, static_cast<int>(k - 1)) / (ck * ck);
      if (flat(t)) {
        ++skipped;
        continue;
      }
      tg.element.add(t, 1);
    }
  }
  tg.order_hat = p == 2 ? ipow(2, 1 + tg.nu_p) : ipow(p, tg.nu_p);
  Integer mu_tilde_p = ipow(p, valuation(2L * w, p));
  tg.order_B = tg.order_hat / mu_tilde_p;
  if (tg.order_B == 0) tg.order_B = 1;
  long c_order = (w % 4 == 0 ? 1 : 2) * (w % 3 == 0 ? 1 : 3);
  Integer c_p = ipow(p, valuation(c_order, p));
  tg.order_Bbar = tg.order_B / c_p;
  if (tg.order_Bbar == 0) tg.order_Bbar = 1;
  tg.note = "orders from |B^(F)_p| and the sequence 0 -> mu~_F -> B^(F) -> B(F) -> 0, c_F of order " +
            std::to_string(c_order);
  if (skipped) tg.note += "; " + std::to_string(skipped) + " degenerate summands omitted";
  return tg;
}

ChainCheck chain_compatibility_check(const NumberField& F, size_t trials, unsigned seed, int bound) {
  ChainCheck out;
  WedgeSpace W(F, true);
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> dist(-bound, bound);
  int n = F.degree();
  auto rnd = [&]() {
    IntVec c(n);
    for (auto& v : c) v = dist(rng);
    return F.from_coords(c);
  };
  size_t attempts = 0;
  while (out.tested < trials && attempts < trials * 50) {
    ++attempts;
    std::array<std::array<FieldElement, 2>, 4> l;
    for (auto& v : l) v = {rnd(), rnd()};
    auto x = cr3(l);
    if (!x) continue;
    WedgeElement lhs;
    for (int i = 0; i < 4; ++i) {
      std::array<std::array<FieldElement, 2>, 3> t;
      for (int j = 0, k = 0; j < 4; ++j)
        if (j != i) t[k++] = l[j];
      auto ab = cr2(t);
      W.add(lhs, W.wedge(ab->first, ab->second), i % 2 ? -1 : 1);
    }
    WedgeElement rhs = W.wedge(F.one() - *x, *x);
    ++out.tested;
    WedgeElement plus = lhs, minus = lhs;
    W.add(plus, rhs, -1);
    W.add(minus, rhs, 1);
    int s = plus.is_zero() && minus.is_zero() ? 0 : (plus.is_zero() ? 1 : (minus.is_zero() ? -1 : 2));
    if (s == 2 || (s != 0 && out.sign != 0 && s != out.sign)) {
      out.ok = false;
      out.counterexample = "cr3 " + x->to_string() + ": f2 d3 = " + W.to_string(lhs) + ", delta f3 = " + W.to_string(rhs);
      return out;
    }
    if (s != 0) out.sign = s;
  }
  return out;
}

}  // namespace vorbloch
