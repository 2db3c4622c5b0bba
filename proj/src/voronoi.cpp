#include "vorbloch/voronoi.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "vorbloch/polyhedra.hpp"

namespace vorbloch {

RatMat first_perfect_form(int m) {
  if (m < 1) throw std::invalid_argument("dimension must be >= 1");
  RatMat q(m, m);
  for (int i = 0; i < m; ++i) {
    q(i, i) = 1;
    if (i + 1 < m) q(i, i + 1) = q(i + 1, i) = Rational(-1, 2);
  }
  return q;
}

RatMat normalized(const RatMat& q, const Rational& min) { return scaled(q, Rational(1) / min); }

std::string invariant_key(const RatMat& q, const MinData& md) {
  std::map<Rational, size_t> ips;
  std::vector<RatVec> qv;
  for (const auto& v : md.vectors) qv.push_back(q * to_rat(v));
  for (size_t i = 0; i < md.vectors.size(); ++i)
    for (size_t j = i + 1; j < md.vectors.size(); ++j) {
      Rational ip = dot(qv[i], to_rat(md.vectors[j]));
      ips[abs(ip)]++;
    }
  std::ostringstream os;
  os << "n=" << md.vectors.size() << ";min=" << to_string(md.min) << ";det=" << to_string(det(q)) << ";ip=";
  for (const auto& [k, c] : ips) os << to_string(k) << ":" << c << ",";
  return os.str();
}

std::vector<IntVec> min_functionals(const TSubspace& T, const MinData& md) {
  std::set<IntVec> s;
  for (const auto& v : md.vectors) s.insert(primitive(t_functional(T, v)));
  return {s.begin(), s.end()};
}

namespace {

bool min_subset(const MinData& a, const MinData& b) {
  return std::includes(b.vectors.begin(), b.vectors.end(), a.vectors.begin(), a.vectors.end());
}

RatMat along(const RatMat& A, const Rational& t, const RatMat& R) { return axpy(A, t, R); }

}  // namespace

Rational neighbor_rho(const RatMat& A, const RatMat& R) { return neighbor_rho(A, R, minimum(A)); }

Rational neighbor_rho(const RatMat& A, const RatMat& R, const MinData& minA) {
  if (is_positive_semidefinite(R)) throw std::domain_error("direction is positive semidefinite (dead end)");
  Rational l = 0, u = 1;
  const size_t guard = 100000;
  size_t it = 0;
  while (true) {
    if (++it > guard) throw std::runtime_error("neighbor search: first phase did not terminate");
    RatMat Q = along(A, u, R);
    if (!is_positive_definite(Q)) {
      u = (l + u) / 2;
      continue;
    }
    if (minimum(Q).min == minA.min) {
      l = u;
      u *= 2;
      continue;
    }
    break;
  }
  MinData ml = l == 0 ? minA : minimum(along(A, l, R));
  it = 0;
  while (ml.min == minA.min && min_subset(ml, minA)) {
    if (++it > guard) throw std::runtime_error("neighbor search: second phase did not terminate");
    Rational gap = u - l;
    Rational gamma = (l + u) / 2;
    MinData mu = minimum(along(A, u, R));
    if (mu.min == minA.min && !min_subset(mu, minA)) {
      l = u;
      ml = mu;
      continue;
    }
    MinData mg = minimum(along(A, gamma, R));
    if (mg.min >= minA.min) {
      l = gamma;
      ml = mg;
    } else {
      Rational best = gamma;
      for (const auto& v : mg.vectors) {
        Rational rv = quad_value(R, v);
        if (rv < 0) best = std::min(best, Rational((minA.min - quad_value(A, v)) / rv));
      }
      u = best;
    }
    if (!(u - l < gap)) throw std::logic_error("neighbor search made no progress");
  }
  return l;
}

RatMat initial_t_perfect(const TSubspace& T, const RatMat& Q0, size_t step_guard) {
  auto c = t_coords(T, Q0);
  if (!c) throw std::invalid_argument("initial form is not in span T");
  if (!is_positive_definite(Q0)) throw std::invalid_argument("initial form is not positive definite");
  RatMat A = Q0;
  for (size_t step = 0;; ++step) {
    if (step > step_guard) throw std::runtime_error("initial T-perfect search exceeded its step guard");
    MinData md = minimum(A);
    std::vector<RatVec> rows;
    for (const auto& v : md.vectors) rows.push_back(t_functional(T, v));
    auto L = kernel(rows, T.dim());
    if (L.empty()) return A;
    RatMat R = t_matrix(T, to_rat(L.front()));
    if (is_positive_semidefinite(R)) R = scaled(R, Rational(-1));
    Rational rho = neighbor_rho(A, R, md);
    A = along(A, rho, R);
  }
}

EquivResult equivalence_test(const NumberField& F, const TSubspace& T, const RatMat& A, const RatMat& B, EquivGroup g,
                             size_t budget) {
  EquivResult res;
  int m = T.m;
  MinData mdA = minimum(A), mdB = minimum(B);
  if (mdA.min != mdB.min || mdA.vectors.size() != mdB.vectors.size()) {
    res.reason = "minimum or |Min| differs";
    return res;
  }
  if (invariant_key(A, mdA) != invariant_key(B, mdB)) {
    res.reason = "invariant key differs";
    return res;
  }
  auto ca = t_coords(T, A), cb = t_coords(T, B);
  if (!ca || !cb) throw std::invalid_argument("forms must lie in span T");
  HermitianForm hA = t_hermitian(F, T, *ca), hB = t_hermitian(F, T, *cb);

  std::vector<std::vector<FieldElement>> cand;
  for (const auto& v : mdA.vectors) {
    auto x = vector_from_coords(F, m, v);
    cand.push_back(x);
    for (auto& e : x) e = -e;
    cand.push_back(x);
  }
  std::vector<std::vector<FieldElement>> minB;
  for (const auto& v : mdB.vectors) minB.push_back(vector_from_coords(F, m, v));
  auto idx = f_independent(F, minB);
  if (static_cast<int>(idx.size()) != m) throw std::invalid_argument("Min(B) does not span F^m");
  std::vector<std::vector<FieldElement>> W;
  for (size_t i : idx) W.push_back(minB[i]);
  std::vector<std::vector<FieldElement>> target(m, std::vector<FieldElement>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) target[i][j] = herm_value(hB, W[i], W[j]);

  size_t C = cand.size();
  std::vector<std::optional<FieldElement>> memo(C * C);
  auto h = [&](size_t a, size_t b) -> const FieldElement& {
    auto& slot = memo[a * C + b];
    if (!slot) slot = herm_value(hA, cand[a], cand[b]);
    return *slot;
  };
  std::vector<std::vector<size_t>> level_cands(m);
  for (int i = 0; i < m; ++i)
    for (size_t a = 0; a < C; ++a)
      if (h(a, a) == target[i][i]) level_cands[i].push_back(a);

  FMatrix Wm(m * m);
  for (int r = 0; r < m; ++r)
    for (int i = 0; i < m; ++i) Wm[r * m + i] = W[i][r];
  FMatrix Winv = *f_inverse(F, Wm, m);

  std::vector<size_t> chosen(m);
  size_t nodes = 0;
  bool exhausted = false;
  auto leaf = [&]() -> bool {
    FMatrix Y(m * m);
    for (int r = 0; r < m; ++r)
      for (int i = 0; i < m; ++i) Y[r * m + i] = cand[chosen[i]][r];
    FMatrix U = f_mul(F, Y, Winv, m);
    for (const auto& e : U)
      if (!e.is_integral()) return false;
    FieldElement d = f_det(F, U, m);
    if (g == EquivGroup::SL) {
      if (!d.is_one()) return false;
    } else {
      Rational nd = d.norm();
      if (nd != 1 && nd != -1) return false;
    }
    RatMat Z = z_action(F, U, m);
    if (!(Z.transpose() * A * Z == B)) return false;
    res.status = EquivResult::Equivalent;
    res.U = U;
    res.Z = Z;
    return true;
  };
  std::function<bool(int)> search = [&](int i) -> bool {
    if (i == m) return leaf();
    for (size_t a : level_cands[i]) {
      if (++nodes > budget) {
        exhausted = true;
        return false;
      }
      bool ok = true;
      for (int j = 0; j < i && ok; ++j) ok = h(chosen[j], a) == target[j][i];
      if (!ok) continue;
      chosen[i] = a;
      if (search(i + 1)) return true;
      if (exhausted) return false;
    }
    return false;
  };
  if (search(0)) return res;
  res.status = exhausted ? EquivResult::BudgetExhausted : EquivResult::NotEquivalent;
  res.reason = exhausted ? "search budget exhausted" : "exhaustive search";
  return res;
}

VoronoiGraph enumerate_perfect(const NumberField& F, const TSubspace& T, const RatMat& A0, const EnumOptions& opt,
                               const VoronoiGraph* resume) {
  auto t0 = std::chrono::steady_clock::now();
  VoronoiGraph gr;
  if (resume) {
    gr = *resume;
  } else {
    MinData md = minimum(A0);
    PerfectClass pc;
    pc.rep = normalized(A0, md.min);
    pc.min_data = minimum(pc.rep);
    if (!is_perfect(T, pc.rep)) throw std::invalid_argument("initial form is not T-perfect");
    pc.coords = *t_coords(T, pc.rep);
    pc.key = invariant_key(pc.rep, pc.min_data);
    gr.classes.push_back(pc);
  }
  bool budget_hit = false;
  for (size_t i = 0; i < gr.classes.size() && !budget_hit; ++i) {
    if (gr.classes[i].processed) continue;
    RatMat A = gr.classes[i].rep;
    MinData mdA = gr.classes[i].min_data;
    HRep h;
    h.d = T.dim();
    h.ineq = min_functionals(T, mdA);
    DDStats st;
    VRep v = dd_convert(h, Adjacency::Combinatorial, &st);
    gr.dd_seconds += st.seconds;
    if (!v.lineality.empty()) throw std::logic_error("perfect cone has a nontrivial linearity space");
    gr.classes[i].rays = v.rays;
    std::vector<int> order(v.rays.size());
    for (size_t k = 0; k < order.size(); ++k) order[k] = static_cast<int>(k);
    if (opt.reverse_rays) std::reverse(order.begin(), order.end());
    std::vector<VoronoiEdge> new_edges;
    for (int r : order) {
      RatMat R = t_matrix(T, to_rat(v.rays[r]));
      if (is_positive_semidefinite(R)) {
        gr.classes[i].dead_ends.push_back(r);
        gr.anomalies.push_back("class " + std::to_string(i) + " ray " + std::to_string(r) +
                               ": positive semidefinite extreme ray (dead end)");
        continue;
      }
      Rational rho = neighbor_rho(A, R, mdA);
      RatMat nb = along(A, rho, R);
      MinData md = minimum(nb);
      std::string key = invariant_key(nb, md);
      int found = -1;
      for (size_t j = 0; j < gr.classes.size() && found < 0; ++j) {
        if (gr.classes[j].key != key) continue;
        auto eq = equivalence_test(F, T, gr.classes[j].rep, nb, EquivGroup::GL, opt.equiv_budget);
        if (eq.status == EquivResult::Equivalent) found = static_cast<int>(j);
        if (eq.status == EquivResult::BudgetExhausted)
          throw std::runtime_error("equivalence search budget exhausted");
      }
      if (found < 0) {
        if (gr.classes.size() >= opt.budget) {
          budget_hit = true;
          break;
        }
        PerfectClass pc;
        pc.rep = nb;
        pc.min_data = md;
        pc.coords = *t_coords(T, nb);
        pc.key = key;
        pc.parent = static_cast<int>(i);
        pc.parent_ray = r;
        gr.classes.push_back(pc);
        found = static_cast<int>(gr.classes.size() - 1);
      }
      new_edges.push_back({static_cast<int>(i), found, r, rho});
    }
    if (budget_hit) break;
    gr.edges.insert(gr.edges.end(), new_edges.begin(), new_edges.end());
    gr.classes[i].processed = true;
  }
  gr.complete = !budget_hit;
  for (const auto& c : gr.classes) gr.complete = gr.complete && c.processed;
  gr.seconds += std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return gr;
}

}  // namespace vorbloch
