#include "vorbloch/polyhedra.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <set>
#include <stdexcept>

#include "vorbloch/linalg.hpp"

namespace vorbloch {

size_t Bits::count() const {
  size_t c = 0;
  for (auto w : w_) c += __builtin_popcountll(w);
  return c;
}

Bits Bits::operator&(const Bits& o) const {
  Bits r = *this;
  for (size_t i = 0; i < w_.size(); ++i) r.w_[i] &= o.w_[i];
  return r;
}

bool Bits::subset_of(const Bits& o) const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i] & ~o.w_[i]) return false;
  return true;
}

namespace {

struct Gen {
  IntVec v;
  Bits tight;
};

IntVec combine(const Integer& s, const IntVec& a, const Integer& t, const IntVec& b) {
  IntVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i] + t * b[i];
  return primitive(r);
}

std::vector<RatVec> as_rows(const std::vector<IntVec>& a) {
  std::vector<RatVec> r;
  for (const auto& x : a) r.push_back(to_rat(x));
  return r;
}

// Project v onto the orthogonal complement of span(lin) and make it primitive.
IntVec reduce_mod_lineality(const IntVec& v, const std::vector<IntVec>& lin) {
  if (lin.empty()) return v;
  size_t k = lin.size();
  RatMat g(k, k);
  RatVec rhs(k);
  for (size_t i = 0; i < k; ++i) {
    for (size_t j = 0; j < k; ++j) g(i, j) = dot(lin[i], lin[j]);
    rhs[i] = dot(lin[i], v);
  }
  RatVec c = *solve(g, rhs);
  RatVec w = to_rat(v);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < w.size(); ++j) w[j] -= c[i] * lin[i][j];
  return primitive(w);
}

}  // namespace

std::vector<IntVec> linearity_space(const HRep& h) {
  std::vector<IntVec> all = h.ineq;
  all.insert(all.end(), h.eq.begin(), h.eq.end());
  return kernel(as_rows(all), h.d);
}

VRep dd_convert(const HRep& h, Adjacency test, DDStats* stats) {
  auto t0 = std::chrono::steady_clock::now();
  int d = h.d;
  size_t mcons = h.ineq.size();
  std::vector<IntVec> lines = kernel(as_rows(h.eq), d);
  std::vector<Gen> rays;
  size_t peak = 0;
  std::vector<IntVec> processed = h.eq;

  for (size_t ci = 0; ci < mcons; ++ci) {
    const IntVec& a = h.ineq[ci];
    // a line not orthogonal to a becomes a ray
    int pivot = -1;
    for (size_t i = 0; i < lines.size(); ++i)
      if (dot(a, lines[i]) != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    if (pivot >= 0) {
      IntVec l0 = lines[pivot];
      Integer a0 = dot(a, l0);
      if (a0 < 0) {
        for (auto& x : l0) x = -x;
        a0 = -a0;
      }
      std::vector<IntVec> kept;
      for (size_t i = 0; i < lines.size(); ++i) {
        if (static_cast<int>(i) == pivot) continue;
        Integer ai = dot(a, lines[i]);
        kept.push_back(ai == 0 ? lines[i] : combine(a0, lines[i], -ai, l0));
      }
      lines = kept;
      for (auto& r : rays) {
        Integer ar = dot(a, r.v);
        if (ar != 0) r.v = combine(a0, r.v, -ar, l0);
        r.tight.set(ci);
      }
      Gen g{l0, Bits(mcons)};
      for (size_t j = 0; j < ci; ++j)
        if (dot(h.ineq[j], l0) == 0) g.tight.set(j);
      rays.push_back(g);
      processed.push_back(a);
      continue;
    }
    std::vector<size_t> pos, neg, zero;
    std::vector<Integer> val(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      val[i] = dot(a, rays[i].v);
      int s = sgn(val[i]);
      (s > 0 ? pos : s < 0 ? neg : zero).push_back(i);
    }
    std::vector<Gen> next;
    for (size_t i : pos) next.push_back(rays[i]);
    for (size_t i : zero) {
      next.push_back(rays[i]);
      next.back().tight.set(ci);
    }
    if (!neg.empty() && !pos.empty()) {
      int pointed_dim = d - static_cast<int>(h.eq.empty() ? 0 : rank(as_rows(h.eq))) - static_cast<int>(lines.size());
      size_t need = pointed_dim >= 2 ? static_cast<size_t>(pointed_dim - 2) : 0;
      size_t eq_rank = h.eq.empty() ? 0 : rank(as_rows(h.eq));
      for (size_t i : pos)
        for (size_t j : neg) {
          Bits common = rays[i].tight & rays[j].tight;
          if (common.count() < need) continue;
          bool adjacent = true;
          if (test == Adjacency::Combinatorial) {
            for (size_t k = 0; k < rays.size() && adjacent; ++k)
              if (k != i && k != j && common.subset_of(rays[k].tight)) adjacent = false;
          } else {
            std::vector<RatVec> rows = as_rows(h.eq);
            for (size_t c = 0; c < ci; ++c)
              if (common.test(c)) rows.push_back(to_rat(h.ineq[c]));
            adjacent = rows.size() >= need + eq_rank && rank(rows) == need + eq_rank;
          }
          if (!adjacent) continue;
          Gen g{combine(val[i], rays[j].v, -val[j], rays[i].v), common};
          g.tight.set(ci);
          next.push_back(std::move(g));
        }
    }
    rays = std::move(next);
    peak = std::max(peak, rays.size());
    processed.push_back(a);
  }

  VRep out;
  out.d = d;
  out.lineality = linearity_space(h);
  std::set<IntVec> uniq;
  for (const auto& r : rays) {
    IntVec v = reduce_mod_lineality(r.v, out.lineality);
    if (!is_zero(v)) uniq.insert(v);
  }
  out.rays.assign(uniq.begin(), uniq.end());
  if (stats) {
    stats->max_intermediate = peak;
    stats->seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }
  return out;
}

std::vector<std::vector<int>> vrep_faces(const VRep& v, const HRep& h, int k) {
  if (k < 0 || k > v.d) throw std::out_of_range("face dimension outside 0..d");
  auto face_dim = [&](const std::vector<int>& s) {
    std::vector<IntVec> g = v.lineality;
    for (int i : s) g.push_back(v.rays[i]);
    return static_cast<int>(rank(g));
  };
  std::vector<int> all(v.rays.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  int full = face_dim(all);
  std::set<std::vector<int>> faces{all};
  std::set<std::vector<int>> facets;
  for (const auto& a : h.ineq) {
    std::vector<int> s;
    for (size_t i = 0; i < v.rays.size(); ++i)
      if (dot(a, v.rays[i]) == 0) s.push_back(static_cast<int>(i));
    if (static_cast<int>(s.size()) < static_cast<int>(v.rays.size()) && face_dim(s) == full - 1) facets.insert(s);
  }
  std::vector<std::vector<int>> frontier(facets.begin(), facets.end());
  faces.insert(facets.begin(), facets.end());
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto& f : frontier)
      for (const auto& g : facets) {
        std::vector<int> s;
        std::set_intersection(f.begin(), f.end(), g.begin(), g.end(), std::back_inserter(s));
        if (faces.insert(s).second) next.push_back(s);
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out;
  for (const auto& f : faces)
    if (face_dim(f) == k) out.push_back(f);
  return out;
}

}  // namespace vorbloch
