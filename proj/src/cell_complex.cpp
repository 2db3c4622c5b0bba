#include "vorbloch/cell_complex.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "vorbloch/arith.hpp"

namespace vorbloch {

std::string to_string(const Cusp& c) {
  std::ostringstream os;
  auto part = [](const IntVec& v) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + to_string(v[i]);
    return s + "]";
  };
  os << "(" << part(c.y) << " : " << part(c.x) << ")";
  return os.str();
}

namespace {

IntVec int_coords(const FieldElement& a) {
  IntVec out;
  for (const auto& q : a.coords()) {
    if (q.get_den() != 1) throw std::logic_error("non-integral cusp coordinate");
    out.push_back(q.get_num());
  }
  return out;
}

FieldElement det2(const std::array<FieldElement, 2>& p, const std::array<FieldElement, 2>& q) {
  return p[0] * q[1] - p[1] * q[0];
}

}  // namespace

Cusp cusp_of_vector(const NumberField& F, const FieldElement& x0, const FieldElement& y0) {
  if (x0.is_zero() && y0.is_zero()) throw std::invalid_argument("zero vector has no cusp");
  Integer den = 1;
  for (const auto& q : x0.coords()) den = lcm(den, Integer(q.get_den()));
  for (const auto& q : y0.coords()) den = lcm(den, Integer(q.get_den()));
  FieldElement x = x0 * Rational(den), y = y0 * Rational(den);
  FieldElement g = bezout(x, y).g;
  x /= g;
  y /= g;
  std::optional<Cusp> best;
  for (const auto& u : torsion_units(F)) {
    Cusp c{int_coords(u * x), int_coords(u * y)};
    if (!best || *best < c) best = c;
  }
  return *best;
}

Cusp cusp_of_ray(const NumberField& F, const HermitianForm& q) {
  if (q.m != 2) throw std::invalid_argument("cusp_of_ray needs a 2 x 2 form");
  FieldElement d = q.at(0, 0) * q.at(1, 1) - q.at(0, 1) * q.at(1, 0);
  if (!d.is_zero()) throw std::invalid_argument("form is not of rank 1");
  for (int j = 0; j < 2; ++j)
    if (!q.at(j, j).is_zero()) return cusp_of_vector(F, q.at(0, j), q.at(1, j));
  throw std::invalid_argument("form is zero");
}

std::array<FieldElement, 2> cusp_vector(const NumberField& F, const Cusp& c) {
  return {F.from_coords(c.x), F.from_coords(c.y)};
}

Cusp act(const NumberField& F, const FMatrix& g, const Cusp& c) {
  auto v = cusp_vector(F, c);
  return cusp_of_vector(F, g[0] * v[0] + g[1] * v[1], g[2] * v[0] + g[3] * v[1]);
}

namespace {

// Element of SL_2(O_F) sending infinity = (1, 0) to c.
FMatrix cusp_matrix(const NumberField& F, const Cusp& c) {
  auto v = cusp_vector(F, c);
  Bezout b = bezout(v[0], v[1]);
  if (!b.g.is_one()) {
    FieldElement gi = b.g.inverse();
    b.s *= gi;
    b.t *= gi;
  }
  return {v[0], -b.t, v[1], b.s};
}

FMatrix neg(const FMatrix& g) {
  FMatrix h = g;
  for (auto& e : h) e = -e;
  return h;
}

}  // namespace

std::vector<FMatrix> psl_maps(const NumberField& F, const std::vector<Cusp>& S, const std::vector<Cusp>& S2,
                              bool first_only) {
  std::vector<FMatrix> out;
  if (S.size() != S2.size() || S.empty()) return out;
  if (S.size() == 1) {
    if (!first_only) throw std::invalid_argument("cusp stabilizers are infinite");
    FMatrix a = cusp_matrix(F, S[0]), b = cusp_matrix(F, S2[0]);
    out.push_back(f_mul(F, b, *f_inverse(F, a, 2), 2));
    return out;
  }
  std::vector<Cusp> target = S2;
  std::sort(target.begin(), target.end());
  auto p = cusp_vector(F, S[0]), q = cusp_vector(F, S[1]);
  FieldElement delta = det2(p, q);
  FMatrix pq_inv{q[1] / delta, -q[0] / delta, -p[1] / delta, p[0] / delta};
  std::set<FMatrix> seen;
  auto units = torsion_units(F);
  for (size_t i = 0; i < S2.size(); ++i)
    for (size_t j = 0; j < S2.size(); ++j) {
      if (i == j) continue;
      auto p2 = cusp_vector(F, S2[i]), q2 = cusp_vector(F, S2[j]);
      FieldElement d2 = det2(p2, q2);
      for (const auto& u : units) {
        FieldElement v = delta / (d2 * u);
        if (!is_unit(v)) continue;
        FMatrix cols{u * p2[0], v * q2[0], u * p2[1], v * q2[1]};
        FMatrix g = f_mul(F, cols, pq_inv, 2);
        if (!std::all_of(g.begin(), g.end(), [](const FieldElement& e) { return e.is_integral(); })) continue;
        FMatrix gn = neg(g);
        if (g < gn) g = gn;
        if (seen.count(g)) continue;
        std::vector<Cusp> img;
        for (const auto& c : S) img.push_back(act(F, g, c));
        std::sort(img.begin(), img.end());
        if (img != target) continue;
        seen.insert(g);
        out.push_back(g);
        if (first_only) return out;
      }
    }
  return out;
}

namespace {

int sgn(const Rational& q) { return q > 0 ? 1 : (q < 0 ? -1 : 0); }

// Sign of the change of basis from frame to vecs (both spanning the same subspace); 0 if vecs is dependent.
int orient(const std::vector<IntVec>& frame, const std::vector<IntVec>& vecs) {
  size_t k = frame.size();
  if (vecs.size() != k || k == 0) throw std::logic_error("orientation frame size mismatch");
  size_t d = frame[0].size();
  std::vector<RatVec> cols(d, RatVec(k));
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < d; ++j) cols[j][i] = frame[i][j];
  auto sel = independent_subset(cols);
  if (sel.size() < k) throw std::logic_error("degenerate orientation frame");
  RatMat a(k, k), b(k, k);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) {
      a(i, j) = frame[i][sel[j]];
      b(i, j) = vecs[i][sel[j]];
    }
  return sgn(det(a)) * sgn(det(b));
}

struct Ctx {
  const NumberField& F;
  const TSubspace& T;
  std::map<Cusp, IntVec> cache;

  const IntVec& ell(const Cusp& c) {
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    IntVec coords = c.x;
    coords.insert(coords.end(), c.y.begin(), c.y.end());
    return cache[c] = primitive(t_functional(T, coords));
  }
  std::vector<IntVec> ells(const std::vector<Cusp>& cs) {
    std::vector<IntVec> out;
    for (const auto& c : cs) out.push_back(ell(c));
    return out;
  }
  std::vector<Cusp> frame(const std::vector<Cusp>& sorted, int dim) {
    std::vector<Cusp> out;
    std::vector<IntVec> acc;
    for (const auto& c : sorted) {
      acc.push_back(ell(c));
      if (rank(acc) == acc.size()) {
        out.push_back(c);
        if (static_cast<int>(out.size()) == dim + 1) return out;
      } else {
        acc.pop_back();
      }
    }
    throw std::logic_error("cell has too few independent vertices");
  }
};

struct Top {
  int cls = 0;
  bool twisted = false;
  std::vector<Cusp> verts;                           // positional
  std::vector<std::vector<std::vector<int>>> faces;  // faces[k]: cone dimension k (cell dimension k - 1)
};

struct Instance {
  int top = 0;
  std::vector<int> idx;
  std::vector<Cusp> verts;  // sorted
};

struct Assignment {
  int rep = -1;
  FMatrix g;  // g . instance = rep
};

std::vector<Cusp> sorted_cusps(const Top& t, const std::vector<int>& idx) {
  std::vector<Cusp> out;
  for (int i : idx) out.push_back(t.verts[i]);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

std::vector<Cusp> act_all(const NumberField& F, const FMatrix& g, const std::vector<Cusp>& cs) {
  std::vector<Cusp> out;
  for (const auto& c : cs) out.push_back(act(F, g, c));
  return out;
}

}  // namespace

VoronoiComplex build_complex(const NumberField& F, const TSubspace& T, const VoronoiGraph& graph,
                             const ComplexOptions& opt) {
  if (!is_norm_euclidean_imaginary_quadratic(F))
    throw std::domain_error("cell complex requires a norm-Euclidean imaginary quadratic field");
  if (imaginary_quadratic_class_number(F.disc()) != 1) throw std::domain_error("class number must be 1");
  if (T.m != 2) throw std::domain_error("cell complex requires m = 2");
  if (!graph.complete) throw std::domain_error("perfect form enumeration is incomplete");

  Ctx ctx{F, T, {}};
  VoronoiComplex cx;
  cx.order = opt.order;
  cx.cells.resize(4);
  cx.dropped.resize(4);

  FieldElement mu = F.root_of_unity();
  FMatrix D{F.one(), F.zero(), F.zero(), mu};
  FMatrix Dinv = *f_inverse(F, D, 2);
  RatMat ZD = z_action(F, D, 2);

  std::vector<Top> tops;
  for (size_t ci = 0; ci < graph.classes.size(); ++ci) {
    const auto& cls = graph.classes[ci];
    std::set<Cusp> vs;
    for (const auto& v : cls.min_data.vectors) {
      auto fv = vector_from_coords(F, 2, v);
      vs.insert(cusp_of_vector(F, fv[0], fv[1]));
    }
    Top t;
    t.cls = static_cast<int>(ci);
    t.verts.assign(vs.begin(), vs.end());
    VRep vr{T.dim(), ctx.ells(t.verts), {}};
    HRep hr{T.dim(), cls.rays, {}};
    t.faces.resize(T.dim() + 1);
    for (int k = 1; k <= T.dim(); ++k) t.faces[k] = vrep_faces(vr, hr, k);
    if (t.faces[T.dim()].size() != 1) throw std::logic_error("perfect cone is not full-dimensional");

    RatMat twisted = ZD.transpose() * cls.rep * ZD;
    EquivResult er = equivalence_test(F, T, cls.rep, twisted, EquivGroup::SL, opt.equiv_budget);
    std::vector<Cusp> tv = act_all(F, Dinv, t.verts);
    bool by_cusps = !psl_maps(F, t.verts, tv, true).empty();
    if (er.status == EquivResult::BudgetExhausted) {
      cx.notes.push_back("class " + std::to_string(ci) + ": SL test budget exhausted, cusp search used");
    } else if ((er.status == EquivResult::Equivalent) != by_cusps) {
      throw std::logic_error("descent: form test and cusp search disagree");
    }
    cx.descent.push_back(by_cusps ? 1 : 2);
    tops.push_back(t);
    if (!by_cusps) {
      Top t2 = t;
      t2.twisted = true;
      t2.verts = tv;
      tops.push_back(t2);
    }
  }

  // orbit classification, dimension by dimension
  std::vector<std::vector<Cell>> reps(4);
  std::map<std::pair<int, std::vector<int>>, Assignment> assign;
  std::vector<std::vector<Instance>> inst(4);
  for (int k = 0; k <= 3; ++k) {
    for (size_t ti = 0; ti < tops.size(); ++ti)
      for (const auto& f : tops[ti].faces[k + 1]) inst[k].push_back({static_cast<int>(ti), f, sorted_cusps(tops[ti], f)});
    std::stable_sort(inst[k].begin(), inst[k].end(),
                     [](const Instance& a, const Instance& b) { return a.verts < b.verts; });
    for (const auto& in : inst[k]) {
      Assignment as;
      for (size_t r = 0; r < reps[k].size() && as.rep < 0; ++r) {
        if (reps[k][r].vertices.size() != in.verts.size()) continue;
        auto gs = psl_maps(F, in.verts, reps[k][r].vertices, true);
        if (!gs.empty()) as = {static_cast<int>(r), gs[0]};
      }
      if (as.rep < 0) {
        Cell c;
        c.dim = k;
        c.vertices = in.verts;
        c.frame = ctx.frame(in.verts, k);
        c.top = in.top;
        c.top_vertices = in.idx;
        if (k == 0) {
          c.stabilizer_order = 0;
        } else {
          c.stabilizer = psl_maps(F, c.vertices, c.vertices);
          c.stabilizer_order = static_cast<int>(c.stabilizer.size());
          auto fe = ctx.ells(c.frame);
          for (const auto& g : c.stabilizer)
            if (orient(fe, ctx.ells(act_all(F, g, c.frame))) < 0) c.orientation_reversing = true;
        }
        as.rep = static_cast<int>(reps[k].size());
        as.g = FMatrix{F.one(), F.zero(), F.zero(), F.one()};
        reps[k].push_back(c);
      }
      auto img = act_all(F, as.g, in.verts);
      std::sort(img.begin(), img.end());
      if (img != reps[k][as.rep].vertices) throw std::logic_error("orbit witness fails verification");
      assign[{in.top, in.idx}] = as;
    }
  }

  // kept indices
  std::vector<std::vector<int>> kept(4);
  for (int k = 0; k <= 3; ++k) {
    kept[k].assign(reps[k].size(), -1);
    for (size_t r = 0; r < reps[k].size(); ++r) {
      if (reps[k][r].orientation_reversing) {
        cx.dropped[k].push_back(reps[k][r]);
        continue;
      }
      kept[k][r] = static_cast<int>(cx.cells[k].size());
      cx.cells[k].push_back(reps[k][r]);
    }
  }

  // boundary matrices
  auto facet_sign = [&](const Top& t, const std::vector<int>& pidx, const std::vector<Cusp>& pframe,
                        const std::vector<int>& fidx, const std::vector<Cusp>& fframe) {
    int w = -1;
    for (int i : pidx)
      if (!std::binary_search(fidx.begin(), fidx.end(), i)) {
        w = i;
        break;
      }
    std::vector<IntVec> v{ctx.ell(t.verts[w])};
    for (const auto& c : fframe) v.push_back(ctx.ell(c));
    return orient(ctx.ells(pframe), v);
  };
  cx.d.assign(4, IntMat());
  for (int k = 1; k <= 3; ++k) {
    IntMat d(cx.cells[k - 1].size(), cx.cells[k].size());
    for (size_t r = 0; r < reps[k].size(); ++r) {
      if (kept[k][r] < 0) continue;
      const Cell& P = reps[k][r];
      const Top& t = tops[P.top];
      for (const auto& fidx : t.faces[k]) {
        if (!is_subset(fidx, P.top_vertices)) continue;
        const Assignment& as = assign.at({P.top, fidx});
        int row = kept[k - 1][as.rep];
        if (row < 0) continue;
        const Cell& Fr = reps[k - 1][as.rep];
        auto fframe = ctx.frame(sorted_cusps(t, fidx), k - 1);
        int eps = facet_sign(t, P.top_vertices, P.frame, fidx, fframe);
        int eta = orient(ctx.ells(Fr.frame), ctx.ells(act_all(F, as.g, fframe)));
        d(row, kept[k][r]) += eps * eta;
      }
    }
    cx.d[k] = d;
  }

  // triangulations
  auto less = [&](const Cusp& a, const Cusp& b) { return opt.order == VertexOrder::Canonical ? a < b : b < a; };
  auto least = [&](const std::vector<Cusp>& cs) { return *std::min_element(cs.begin(), cs.end(), less); };
  std::vector<std::vector<std::array<Cusp, 3>>> tri2(reps[2].size());
  for (size_t r = 0; r < reps[2].size(); ++r) {
    const Cell& P = reps[2][r];
    const Top& t = tops[P.top];
    Cusp v0 = least(P.vertices);
    auto pf = ctx.ells(P.frame);
    for (const auto& e : t.faces[2]) {
      if (!is_subset(e, P.top_vertices)) continue;
      Cusp a = t.verts[e[0]], b = t.verts[e[1]];
      if (a == v0 || b == v0) continue;
      std::array<Cusp, 3> tri{v0, a, b};
      if (orient(pf, ctx.ells({v0, a, b})) < 0) std::swap(tri[1], tri[2]);
      tri2[r].push_back(tri);
    }
  }
  for (size_t r = 0; r < reps[2].size(); ++r)
    if (kept[2][r] >= 0) cx.face_triangles.push_back(tri2[r]);

  for (size_t r = 0; r < reps[3].size(); ++r) {
    if (kept[3][r] < 0) continue;
    const Cell& P = reps[3][r];
    const Top& t = tops[P.top];
    Cusp v0 = least(P.vertices);
    auto pf = ctx.ells(P.frame);
    std::map<std::array<Cusp, 4>, int> chain;
    for (const auto& fidx : t.faces[3]) {
      const Assignment& as = assign.at({P.top, fidx});
      auto fverts = sorted_cusps(t, fidx);
      auto fframe = ctx.frame(fverts, 2);
      int eps = facet_sign(t, P.top_vertices, P.frame, fidx, fframe);
      FMatrix ginv = *f_inverse(F, as.g, 2);
      auto ff = ctx.ells(fframe);
      for (const auto& tr : tri2[as.rep]) {
        std::array<Cusp, 3> s{act(F, ginv, tr[0]), act(F, ginv, tr[1]), act(F, ginv, tr[2])};
        if (s[0] == v0 || s[1] == v0 || s[2] == v0) continue;
        int st = orient(ff, ctx.ells({s[0], s[1], s[2]}));
        std::array<Cusp, 4> tet{v0, s[0], s[1], s[2]};
        int coef = eps * st;
        std::array<Cusp, 4> key = tet;
        std::sort(key.begin() + 1, key.end());
        int par = 1;
        for (int i = 1; i < 4; ++i)
          for (int j = i + 1; j < 4; ++j)
            if (tet[j] < tet[i]) par = -par;
        chain[key] += coef * par;
      }
    }
    std::vector<Tetrahedron> tets;
    for (const auto& [key, coef] : chain) {
      if (coef == 0) continue;
      if (coef != 1 && coef != -1) throw std::logic_error("tetrahedron multiplicity exceeds one");
      Tetrahedron tt{key, coef};
      std::vector<Cusp> kv(key.begin(), key.end());
      if (rank(ctx.ells(kv)) == 4) {
        int o = orient(pf, ctx.ells(kv));
        if (o != coef) throw std::logic_error("tetrahedron orientation disagrees with its cell");
        if (o < 0) std::swap(tt.v[2], tt.v[3]);
        tt.sign = 1;
      }
      tets.push_back(tt);
    }
    cx.tetrahedra.push_back(tets);
  }

  for (int k = 1; k <= 3; ++k)
    for (const auto& c : cx.dropped[k])
      cx.notes.push_back("dropped orientation-reversed " + std::to_string(k) + "-cell with " +
                         std::to_string(c.vertices.size()) + " vertices");
  return cx;
}

std::vector<std::vector<int>> pulling_triangulation(const VRep& v, const HRep& h, const std::vector<int>& order) {
  std::vector<int> rankpos(v.rays.size());
  for (size_t i = 0; i < order.size(); ++i) rankpos[order[i]] = static_cast<int>(i);
  std::vector<std::vector<std::vector<int>>> faces(v.d + 1);
  for (int k = 1; k <= v.d; ++k) faces[k] = vrep_faces(v, h, k);
  int top = v.d;
  while (top > 0 && faces[top].empty()) --top;
  if (top == 0) return {};
  std::map<std::vector<int>, std::vector<std::vector<int>>> memo;
  std::function<std::vector<std::vector<int>>(const std::vector<int>&, int)> tri = [&](const std::vector<int>& f,
                                                                                        int k) {
    auto it = memo.find(f);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (static_cast<int>(f.size()) == k) {
      out.push_back(f);
    } else {
      int v0 = *std::min_element(f.begin(), f.end(), [&](int a, int b) { return rankpos[a] < rankpos[b]; });
      for (const auto& g : faces[k - 1]) {
        if (!is_subset(g, f) || std::binary_search(g.begin(), g.end(), v0)) continue;
        for (auto s : tri(g, k - 1)) {
          s.insert(s.begin(), v0);
          out.push_back(s);
        }
      }
    }
    memo[f] = out;
    return out;
  };
  auto simplices = tri(faces[top][0], top);
  std::vector<IntVec> frame;
  for (size_t i = 0; i < v.rays.size() && static_cast<int>(frame.size()) < top; ++i) {
    frame.push_back(v.rays[i]);
    if (rank(frame) < frame.size()) frame.pop_back();
  }
  for (auto& s : simplices) {
    std::vector<IntVec> rs;
    for (int i : s) rs.push_back(v.rays[i]);
    if (orient(frame, rs) < 0) std::swap(s[s.size() - 2], s[s.size() - 1]);
  }
  return simplices;
}

// ---------------------------------------------------------------- N

namespace {

long euler_phi(long m) {
  long r = m;
  for (long p = 2; p * p <= m; ++p)
    if (m % p == 0) {
      while (m % p == 0) m /= p;
      r -= r / p;
    }
  if (m > 1) r -= r / m;
  return r;
}

}  // namespace

std::optional<FieldElement> two_cos_pi_over(const NumberField& F, int r) {
  if (r < 2) throw std::invalid_argument("r must be at least 2");
  if (r == 2) return F.zero();
  int n = F.degree();
  if (n % (euler_phi(2 * r) / 2) != 0) return std::nullopt;
  if (F.kind() == FieldKind::Other) throw std::domain_error("field must be totally real or CM");
  FieldElement m2 = F.from_int(-2);
  for (const auto& e : F.short_elements(Rational(4 * n))) {
    if (e.conj() != e) continue;
    for (const auto& y : {e, -e}) {
      if (dickson(y, r) != m2) continue;
      bool primitive = true;
      for (int d = 1; d < r && primitive; ++d)
        if (r % d == 0 && (r / d) % 2 == 1 && dickson(y, d) == m2) primitive = false;
      if (primitive) return y;
    }
  }
  return std::nullopt;
}

bool contains_two_cos_pi_over(const NumberField& F, int r) { return two_cos_pi_over(F, r).has_value(); }

NReport compute_N(const NumberField& F, const VoronoiComplex* cx) {
  NReport rep;
  long L = 1;
  int n = F.degree();
  for (int r = 2; r <= 4 * n * n + 8; ++r) {
    if (!contains_two_cos_pi_over(F, r)) continue;
    rep.groups.push_back("Z/" + std::to_string(r));
    rep.groups.push_back("D_" + std::to_string(r));
    L = std::lcm(L, 2L * r);
  }
  auto ts = F.minus_one_sum_of_two_squares();
  if (ts.status == TwoSquaresResult::Undecided) {
    rep.certain = false;
    rep.detail = "sum-of-two-squares test undecided; N uncertain, using observed lcm";
  } else if (ts.status == TwoSquaresResult::True) {
    rep.groups.push_back("A4");
    L = std::lcm(L, 12L);
    if (F.sqrt(F.from_int(2))) {
      rep.groups.push_back("S4");
      L = std::lcm(L, 24L);
    }
    if (F.sqrt5_in_field()) {
      rep.groups.push_back("A5");
      L = std::lcm(L, 60L);
    }
  }
  rep.theorem_bound = L;
  if (cx) {
    for (const auto* list : {&cx->cells, &cx->dropped})
      for (const auto& cs : *list)
        for (const auto& c : cs)
          if (c.stabilizer_order > 0) rep.observed_lcm = std::lcm(rep.observed_lcm, static_cast<long>(c.stabilizer_order));
  }
  if (rep.certain && L % rep.observed_lcm != 0) rep.detail = "observed stabilizer lcm does not divide the bound";
  return rep;
}

// ---------------------------------------------------------------- homology

ComplexHomology complex_homology(const VoronoiComplex& cx, long N) {
  ComplexHomology out;
  std::vector<size_t> sz(4);
  for (int k = 0; k < 4; ++k) sz[k] = cx.cells[k].size();
  auto dk = [&](int k) -> IntMat {
    if (k == 0) return IntMat(0, sz[0]);
    if (k == 4) return IntMat(sz[3], 0);
    return cx.d[k];
  };
  for (int k = 2; k <= 3; ++k) {
    IntMat p = cx.d[k - 1] * cx.d[k];
    for (size_t i = 0; i < p.rows && out.dd_zero; ++i)
      for (size_t j = 0; j < p.cols; ++j)
        if (p(i, j) != 0) {
          out.dd_zero = false;
          out.dd_failure = "d" + std::to_string(k - 1) + " d" + std::to_string(k) + " nonzero at cells (" +
                           std::to_string(i) + ", " + std::to_string(j) + ")";
          break;
        }
  }
  for (int k = 0; k <= 3; ++k) out.groups.push_back(homology_at(sz[k], dk(k), dk(k + 1)));
  for (const auto& kv : integer_kernel(cx.d[3])) {
    H3Generator g;
    g.kernel = canonical_sign(kv);
    g.kernel_matches = true;
    Rational ratio;
    bool first = true;
    for (size_t j = 0; j < sz[3]; ++j) {
      const Integer& k = g.kernel[j];
      int e = k > 0 ? 1 : (k < 0 ? -1 : 0);
      g.eps.push_back(e);
      long s = cx.cells[3][j].stabilizer_order;
      if (e == 0 || N % s != 0) {
        g.kernel_matches = false;
        g.weights.push_back(0);
        continue;
      }
      g.weights.push_back(Integer(e * (N / s)));
      Rational r = Rational(abs(k) * s);
      if (first) {
        ratio = r;
        first = false;
      } else if (r != ratio) {
        g.kernel_matches = false;
      }
    }
    out.h3.push_back(g);
  }
  return out;
}

namespace {

// A point of the subdivided complex: a cusp, or the centre of the cell spanned by the given cusps.
struct Pt {
  bool centre = false;
  std::vector<Cusp> cs;
  bool operator<(const Pt& o) const { return std::tie(centre, cs) < std::tie(o.centre, o.cs); }
  bool operator==(const Pt& o) const { return centre == o.centre && cs == o.cs; }
};
using Simplex = std::vector<Pt>;
using Chain = std::map<Simplex, int>;  // sorted simplex -> coefficient

Pt cusp_pt(const Cusp& c) { return Pt{false, {c}}; }

Simplex act_simplex(const NumberField& F, const FMatrix& g, const Simplex& s) {
  Simplex out;
  for (const auto& p : s) {
    Pt q{p.centre, act_all(F, g, p.cs)};
    std::sort(q.cs.begin(), q.cs.end());
    out.push_back(q);
  }
  return out;
}

Simplex sorted(Simplex s) {
  std::sort(s.begin(), s.end());
  return s;
}

int parity(const Simplex& s, const Simplex& target) {
  std::vector<int> perm;
  for (const auto& p : s) perm.push_back(static_cast<int>(std::find(target.begin(), target.end(), p) - target.begin()));
  int sg = 1;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[j] < perm[i]) sg = -sg;
  return sg;
}

void add(Chain& c, const Simplex& s, int coef) {
  Simplex k = sorted(s);
  int& v = c[k];
  v += coef * parity(s, k);
  if (v == 0) c.erase(k);
}

Chain boundary(const Chain& c) {
  Chain out;
  for (const auto& [s, coef] : c)
    for (size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + i);
      add(out, f, i % 2 ? -coef : coef);
    }
  return out;
}

// Stellar subdivision of a chain from a new centre point: the cone over its boundary.
Chain stellar(const Chain& c, const Pt& centre) {
  Chain out;
  for (const auto& [s, coef] : boundary(c)) {
    Simplex t{centre};
    t.insert(t.end(), s.begin(), s.end());
    add(out, t, coef);
  }
  return out;
}

std::vector<Cusp> support(const Simplex& s) {
  std::set<Cusp> u;
  for (const auto& p : s) u.insert(p.cs.begin(), p.cs.end());
  return {u.begin(), u.end()};
}

// True if every map of the support of the chain onto itself permutes its simplices.
bool invariant(const NumberField& F, const Chain& c) {
  std::set<Cusp> u;
  std::set<Simplex> keys;
  for (const auto& kv : c) {
    keys.insert(kv.first);
    for (const auto& p : kv.first) u.insert(p.cs.begin(), p.cs.end());
  }
  std::vector<Cusp> verts(u.begin(), u.end());
  for (const auto& g : psl_maps(F, verts, verts)) {
    std::set<Simplex> img;
    for (const auto& k : keys) img.insert(sorted(act_simplex(F, g, k)));
    if (img != keys) return false;
  }
  return true;
}

struct SimplexClasses {
  const NumberField& F;
  std::vector<Simplex> reps;
  std::vector<bool> reversing;
  std::map<Simplex, std::pair<int, FMatrix>> cache;

  static bool cusps_only(const Simplex& s) {
    return std::none_of(s.begin(), s.end(), [](const Pt& p) { return p.centre; });
  }
  static std::vector<std::pair<bool, size_t>> shape(const Simplex& s) {
    std::vector<std::pair<bool, size_t>> out;
    for (const auto& p : s) out.push_back({p.centre, p.cs.size()});
    std::sort(out.begin(), out.end());
    return out;
  }

  // maps g with g . a = b as sets of points (a, b sorted)
  std::vector<FMatrix> maps(const Simplex& a, const Simplex& b, bool first_only) {
    if (a.size() != b.size() || shape(a) != shape(b)) return {};
    if (cusps_only(a)) return psl_maps(F, support(a), support(b), first_only);
    std::vector<Cusp> u = support(a), v = support(b);
    std::vector<FMatrix> out;
    if (u.size() != v.size()) return out;
    for (const auto& g : psl_maps(F, u, v))
      if (sorted(act_simplex(F, g, a)) == b) {
        out.push_back(g);
        if (first_only) break;
      }
    return out;
  }

  // class index and sign of the ordered simplex s
  std::pair<int, int> classify(const Simplex& s) {
    Simplex key = sorted(s);
    auto it = cache.find(key);
    if (it == cache.end()) {
      std::pair<int, FMatrix> found{-1, {}};
      for (size_t r = 0; r < reps.size() && found.first < 0; ++r) {
        auto gs = maps(key, reps[r], true);
        if (!gs.empty()) found = {static_cast<int>(r), gs[0]};
      }
      if (found.first < 0) {
        found = {static_cast<int>(reps.size()), FMatrix{F.one(), F.zero(), F.zero(), F.one()}};
        reps.push_back(key);
        bool rev = false;
        if (key.size() >= 2)
          for (const auto& g : maps(key, key, false))
            if (parity(act_simplex(F, g, key), key) < 0) rev = true;
        reversing.push_back(rev);
      }
      it = cache.emplace(key, found).first;
    }
    int cls = it->second.first;
    if (s.size() == 1) return {cls, 1};
    return {cls, parity(act_simplex(F, it->second.second, s), reps[cls])};
  }
};

}  // namespace

TriangulatedHomology triangulated_homology(const NumberField& F, const VoronoiComplex& cx, const H3Generator* gen) {
  TriangulatedHomology out;
  TSubspace T = t_subspace(F, 2);
  Ctx ctx{F, T, {}};
  auto coplanar = [&](std::vector<Cusp> cs, const Cusp& c) {
    cs.push_back(c);
    return rank(ctx.ells(cs)) < cs.size();
  };

  // Subdivide each 3-cell representative so that the result is invariant under the stabilizers.
  std::vector<Chain> cell_chain(cx.tetrahedra.size());
  for (size_t j = 0; j < cx.tetrahedra.size(); ++j) {
    Chain P;
    bool flat = false;
    for (const auto& t : cx.tetrahedra[j]) {
      std::vector<Cusp> v(t.v.begin(), t.v.end());
      flat = flat || coplanar({v[0], v[1], v[2]}, v[3]);
      add(P, {cusp_pt(v[0]), cusp_pt(v[1]), cusp_pt(v[2]), cusp_pt(v[3])}, t.sign);
    }
    Chain B = boundary(P), nb;
    bool changed = false;
    while (!B.empty()) {
      std::vector<Cusp> plane = support(B.begin()->first);
      Chain face;
      for (auto it = B.begin(); it != B.end();) {
        auto sup = support(it->first);
        if (std::all_of(sup.begin(), sup.end(), [&](const Cusp& c) { return coplanar(plane, c); })) {
          face.insert(*it);
          it = B.erase(it);
        } else {
          ++it;
        }
      }
      if (!invariant(F, face)) {
        Simplex all;
        for (const auto& kv : face) all.insert(all.end(), kv.first.begin(), kv.first.end());
        face = stellar(face, Pt{true, support(all)});
        changed = true;
      }
      for (const auto& [s, c] : face) add(nb, s, c);
    }
    if (changed || flat || !invariant(F, P)) {
      P.clear();
      std::vector<Cusp> verts = cx.cells[3][j].vertices;
      std::sort(verts.begin(), verts.end());
      Pt centre{true, verts};
      for (const auto& [s, c] : nb) {
        Simplex t{centre};
        t.insert(t.end(), s.begin(), s.end());
        add(P, t, c);
      }
    }
    cell_chain[j] = P;
  }

  std::vector<SimplexClasses> cls;
  for (int k = 0; k <= 3; ++k) cls.push_back(SimplexClasses{F, {}, {}, {}});
  std::vector<std::vector<std::pair<int, int>>> cell_tets(cell_chain.size());
  std::set<Simplex> seen[4];
  std::vector<Simplex> todo[4];
  for (size_t j = 0; j < cell_chain.size(); ++j)
    for (const auto& [s, coef] : cell_chain[j]) {
      auto [c, sg] = cls[3].classify(s);
      cell_tets[j].push_back({c, sg * coef});
      if (seen[3].insert(s).second) todo[3].push_back(s);
    }
  for (int k = 3; k >= 1; --k)
    for (const auto& s : todo[k])
      for (size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + i);
        if (seen[k - 1].insert(f).second) todo[k - 1].push_back(f);
      }
  for (int k = 0; k <= 3; ++k)
    for (const auto& s : todo[k]) cls[k].classify(s);
  for (const auto& r : cls[0].reps)
    if (r[0].centre) ++out.centres;

  std::vector<std::vector<int>> kept(4);
  std::vector<size_t> sz(4, 0);
  for (int k = 0; k <= 3; ++k) {
    kept[k].assign(cls[k].reps.size(), -1);
    for (size_t r = 0; r < cls[k].reps.size(); ++r)
      if (!cls[k].reversing[r]) kept[k][r] = static_cast<int>(sz[k]++);
  }
  out.counts = sz;
  std::vector<IntMat> d(5);
  d[0] = IntMat(0, sz[0]);
  d[4] = IntMat(sz[3], 0);
  for (int k = 1; k <= 3; ++k) {
    d[k] = IntMat(sz[k - 1], sz[k]);
    for (size_t r = 0; r < cls[k].reps.size(); ++r) {
      if (kept[k][r] < 0) continue;
      const auto& s = cls[k].reps[r];
      for (size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + i);
        auto [c, sg] = cls[k - 1].classify(f);
        if (kept[k - 1][c] < 0) continue;
        d[k](kept[k - 1][c], kept[k][r]) += (i % 2 ? -1 : 1) * sg;
      }
    }
  }
  for (int k = 2; k <= 3; ++k) {
    IntMat p = d[k - 1] * d[k];
    for (const auto& e : p.a)
      if (e != 0) out.dd_zero = false;
  }
  for (int k = 0; k <= 3; ++k) out.groups.push_back(homology_at(sz[k], d[k], d[k + 1]));
  if (gen) {
    IntVec c(sz[3], 0);
    for (size_t j = 0; j < cell_tets.size() && j < gen->weights.size(); ++j)
      for (const auto& [cl, sg] : cell_tets[j])
        if (kept[3][cl] >= 0) c[kept[3][cl]] += gen->weights[j] * sg;
    IntVec b = d[3] * c;
    out.cycle_ok = is_zero(b) && !is_zero(c);
  }
  return out;
}

}  // namespace vorbloch
