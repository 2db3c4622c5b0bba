#include <doctest.h>

#include "vorbloch/cell_complex.hpp"

using namespace vorbloch;

namespace {

struct Built {
  NumberField F;
  VoronoiComplex cx;
};

Built build(const Poly& p, VertexOrder order) {
  auto F = NumberField::create(p);
  TSubspace T = t_subspace(F, 2);
  auto g = enumerate_perfect(F, T, initial_t_perfect(T, trace_form(F, hermitian_identity(F, 2))), EnumOptions{});
  ComplexOptions o;
  o.order = order;
  return {F, build_complex(F, T, g, o)};
}

bool same_groups(const std::vector<HomologyGroup>& a, const std::vector<HomologyGroup>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].betti != b[i].betti || a[i].torsion != b[i].torsion) return false;
  return true;
}

}  // namespace

TEST_CASE("cusps are canonical up to units") {
  auto F = NumberField::create(Poly{1, 0, 1});
  auto x = F.from_coords(IntVec{2, 1}), y = F.from_coords(IntVec{1, -1});
  Cusp c = cusp_of_vector(F, x, y);
  auto i = F.basis_element(1);
  CHECK(cusp_of_vector(F, x * i, y * i) == c);
  CHECK(cusp_of_vector(F, -x, -y) == c);
  auto v = cusp_vector(F, c);
  CHECK(cusp_of_vector(F, v[0], v[1]) == c);
  FMatrix id{F.one(), F.zero(), F.zero(), F.one()};
  CHECK(act(F, id, c) == c);
  CHECK_THROWS_AS(cusp_of_ray(F, hermitian_identity(F, 2)), std::invalid_argument);
}

TEST_CASE("psl maps include the identity") {
  auto F = NumberField::create(Poly{1, 0, 1});
  std::vector<Cusp> S{cusp_of_vector(F, F.one(), F.zero()), cusp_of_vector(F, F.zero(), F.one()),
                      cusp_of_vector(F, F.one(), F.one())};
  auto maps = psl_maps(F, S, S);
  CHECK(maps.size() >= 1);
  for (const auto& g : maps) CHECK(f_det(F, g, 2) == F.one());
}

TEST_CASE("real cyclotomic elements") {
  CHECK(contains_two_cos_pi_over(NumberField::create(Poly{-1, -1, 1}), 5));
  CHECK(contains_two_cos_pi_over(NumberField::create(Poly{-2, 0, 1}), 4));
  CHECK_FALSE(contains_two_cos_pi_over(NumberField::create(Poly{1, 0, 1}), 4));
  CHECK_FALSE(contains_two_cos_pi_over(NumberField::create(Poly{1, 1, 1}), 6));
  CHECK(compute_N(NumberField::create(Poly{1, 0, 1}), nullptr).theorem_bound == 12);
}

TEST_CASE("gaussian complex") {
  auto b = build(Poly{1, 0, 1}, VertexOrder::Canonical);
  auto N = compute_N(b.F, &b.cx);
  CHECK(N.theorem_bound == 12);
  auto h = complex_homology(b.cx, N.theorem_bound);
  CHECK(h.dd_zero);
  REQUIRE(h.groups.size() == 4);
  CHECK(h.groups[0].betti == 1);
  CHECK(h.groups[3].betti == 1);
  REQUIRE(h.h3.size() == 1);
  CHECK(h.h3[0].kernel_matches);
  auto th = triangulated_homology(b.F, b.cx, &h.h3[0]);
  CHECK(th.dd_zero);
  CHECK(th.cycle_ok);
  for (const auto& tets : b.cx.tetrahedra)
    for (const auto& t : tets) CHECK((t.sign == 1 || t.sign == -1));
}

TEST_CASE("homology is independent of the vertex order") {
  for (const Poly& p : {Poly{1, 0, 1}, Poly{1, 1, 1}}) {
    auto a = build(p, VertexOrder::Canonical);
    auto r = build(p, VertexOrder::Reversed);
    auto ha = complex_homology(a.cx, 12), hr = complex_homology(r.cx, 12);
    CHECK(same_groups(ha.groups, hr.groups));
    REQUIRE(ha.h3.size() == 1);
    REQUIRE(hr.h3.size() == 1);
    CHECK(ha.h3[0].weights == hr.h3[0].weights);
    auto ta = triangulated_homology(a.F, a.cx, &ha.h3[0]), tr = triangulated_homology(r.F, r.cx, &hr.h3[0]);
    CHECK(same_groups(ta.groups, tr.groups));
  }
}

TEST_CASE("subdivided quotient of a field with symmetric cells") {
  auto a = build(Poly{3, 1, 1}, VertexOrder::Canonical);
  auto r = build(Poly{3, 1, 1}, VertexOrder::Reversed);
  auto ha = complex_homology(a.cx, 12), hr = complex_homology(r.cx, 12);
  REQUIRE(ha.h3.size() == 1);
  auto ta = triangulated_homology(a.F, a.cx, &ha.h3[0]), tr = triangulated_homology(r.F, r.cx, &hr.h3[0]);
  CHECK(ta.centres > 0);
  CHECK(ta.dd_zero);
  CHECK(ta.cycle_ok);
  CHECK(same_groups(ta.groups, tr.groups));
  for (int k = 0; k <= 3; ++k) CHECK(ta.groups[k].betti == ha.groups[k].betti);
}

TEST_CASE("eisenstein complex has torsion in degree two") {
  auto b = build(Poly{1, 1, 1}, VertexOrder::Canonical);
  auto h = complex_homology(b.cx, 12);
  CHECK(h.dd_zero);
  CHECK(h.groups[3].betti == 1);
  CHECK(h.groups[2].torsion == std::vector<Integer>{4});
}

TEST_CASE("fields outside the supported range") {
  auto F = NumberField::create(Poly{-2, 0, 1});
  TSubspace T = t_subspace(F, 2);
  VoronoiGraph g;
  CHECK_THROWS_AS(build_complex(F, T, g), std::domain_error);
}
