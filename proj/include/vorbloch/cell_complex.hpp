#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "vorbloch/forms.hpp"
#include "vorbloch/polyhedra.hpp"
#include "vorbloch/snf.hpp"
#include "vorbloch/voronoi.hpp"

namespace vorbloch {

// Cusp (y : x) of a primitive vector v = (x, y) in O_F^2, canonical up to torsion units.
struct Cusp {
  IntVec x, y;
  bool operator==(const Cusp& o) const { return x == o.x && y == o.y; }
  bool operator<(const Cusp& o) const { return x != o.x ? x < o.x : y < o.y; }
};
std::string to_string(const Cusp& c);

Cusp cusp_of_vector(const NumberField& F, const FieldElement& x, const FieldElement& y);
// Throws std::invalid_argument unless q has rank 1.
Cusp cusp_of_ray(const NumberField& F, const HermitianForm& q);
std::array<FieldElement, 2> cusp_vector(const NumberField& F, const Cusp& c);
Cusp act(const NumberField& F, const FMatrix& g, const Cusp& c);
// All g in PSL_2(O_F) (one per sign) with g.S = S2 as sets; imaginary quadratic, class number 1.
std::vector<FMatrix> psl_maps(const NumberField& F, const std::vector<Cusp>& S, const std::vector<Cusp>& S2,
                              bool first_only = false);

enum class VertexOrder { Canonical, Reversed };

struct Cell {
  int dim = 0;
  std::vector<Cusp> vertices;  // canonical order
  std::vector<Cusp> frame;     // first dim+1 independent vertices, orientation frame
  int stabilizer_order = 1;    // in PSL_2(O_F); 0 for cusps (infinite)
  std::vector<FMatrix> stabilizer;
  bool orientation_reversing = false;
  int top = -1;
  std::vector<int> top_vertices;
};

// sign * [v0, v1, v2, v3]; sign is +1 unless the four cusps are coplanar (degenerate cone term).
struct Tetrahedron {
  std::array<Cusp, 4> v;
  int sign = 1;
};

struct VoronoiComplex {
  std::vector<std::vector<Cell>> cells;    // by dimension 0..3, orientable representatives
  std::vector<std::vector<Cell>> dropped;  // representatives with an orientation-reversing stabilizer
  std::vector<IntMat> d;                   // d[k]: C_k -> C_{k-1}, k = 1..3
  std::vector<std::vector<std::array<Cusp, 3>>> face_triangles;  // per 2-cell
  std::vector<std::vector<Tetrahedron>> tetrahedra;              // per 3-cell
  std::vector<int> descent;                                      // PSL top cells per GL class
  std::vector<std::string> notes;
  VertexOrder order = VertexOrder::Canonical;
};

struct ComplexOptions {
  VertexOrder order = VertexOrder::Canonical;
  size_t equiv_budget = 5000000;
};

// Throws std::domain_error outside imaginary quadratic norm-Euclidean fields or for an incomplete graph.
VoronoiComplex build_complex(const NumberField& F, const TSubspace& T, const VoronoiGraph& g,
                             const ComplexOptions& opt = {});

// Pulling triangulation of a cone from its least ray in `order`; simplices as ray-index lists,
// positively oriented relative to the frame of the first independent rays.
std::vector<std::vector<int>> pulling_triangulation(const VRep& v, const HRep& h, const std::vector<int>& order);

struct NReport {
  long theorem_bound = 0;
  long observed_lcm = 1;
  bool certain = true;
  std::vector<std::string> groups;
  std::string detail;
};
// An element 2cos(pi k/r) of F with gcd(k, 2r) = 1, if any (exact).
std::optional<FieldElement> two_cos_pi_over(const NumberField& F, int r);
bool contains_two_cos_pi_over(const NumberField& F, int r);
NReport compute_N(const NumberField& F, const VoronoiComplex* cx);

struct H3Generator {
  std::vector<int> eps;           // orientation signs of the 3-cells
  std::vector<Integer> weights;   // eps_j N / |Gamma_j|
  IntVec kernel;                  // primitive kernel vector of d_3
  bool kernel_matches = false;    // kernel proportional to eps_j / |Gamma_j|
};

struct ComplexHomology {
  std::vector<HomologyGroup> groups;  // H_0..H_3
  bool dd_zero = true;
  std::string dd_failure;
  std::vector<H3Generator> h3;
};
ComplexHomology complex_homology(const VoronoiComplex& cx, long N);

// Homology modulo PSL_2(O_F) of an equivariant simplicial subdivision: the pulling triangulation
// where the stabilizers preserve it, a stellar subdivision from the cell centre elsewhere.
struct TriangulatedHomology {
  std::vector<HomologyGroup> groups;
  std::vector<size_t> counts;  // generators per dimension
  bool dd_zero = true;
  bool cycle_ok = false;  // the weighted H_3 generator is a cycle
  size_t centres = 0;     // classes of cell centres added by stellar subdivision
};
TriangulatedHomology triangulated_homology(const NumberField& F, const VoronoiComplex& cx, const H3Generator* gen);

}  // namespace vorbloch
