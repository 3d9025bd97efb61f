#pragma once
#include <map>
#include <string>
#include <vector>

#include "btq/building.h"
#include "btq/curve.h"

namespace btq {

// Building of a P^1 configuration: one tree per puncture.
Building building_of(const CurveConfig& c);

// Split type of a vertex bundle: E = O(a) + O(b), a >= b.
struct SplitType {
  int a = 0, b = 0;
};
SplitType split_type(const CurveConfig& c, const BuildingVertex& v);

// Global sections of E(m * inf) as vectors in K^2; dimension only when
// basis == nullptr.
int h0(const CurveConfig& c, const BuildingVertex& v, int m, std::vector<std::array<RatFunc, 2>>* basis = nullptr);

// Class rel the punctures and up to swapping summands: n = a - b and the
// larger degree a reduced mod g = gcd(deg P_i). kclass() is its image in
// K(C) = (Z/g)/(x ~ -x).
struct BundleClass {
  long long n = 0;
  long long a_mod = 0;
  long long g = 1;
  long long kclass() const;
  std::string str() const;
  bool operator==(const BundleClass& o) const { return n == o.n && a_mod == o.a_mod && g == o.g; }
  bool operator<(const BundleClass& o) const { return n != o.n ? n < o.n : a_mod < o.a_mod; }
};
BundleClass classify_vertex(const CurveConfig& c, const BuildingVertex& v);

enum class GroupFlavor { GL2, SL2, PGL2, PSL2 };
std::string flavor_str(GroupFlavor f);

struct StabDescriptor {
  enum Kind { FullGL2k, TorusUnipotent, NonSplitTorus, CentralOnly } kind = CentralOnly;
  int h = 0;                // unipotent dimension
  int ext_degree = 0;       // NonSplitTorus only
  long long order = 0;      // finite order when known, else 0
  GroupFlavor flavor = GroupFlavor::GL2;
  std::vector<Mat2> torus_generators;
  std::vector<RatFunc> unipotent_basis;  // f in [[1,0],[f,1]]
  std::string str() const;
};
StabDescriptor stabilizer_descriptor(const BundleClass& b, const CurveConfig& c, GroupFlavor f = GroupFlavor::GL2);
StabDescriptor nonsplit_torus_descriptor(int q, int ext_degree);

// Line of the fiber E|_{P_i} spanned by a section of E(m * inf), as a
// link coordinate (residue code, or -1 for the line [1:0]).
long long fiber_line(const CurveConfig& c, const BuildingVertex& v, int i, const std::array<RatFunc, 2>& sigma, int m);

// A cube is parabolic when some splitting E = L + L' of the base corner's
// bundle has, in every direction of the cube, the chosen line equal to a
// fiber of L or of L'.
bool is_parabolic(const BuildingCube& cube, const CurveConfig& c);

// Stabilizer of the vertex diag(pi_i^{a_i}, 1) acting on links.
enum class StabPart { Full, Torus, UnipotentStrict };
struct LinkOrbits {
  int direction = 0;
  long long link_size = 0;
  std::vector<std::vector<long long>> orbits;  // link coordinates, -1 = infinity
  std::vector<long long> fixed;                // brute force
  std::vector<long long> predicted_fixed;      // from the fractional-linear formulas
  std::string kind;                            // standard | borel | trivial | transitive | other
};
struct LinkActionReport {
  std::vector<int> exponents;
  BundleClass bundle;
  StabPart part = StabPart::Full;
  std::vector<LinkOrbits> directions;
  bool generators_stabilize = false;
};
BuildingVertex a0_vertex(const CurveConfig& c, const std::vector<int>& a);
// generators of the stabilizer part, as matrices over K
std::vector<Mat2> stabilizer_generators(const CurveConfig& c, const std::vector<int>& a, StabPart part, int direction = -1);
LinkActionReport stabilizer_link_action(const CurveConfig& c, const std::vector<int>& a, StabPart part = StabPart::Full);

// Orbit representatives of cells in a ball around the base vertex.
struct QuotientCell {
  int dim = 0;
  BuildingCube rep;
  BundleClass bundle;          // vertices: the class; cubes: class of the base corner
  std::vector<BundleClass> corner_classes;
  StabDescriptor stab;         // vertices only; cubes carry the split/unsplit label in stab.kind
  bool parabolic = false;
  long long members = 0;       // cells of the ball in this orbit
  bool ambiguous = false;      // another orbit shares every invariant
  bool reversed = false;       // some group element maps the cell to itself reversing orientation
  std::vector<std::pair<int, int>> faces;  // (orbit index in dim-1, sign)
};
struct QuotientComplex {
  GroupFlavor group = GroupFlavor::GL2;
  int radius = 0;
  std::vector<std::vector<QuotientCell>> cells;  // [dim][orbit]
  std::string election = "lexicographic minimum cube per orbit";
  std::vector<int> counts() const;
  // Reversed cells are dropped; the result is meaningful with 2 inverted.
  ChainComplex chain_complex(bool parabolic_only = false) const;
  bool faces_parabolic_closed() const;
  int parabolic_components() const;  // connected components of the parabolic 1-skeleton
};
// D bounds the degree of polynomial entries in the elementary generators;
// D < 0 picks radius + 1.
QuotientComplex quotient_ball(const CurveConfig& c, int r, GroupFlavor group = GroupFlavor::GL2, int D = -1);

// Independent orbit oracle on vertices: union-find under bounded generators.
std::vector<std::vector<BuildingVertex>> vertex_orbits_bfs(const CurveConfig& c, int r, GroupFlavor group, int D = -1);
std::vector<Mat2> group_generators(const CurveConfig& c, GroupFlavor group, int D);

}  // namespace btq
