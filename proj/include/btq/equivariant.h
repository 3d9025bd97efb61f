#pragma once
#include <array>
#include <optional>
#include <string>
#include <vector>

#include "btq/complex.h"
#include "btq/homology.h"
#include "btq/intmat.h"
#include "btq/model.h"

namespace btq {

// Finite group by multiplication table; identity is element 0.
struct FiniteGroup {
  int n = 1;
  std::vector<int> table{0};
  std::vector<int> inverse{0};
  std::string name = "1";
  int cyclic_order = 0;  // set for cyclic groups: closed-form homology applies
  int field = 0;                              // matrix groups: the q of F_q
  std::vector<std::array<int, 4>> matrices;   // matrix groups: element i as (a, b, c, d)

  int mul(int a, int b) const { return table[a * n + b]; }
  int inv(int a) const { return inverse[a]; }
  int conj(int g, int h) const { return mul(inv(g), mul(h, g)); }  // g^-1 h g
  bool is_abelian() const;
  int element_order(int a) const;

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int m);
  // Z/m extended by an involution inverting it
  static FiniteGroup dihedral(int m);
  // determinant-one monomial 2x2 matrices over F_q: diag(a, 1/a) and [[0, a], [-1/a, 0]]
  static FiniteGroup monomial_sl2(int q);
  // the same group as x^i y^e with x of order q-1, y x y^-1 = x^-1 and
  // y^2 = x^((q-1)/2) (q odd) or 1 (q even); elements 0..q-2 are the torus
  static FiniteGroup torus_normalizer(int q);
  static FiniteGroup gl2(int q);
  static FiniteGroup sl2(int q);
  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b);
  // checks the group axioms, identity at index 0; order <= 32
  static FiniteGroup from_table(const std::vector<std::vector<int>>& t, const std::string& name = "table");
  static FiniteGroup parse(const std::string& name);  // "C3", "D4", "SL2(3)", "GL2(2)", "M(3)"
  // subgroup on the listed elements (must contain 0 and be closed);
  // result element i corresponds to elems[i]
  FiniteGroup subgroup(const std::vector<int>& elems) const;
};

// Normalized bar complex with trivial coefficients: C_k has basis the
// k-tuples of non-identity elements.
long long bar_rank(const FiniteGroup& G, int k);
SparseMatrix bar_boundary(const FiniteGroup& G, int k);

// H_n(G; coeff). Cyclic groups use the closed form; others the bar complex,
// capped in size (throws std::length_error beyond the cap).
FgAbGroup group_homology(const FiniteGroup& G, int n, Coeff coeff = Coeff::integers());
FgAbGroup group_homology_bar(const FiniteGroup& G, int n, Coeff coeff = Coeff::integers());

// Finite G acting cellularly on a finite complex.
struct GComplex {
  FiniteGroup G;
  std::vector<int> counts;
  std::vector<SparseMatrix> d;  // d[p] : C_p -> C_{p-1}; d[0] has 0 rows
  // act[p][g * counts[p] + c] = (image cell, orientation sign)
  std::vector<std::vector<std::pair<int, int>>> act;
  std::optional<SimplicialComplex> simplicial;
  std::vector<std::vector<int>> vertex_perm;  // per element, when simplicial

  static GComplex from_simplicial(const FiniteGroup& G, const SimplicialComplex& K,
                                  const std::vector<std::vector<int>>& vertex_perm);
  int dim() const { return static_cast<int>(counts.size()) - 1; }
  ChainComplex chain_complex() const;
  // action commutes with the boundary and is a group action
  bool validate() const;
  // every stabilizer fixes its cell and all faces with orientation
  bool stabilizers_trivial() const;
  GComplex subdivided() const;  // barycentric; simplicial complexes only
  // the quotient C(X)/C(A) by a G-stable subcomplex A, as a G-complex
  GComplex quotient(const std::vector<std::vector<bool>>& in_A) const;
};

// Orbit data: cells of the quotient with stabilizers and, per boundary term,
// the homomorphism from the cell stabilizer into the face stabilizer.
struct OrbitCell {
  FiniteGroup stab;
  struct Face {
    int target = 0;
    long long coeff = 0;
    std::vector<int> hom;  // element of stab -> element of the face stabilizer
  };
  std::vector<Face> faces;
};
struct OrbitComplex {
  std::vector<std::vector<OrbitCell>> cells;  // [p][orbit]
  bool subdivided = false;
  ChainComplex quotient_chains() const;  // the q = 0 row
};
OrbitComplex orbit_complex(const GComplex& X);  // subdivides when needed

// Window quotient of an SN model complex with torus stabilizers on ordinary
// cells and the torus normalizer on special vertices.
OrbitComplex sn_orbit_complex(const CrystGroup& g, int window, int q);

// Subquotient Z^k / rel with generators given in an ambient lattice.
struct Presented {
  IntMatrix gens;  // ambient x k
  IntMatrix rel;   // k x r
  FgAbGroup group() const;
  int k() const { return gens.cols; }
};

struct E1Page {
  Coeff coeff;
  int pmax = 0, qmax = 0;
  std::vector<std::vector<Presented>> entry;       // [p][q]
  std::vector<std::vector<IntMatrix>> d1;          // [p][q] : E1_{p,q} -> E1_{p-1,q} (p >= 1)
  FgAbGroup group(int p, int q) const;
  bool d1_squares_to_zero() const;
  std::string csv() const;
};
E1Page e1_page(const OrbitComplex& X, int qmax, Coeff coeff = Coeff::integers());
E1Page e1_page(const GComplex& X, int qmax, Coeff coeff = Coeff::integers());

struct E2Result {
  std::vector<std::vector<FgAbGroup>> e2;  // [p][q]
  bool degenerate = false;                 // no higher differentials possible
  std::vector<FgAbGroup> total;            // by total degree <= qmax, when degenerate
  std::vector<std::string> notes;
  std::string csv() const;
};
E2Result e2_and_total(const E1Page& page);

// Homology of C(X) tensored over ZG with the bar resolution; the direct
// oracle for the spectral sequence.
std::vector<FgAbGroup> equivariant_homology(const GComplex& X, int nmax, Coeff coeff = Coeff::integers());

// 0 -> C(A) -> C(X) -> C(X)/C(A) -> 0 on chains, and exactness of the long
// exact sequence in homology checked with ranks over F_p.
struct SesReport {
  bool subcomplex = false;
  bool short_exact = false;
  bool long_exact = false;
  std::vector<long long> primes;
  std::vector<std::string> lines;
};
SesReport chain_ses_check(const ChainComplex& X, const std::vector<std::vector<bool>>& in_A,
                          const std::vector<long long>& primes = {2, 3, 5});

}  // namespace btq
