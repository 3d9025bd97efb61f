#pragma once
#include <map>
#include <string>
#include <vector>

#include "btq/equivariant.h"
#include "btq/homology.h"

namespace btq {

// Points of P^1(F_q) are coded 0..q-1 (field elements) and q (infinity).
enum class PointsVariant { Plain, Alternating };
std::string variant_str(PointsVariant v);
PointsVariant parse_variant(const std::string& s);

struct PointsComplex {
  int q = 0, N = 0;
  PointsVariant variant = PointsVariant::Plain;
  // basis[n]: (n+1)-tuples of distinct points; sorted for the alternating
  // variant, where repeated entries are 2-torsion and dropped
  std::vector<std::vector<std::vector<int>>> basis;
  ChainComplex chains;
  std::vector<int> counts() const { return chains.dims; }
  int index(const std::vector<int>& tuple) const;  // -1 if absent
  std::string point_str(int x) const;

 private:
  friend PointsComplex build_points_complex(int, int, PointsVariant);
  std::vector<std::map<std::vector<int>, int>> lookup_;
};

constexpr long long kPointsGeneratorCap = 1000000;
PointsComplex build_points_complex(int q, int N, PointsVariant variant);

// plain -> alternating: distinct tuples go to their sorted form with the sign
// of the sorting permutation; one matrix per degree
std::vector<SparseMatrix> alternation_map(const PointsComplex& plain, const PointsComplex& alt);

struct AcyclicityReport {
  std::vector<int> degrees;           // checked degrees
  std::vector<FgAbGroup> reduced;     // augmented homology in those degrees
  std::vector<std::string> lines;
  bool acyclic = true;
};
// augmented homology in degrees 0..max_degree; degrees above q-2 (or needing
// cells beyond N) are reported as outside the contraction range
AcyclicityReport acyclicity_check(const PointsComplex& c, int max_degree, Coeff coeff = Coeff::integers());

// cells of support at most two points: everything in degrees <= 1
std::vector<std::vector<bool>> f0_mask(const PointsComplex& c);

struct DEResolution {
  int q = 0;
  ChainComplex F0, D, E;   // degrees 0 and 1
  SparseMatrix f0, f1;     // F0 -> D
  SparseMatrix g0, g1;     // D -> E
  std::vector<std::pair<int, int>> d1_basis;  // (x, y) standing for (y)_x
  std::vector<std::pair<int, int>> e1_basis;  // unordered pairs x < y
};
DEResolution de_resolution(int q);

struct DEReport {
  bool chain_maps = false;
  bool composite_zero = false;
  // exactness of 0 -> F0_n -> D_n -> E_n -> 0 for n = 0, 1
  std::vector<bool> exact_half, exact_mod3, exact_integral;
  std::vector<std::string> lines;
  bool exact() const;
};
DEReport de_exactness(int q);

// SL2(F_q) acting on the full simplex spanned by P^1(F_q)
GComplex sl2_points_simplex(int q);

struct RP1Report {
  int q = 0;
  bool points_transitive = false, pairs_transitive = false;
  long long pair_stabilizer = 0;       // setwise stabilizer of {0, inf}
  bool pair_stabilizer_monomial = false;
  std::vector<FgAbGroup> rp1;          // degrees 0..nmax
  std::vector<std::string> lines;
};
// nmax <= 1 is licensed by transitivity on pairs; nmax = 2 is exploratory
RP1Report rp1_low_degree(int q, int nmax, Coeff coeff = Coeff::integers());

}  // namespace btq
