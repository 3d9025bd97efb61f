#pragma once
#include <map>
#include <string>
#include <vector>

#include "btq/homology.h"

namespace btq {

// Abstract simplicial complex on vertices 0..n-1; simplices stored as
// sorted vertex lists, grouped by dimension, closed under faces.
struct SimplicialComplex {
  int num_vertices = 0;
  std::vector<std::vector<std::vector<int>>> simplices;  // [dim][k]

  static SimplicialComplex from_facets(int n, const std::vector<std::vector<int>>& facets);
  int dim() const { return static_cast<int>(simplices.size()) - 1; }
  std::vector<int> counts() const;
  int index(const std::vector<int>& s) const;  // -1 if absent
  ChainComplex chain_complex() const;
  // vertices of the subdivision are simplices of this complex, numbered
  // in (dim, index) order; out_map gives that numbering
  SimplicialComplex barycentric(std::vector<std::vector<int>>* vertex_of = nullptr) const;

 private:
  std::vector<std::map<std::vector<int>, int>> lookup_;
  void rebuild_lookup();
};

// Finite regular cell complex given directly by boundary matrices.
struct CellComplex {
  std::vector<int> counts;
  ChainComplex chains;
  std::vector<FgAbGroup> homology(Coeff c = Coeff::integers()) const { return chains.homology_all(c); }
};

// Quotient by a simplicial involution given on vertices. A cell mapped to
// itself forces a barycentric subdivision first, after which every
// invariant simplex is fixed pointwise.
struct InvolutionQuotient {
  CellComplex cells;
  bool subdivided = false;
};
InvolutionQuotient quotient_by_involution(const SimplicialComplex& K, const std::vector<int>& vertex_perm);

}  // namespace btq
