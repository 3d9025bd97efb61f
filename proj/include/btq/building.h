#pragma once
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "btq/complex.h"
#include "btq/tree.h"

namespace btq {

struct BuildingVertex {
  std::vector<TreeVertex> x;
  bool operator==(const BuildingVertex& o) const { return x == o.x; }
  bool operator!=(const BuildingVertex& o) const { return x != o.x; }
  bool operator<(const BuildingVertex& o) const { return x < o.x; }
};
struct BuildingVertexHash {
  size_t operator()(const BuildingVertex& v) const;
};

// A cube: base corner is the coordinatewise minimum (TreeVertex order);
// other[k] is the second endpoint in direction dirs[k].
struct BuildingCube {
  BuildingVertex base;
  std::vector<int> dirs;  // increasing
  std::vector<TreeVertex> other;

  int dim() const { return static_cast<int>(dirs.size()); }
  std::vector<BuildingVertex> corners() const;  // bit k of the index selects other[k]
  bool operator==(const BuildingCube& o) const { return base == o.base && dirs == o.dirs && other == o.other; }
  bool operator<(const BuildingCube& o) const;
  // builds the canonical cube spanned by v and a neighbor w_k in each direction
  static BuildingCube span(const BuildingVertex& v, const std::vector<int>& dirs, const std::vector<TreeVertex>& w);
};
struct BuildingCubeHash {
  size_t operator()(const BuildingCube& c) const;
};

// Oriented faces: sum_k (-1)^k (face at other_k - face at base_k).
std::vector<std::pair<BuildingCube, int>> cube_boundary(const BuildingCube& c);

// Product of trees at the given places.
struct Building {
  std::vector<Place> places;
  explicit Building(std::vector<Place> ps) : places(std::move(ps)) {}
  int rank() const { return static_cast<int>(places.size()); }
  BuildingVertex base() const;
  int distance(const BuildingVertex& a, const BuildingVertex& b) const;  // L1
  BuildingVertex act(const Mat2& g, const BuildingVertex& v) const;
  std::string str(const BuildingVertex& v) const;
};

// Finite cubical complex; cubes[d] sorted, with index lookup.
struct CubicalComplex {
  std::vector<std::vector<BuildingCube>> cubes;
  std::vector<std::unordered_map<BuildingCube, int, BuildingCubeHash>> index;
  std::vector<int> counts() const;
  int find(const BuildingCube& c) const;
  ChainComplex chain_complex() const;
  void add(const BuildingCube& c);
  void finalize();  // sort and index
};

CubicalComplex building_ball(const Building& B, const BuildingVertex& center, int r);

// Link of a vertex: s groups of sizes q_i + 1, simplices pick one element
// from each of a set of distinct groups.
struct LinkComplex {
  std::vector<long long> group_sizes;
  long long count(int k) const;  // number of k-simplices
  SimplicialComplex simplicial() const;
};
LinkComplex vertex_link(const Building& B, const BuildingVertex& v);

// Boundary of the s-dimensional cross-polytope on {0_i, inf_i}.
SimplicialComplex apartment_link(int s);
InvolutionQuotient antipodal_quotient(int s);

}  // namespace btq
