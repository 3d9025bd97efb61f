#pragma once
#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "btq/ratfunc.h"

namespace btq {

// 2x2 matrix over F_q(t), row major.
struct Mat2 {
  std::array<RatFunc, 4> e;  // a b / c d
  Mat2() = default;
  Mat2(RatFunc a, RatFunc b, RatFunc c, RatFunc d) : e{std::move(a), std::move(b), std::move(c), std::move(d)} {}
  static Mat2 identity(const Fq& F);
  static Mat2 diag(const RatFunc& a, const RatFunc& d);
  const RatFunc& a() const { return e[0]; }
  const RatFunc& b() const { return e[1]; }
  const RatFunc& c() const { return e[2]; }
  const RatFunc& d() const { return e[3]; }
  RatFunc det() const { return e[0] * e[3] - e[1] * e[2]; }
  Mat2 inverse() const;
  std::string str() const;
};
Mat2 operator*(const Mat2& x, const Mat2& y);
Mat2 operator*(const RatFunc& s, const Mat2& x);
bool operator==(const Mat2& x, const Mat2& y);

// Lattice class with basis columns [[pi^m, u], [0, 1]], all coordinates
// relative to the standard basis of K^2. u maps exponents i < m to residue
// codes (polynomials of degree < deg P packed base q); zero digits absent.
struct TreeVertex {
  int m = 0;
  std::map<int, uint32_t> u;

  int type() const { return ((m % 2) + 2) % 2; }
  Mat2 matrix(const Place& P) const;
  std::string str(const Place& P) const;  // "(m,u)"
  bool operator==(const TreeVertex& o) const { return m == o.m && u == o.u; }
  bool operator!=(const TreeVertex& o) const { return !(*this == o); }
  // lexicographic: level first, then the digit map
  bool operator<(const TreeVertex& o) const { return m != o.m ? m < o.m : u < o.u; }
};

struct TreeVertexHash {
  size_t operator()(const TreeVertex& v) const;
};

RatFunc pi_power(const Place& P, int i);
// lift of residue code x times pi^i
RatFunc digit_term(const Place& P, uint32_t x, int i);

TreeVertex canonicalize(const Mat2& M, const Place& P);
bool matrix_equivalent(const Mat2& M1, const Mat2& M2, const Place& P);
// q_P + 1 neighbors: children by residue code, then the parent
std::vector<TreeVertex> link(const TreeVertex& v, const Place& P);
// the neighbor in link direction x in P^1(k_P): residue code, or -1 for infinity.
// Relative to the basis [[pi^m, u], [0, 1]]: x <-> [x:1] and infinity <-> [1:0].
TreeVertex neighbor(const TreeVertex& v, const Place& P, long long x);
// inverse of neighbor(): the link coordinate of an adjacent vertex w
long long link_coordinate(const TreeVertex& v, const TreeVertex& w, const Place& P);
int distance(const TreeVertex& v1, const TreeVertex& v2);
int distance_bfs(const TreeVertex& v1, const TreeVertex& v2, const Place& P, int cap);
// breadth-first ordered ball around a center
std::vector<TreeVertex> tree_ball(const TreeVertex& center, const Place& P, int r);
// g acting on the left of the lattice class
TreeVertex act(const Mat2& g, const TreeVertex& v, const Place& P);

}  // namespace btq
