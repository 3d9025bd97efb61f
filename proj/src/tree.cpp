#include "btq/tree.h"

#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace btq {

Mat2 Mat2::identity(const Fq& F) {
  return {RatFunc::constant(F, 1), RatFunc(F) - RatFunc(F), RatFunc(F) - RatFunc(F), RatFunc::constant(F, 1)};
}

Mat2 Mat2::diag(const RatFunc& a, const RatFunc& d) {
  RatFunc z = a - a;
  return {a, z, z, d};
}

Mat2 Mat2::inverse() const {
  RatFunc D = det();
  if (D.is_zero()) throw std::domain_error("singular matrix");
  RatFunc s = D.inverse();
  return {s * e[3], -(s * e[1]), -(s * e[2]), s * e[0]};
}

std::string Mat2::str() const {
  return "[[" + e[0].str() + ", " + e[1].str() + "], [" + e[2].str() + ", " + e[3].str() + "]]";
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  return {x.e[0] * y.e[0] + x.e[1] * y.e[2], x.e[0] * y.e[1] + x.e[1] * y.e[3],
          x.e[2] * y.e[0] + x.e[3] * y.e[2], x.e[2] * y.e[1] + x.e[3] * y.e[3]};
}

Mat2 operator*(const RatFunc& s, const Mat2& x) { return {s * x.e[0], s * x.e[1], s * x.e[2], s * x.e[3]}; }

bool operator==(const Mat2& x, const Mat2& y) { return x.e == y.e; }

RatFunc pi_power(const Place& P, int i) {
  const Fq& F = P.field();
  if (P.is_infinity()) {
    Poly tt = pow(Poly::t(F), std::abs(i));
    return i >= 0 ? RatFunc(Poly::constant(F, 1), tt) : RatFunc(tt);
  }
  Poly p = pow(P.pi(), std::abs(i));
  return i >= 0 ? RatFunc(p) : RatFunc(Poly::constant(F, 1), p);
}

RatFunc digit_term(const Place& P, uint32_t x, int i) {
  return RatFunc(Poly::from_code(P.field(), x)) * pi_power(P, i);
}

Mat2 TreeVertex::matrix(const Place& P) const {
  const Fq& F = P.field();
  RatFunc ut(F);
  ut = ut - ut;
  for (auto& [i, x] : u) ut = ut + digit_term(P, x, i);
  RatFunc zero = ut - ut;
  return {pi_power(P, m), ut, zero, RatFunc::constant(F, 1)};
}

std::string TreeVertex::str(const Place& P) const {
  const Fq& F = P.field();
  std::string s;
  for (auto it = u.rbegin(); it != u.rend(); ++it) {
    std::string d = Poly::from_code(F, it->second).str();
    std::string term = it->first == 0 ? d : "(" + d + ")*pi^" + std::to_string(it->first);
    s += (s.empty() ? "" : "+") + term;
  }
  return "(" + std::to_string(m) + "," + (s.empty() ? "0" : s) + ")";
}

size_t TreeVertexHash::operator()(const TreeVertex& v) const {
  size_t h = std::hash<int>()(v.m) * 0x9e3779b97f4a7c15ULL;
  for (auto& [i, x] : v.u) h = (h ^ (static_cast<size_t>(i) * 1000003u + x)) * 0x100000001b3ULL;
  return h;
}

TreeVertex canonicalize(const Mat2& M, const Place& P) {
  RatFunc D = M.det();
  if (D.is_zero()) throw std::domain_error("singular lattice matrix");
  RatFunc b = M.b(), d = M.d();
  const RatFunc& c = M.c();
  // the column whose bottom entry has least valuation goes second
  if (d.is_zero() || (!c.is_zero() && valuation(c, P) < valuation(d, P))) {
    b = M.a();
    d = c;
  }
  TreeVertex v;
  v.m = valuation(D, P) - 2 * valuation(d, P);
  RatFunc bd = b / d;
  if (!bd.is_zero()) {
    auto e = padic_expand(bd, P, v.m);
    for (int i = e.start; i < v.m; ++i) {
      uint32_t x = e.at(i).code();
      if (x) v.u[i] = x;
    }
  }
  return v;
}

bool matrix_equivalent(const Mat2& M1, const Mat2& M2, const Place& P) {
  Mat2 N = M1.inverse() * M2;
  int k = std::numeric_limits<int>::max();
  for (auto& x : N.e)
    if (!x.is_zero()) k = std::min(k, valuation(x, P));
  return valuation(N.det(), P) - 2 * k == 0;
}

TreeVertex neighbor(const TreeVertex& v, const Place& P, long long x) {
  TreeVertex w = v;
  if (x < 0) {
    w.m = v.m - 1;
    w.u.erase(v.m - 1);
    return w;
  }
  if (x >= P.residue_size()) throw std::out_of_range("link coordinate out of range");
  w.m = v.m + 1;
  if (x) w.u[v.m] = static_cast<uint32_t>(x);
  return w;
}

long long link_coordinate(const TreeVertex& v, const TreeVertex& w, const Place& P) {
  (void)P;
  if (w.m == v.m - 1) return -1;
  if (w.m != v.m + 1) throw std::invalid_argument("vertices are not adjacent");
  auto it = w.u.find(v.m);
  return it == w.u.end() ? 0 : it->second;
}

std::vector<TreeVertex> link(const TreeVertex& v, const Place& P) {
  std::vector<TreeVertex> out;
  long long qv = P.residue_size();
  out.reserve(qv + 1);
  for (long long x = 0; x < qv; ++x) out.push_back(neighbor(v, P, x));
  out.push_back(neighbor(v, P, -1));
  return out;
}

int distance(const TreeVertex& v1, const TreeVertex& v2) {
  // vertices are disks; the closed form measures the path through their join
  int m0 = std::min(v1.m, v2.m);
  auto a = v1.u.begin(), b = v2.u.begin();
  while (a != v1.u.end() || b != v2.u.end()) {
    int ia = a == v1.u.end() ? std::numeric_limits<int>::max() : a->first;
    int ib = b == v2.u.end() ? std::numeric_limits<int>::max() : b->first;
    int i = std::min(ia, ib);
    if (i >= m0) break;
    uint32_t xa = ia == i ? a->second : 0, xb = ib == i ? b->second : 0;
    if (xa != xb) {
      m0 = i;
      break;
    }
    if (ia == i) ++a;
    if (ib == i) ++b;
  }
  return (v1.m - m0) + (v2.m - m0);
}

int distance_bfs(const TreeVertex& v1, const TreeVertex& v2, const Place& P, int cap) {
  std::unordered_map<TreeVertex, int, TreeVertexHash> seen{{v1, 0}};
  std::deque<TreeVertex> q{v1};
  while (!q.empty()) {
    TreeVertex x = q.front();
    q.pop_front();
    int dx = seen[x];
    if (x == v2) return dx;
    if (dx == cap) continue;
    for (auto& y : link(x, P))
      if (seen.emplace(y, dx + 1).second) q.push_back(y);
  }
  throw std::runtime_error("vertex beyond BFS cap");
}

std::vector<TreeVertex> tree_ball(const TreeVertex& center, const Place& P, int r) {
  std::vector<TreeVertex> out{center};
  std::unordered_set<TreeVertex, TreeVertexHash> seen{center};
  size_t lo = 0;
  for (int k = 0; k < r; ++k) {
    size_t hi = out.size();
    for (size_t i = lo; i < hi; ++i)
      for (auto& y : link(out[i], P))
        if (seen.insert(y).second) out.push_back(y);
    lo = hi;
  }
  return out;
}

TreeVertex act(const Mat2& g, const TreeVertex& v, const Place& P) { return canonicalize(g * v.matrix(P), P); }

}  // namespace btq
