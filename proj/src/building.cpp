#include "btq/building.h"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace btq {

size_t BuildingVertexHash::operator()(const BuildingVertex& v) const {
  size_t h = 1469598103934665603ULL;
  for (auto& t : v.x) h = (h ^ TreeVertexHash()(t)) * 1099511628211ULL;
  return h;
}

size_t BuildingCubeHash::operator()(const BuildingCube& c) const {
  size_t h = BuildingVertexHash()(c.base);
  for (size_t k = 0; k < c.dirs.size(); ++k) h = (h ^ (c.dirs[k] * 31 + TreeVertexHash()(c.other[k]))) * 1099511628211ULL;
  return h;
}

bool BuildingCube::operator<(const BuildingCube& o) const {
  if (dirs.size() != o.dirs.size()) return dirs.size() < o.dirs.size();
  if (base != o.base) return base < o.base;
  if (dirs != o.dirs) return dirs < o.dirs;
  return other < o.other;
}

std::vector<BuildingVertex> BuildingCube::corners() const {
  std::vector<BuildingVertex> out;
  for (int mask = 0; mask < (1 << dim()); ++mask) {
    BuildingVertex v = base;
    for (int k = 0; k < dim(); ++k)
      if (mask >> k & 1) v.x[dirs[k]] = other[k];
    out.push_back(v);
  }
  return out;
}

BuildingCube BuildingCube::span(const BuildingVertex& v, const std::vector<int>& dirs, const std::vector<TreeVertex>& w) {
  BuildingCube c;
  c.base = v;
  c.dirs = dirs;
  c.other = w;
  for (size_t k = 0; k < dirs.size(); ++k)
    if (w[k] < v.x[dirs[k]]) {
      c.base.x[dirs[k]] = w[k];
      c.other[k] = v.x[dirs[k]];
    }
  return c;
}

std::vector<std::pair<BuildingCube, int>> cube_boundary(const BuildingCube& c) {
  std::vector<std::pair<BuildingCube, int>> out;
  for (int k = 0; k < c.dim(); ++k) {
    BuildingCube lo;
    lo.base = c.base;
    for (int j = 0; j < c.dim(); ++j)
      if (j != k) lo.dirs.push_back(c.dirs[j]), lo.other.push_back(c.other[j]);
    BuildingCube hi = lo;
    hi.base.x[c.dirs[k]] = c.other[k];
    int s = k % 2 ? -1 : 1;
    out.emplace_back(hi, s);
    out.emplace_back(lo, -s);
  }
  return out;
}

BuildingVertex Building::base() const {
  BuildingVertex v;
  v.x.assign(places.size(), TreeVertex{});
  return v;
}

int Building::distance(const BuildingVertex& a, const BuildingVertex& b) const {
  int d = 0;
  for (size_t i = 0; i < places.size(); ++i) d += btq::distance(a.x[i], b.x[i]);
  return d;
}

BuildingVertex Building::act(const Mat2& g, const BuildingVertex& v) const {
  BuildingVertex w;
  for (size_t i = 0; i < places.size(); ++i) w.x.push_back(btq::act(g, v.x[i], places[i]));
  return w;
}

std::string Building::str(const BuildingVertex& v) const {
  std::string s = "[";
  for (size_t i = 0; i < places.size(); ++i) s += (i ? "," : "") + v.x[i].str(places[i]);
  return s + "]";
}

std::vector<int> CubicalComplex::counts() const {
  std::vector<int> c;
  for (auto& l : cubes) c.push_back(static_cast<int>(l.size()));
  return c;
}

void CubicalComplex::add(const BuildingCube& c) {
  if (static_cast<int>(cubes.size()) <= c.dim()) cubes.resize(c.dim() + 1);
  cubes[c.dim()].push_back(c);
}

void CubicalComplex::finalize() {
  index.assign(cubes.size(), {});
  for (size_t d = 0; d < cubes.size(); ++d) {
    auto& l = cubes[d];
    std::sort(l.begin(), l.end());
    l.erase(std::unique(l.begin(), l.end()), l.end());
    for (size_t k = 0; k < l.size(); ++k) index[d][l[k]] = static_cast<int>(k);
  }
}

int CubicalComplex::find(const BuildingCube& c) const {
  if (c.dim() >= static_cast<int>(index.size())) return -1;
  auto it = index[c.dim()].find(c);
  return it == index[c.dim()].end() ? -1 : it->second;
}

ChainComplex CubicalComplex::chain_complex() const {
  ChainComplex C(counts());
  for (size_t d = 1; d < cubes.size(); ++d) {
    for (size_t k = 0; k < cubes[d].size(); ++k)
      for (auto& [f, s] : cube_boundary(cubes[d][k])) {
        int i = find(f);
        if (i < 0) throw std::logic_error("cubical complex not closed under faces");
        C.d[d].add(i, static_cast<int>(k), s);
      }
    C.d[d].finalize();
  }
  return C;
}

CubicalComplex building_ball(const Building& B, const BuildingVertex& center, int r) {
  if (r < 0) throw std::invalid_argument("radius must be non-negative");
  int s = B.rank();
  // per-coordinate tree balls with distances
  std::vector<std::vector<std::pair<TreeVertex, int>>> per(s);
  for (int i = 0; i < s; ++i)
    for (auto& v : tree_ball(center.x[i], B.places[i], r)) per[i].emplace_back(v, btq::distance(center.x[i], v));
  std::vector<BuildingVertex> verts;
  BuildingVertex cur = center;
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == s) {
      verts.push_back(cur);
      return;
    }
    for (auto& [v, d] : per[i])
      if (used + d <= r) {
        cur.x[i] = v;
        rec(i + 1, used + d);
      }
  };
  rec(0, 0);
  CubicalComplex K;
  for (auto& v : verts) {
    // cubes with base v: each direction contributes a neighbor above v
    std::vector<std::vector<TreeVertex>> up(s);
    std::vector<int> dist(s);
    for (int i = 0; i < s; ++i) {
      dist[i] = btq::distance(center.x[i], v.x[i]);
      for (auto& w : link(v.x[i], B.places[i]))
        if (v.x[i] < w) up[i].push_back(w);
    }
    int total = 0;
    for (int i = 0; i < s; ++i) total += dist[i];
    for (int mask = 0; mask < (1 << s); ++mask) {
      std::vector<int> dirs;
      for (int i = 0; i < s; ++i)
        if (mask >> i & 1) dirs.push_back(i);
      std::vector<TreeVertex> choice(dirs.size());
      std::function<void(size_t, int)> pick = [&](size_t k, int far) {
        if (k == dirs.size()) {
          if (far <= r) {
            BuildingCube c;
            c.base = v;
            c.dirs = dirs;
            c.other = choice;
            K.add(c);
          }
          return;
        }
        int i = dirs[k];
        for (auto& w : up[i]) {
          choice[k] = w;
          int dw = btq::distance(center.x[i], w);
          pick(k + 1, far - dist[i] + std::max(dist[i], dw));
        }
      };
      pick(0, total);
    }
  }
  K.finalize();
  return K;
}

long long LinkComplex::count(int k) const {
  // elementary symmetric polynomial of degree k+1 in the group sizes
  std::vector<long long> e(group_sizes.size() + 2, 0);
  e[0] = 1;
  for (auto g : group_sizes)
    for (size_t j = e.size() - 1; j >= 1; --j) e[j] += e[j - 1] * g;
  return k + 1 < static_cast<int>(e.size()) && k >= 0 ? e[k + 1] : 0;
}

SimplicialComplex LinkComplex::simplicial() const {
  std::vector<long long> offset;
  long long n = 0;
  for (auto g : group_sizes) offset.push_back(n), n += g;
  std::vector<std::vector<int>> facets;
  std::vector<int> cur;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == group_sizes.size()) {
      facets.push_back(cur);
      return;
    }
    for (long long x = 0; x < group_sizes[i]; ++x) {
      cur.push_back(static_cast<int>(offset[i] + x));
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(0);
  return SimplicialComplex::from_facets(static_cast<int>(n), facets);
}

LinkComplex vertex_link(const Building& B, const BuildingVertex& v) {
  (void)v;  // the link is homogeneous
  LinkComplex L;
  for (auto& P : B.places) L.group_sizes.push_back(P.residue_size() + 1);
  return L;
}

SimplicialComplex apartment_link(int s) {
  if (s < 1) throw std::invalid_argument("s must be at least 1");
  LinkComplex L;
  L.group_sizes.assign(s, 2);  // vertex 2i is 0_i, 2i+1 is inf_i
  return L.simplicial();
}

InvolutionQuotient antipodal_quotient(int s) {
  SimplicialComplex A = apartment_link(s);
  std::vector<int> perm(2 * s);
  for (int i = 0; i < 2 * s; ++i) perm[i] = i ^ 1;
  return quotient_by_involution(A, perm);
}

}  // namespace btq
