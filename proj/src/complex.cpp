#include "btq/complex.h"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

namespace btq {

void SimplicialComplex::rebuild_lookup() {
  lookup_.assign(simplices.size(), {});
  for (size_t d = 0; d < simplices.size(); ++d)
    for (size_t k = 0; k < simplices[d].size(); ++k) lookup_[d][simplices[d][k]] = static_cast<int>(k);
}

SimplicialComplex SimplicialComplex::from_facets(int n, const std::vector<std::vector<int>>& facets) {
  std::vector<std::set<std::vector<int>>> by_dim;
  for (auto f : facets) {
    std::sort(f.begin(), f.end());
    int k = static_cast<int>(f.size());
    if (k == 0) continue;
    if (static_cast<int>(by_dim.size()) < k) by_dim.resize(k);
    for (int mask = 1; mask < (1 << k); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < k; ++i)
        if (mask >> i & 1) s.push_back(f[i]);
      by_dim[s.size() - 1].insert(s);
    }
  }
  SimplicialComplex K;
  K.num_vertices = n;
  for (auto& st : by_dim) K.simplices.emplace_back(st.begin(), st.end());
  K.rebuild_lookup();
  return K;
}

std::vector<int> SimplicialComplex::counts() const {
  std::vector<int> c;
  for (auto& s : simplices) c.push_back(static_cast<int>(s.size()));
  return c;
}

int SimplicialComplex::index(const std::vector<int>& s) const {
  size_t d = s.size() - 1;
  if (s.empty() || d >= lookup_.size()) return -1;
  auto it = lookup_[d].find(s);
  return it == lookup_[d].end() ? -1 : it->second;
}

ChainComplex SimplicialComplex::chain_complex() const {
  ChainComplex C(counts());
  for (int d = 1; d <= dim(); ++d) {
    for (size_t k = 0; k < simplices[d].size(); ++k) {
      auto& s = simplices[d][k];
      for (int i = 0; i <= d; ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + i);
        C.d[d].add(index(f), static_cast<int>(k), i % 2 ? -1 : 1);
      }
    }
    C.d[d].finalize();
  }
  return C;
}

SimplicialComplex SimplicialComplex::barycentric(std::vector<std::vector<int>>* vertex_of) const {
  std::map<std::vector<int>, int> id;
  std::vector<std::vector<int>> verts;
  for (auto& layer : simplices)
    for (auto& s : layer) id[s] = static_cast<int>(verts.size()), verts.push_back(s);
  // facets of the subdivision: maximal chains of faces
  std::vector<std::vector<int>> facets;
  std::vector<int> chain;
  std::function<void(const std::vector<int>&)> descend = [&](const std::vector<int>& s) {
    chain.push_back(id[s]);
    if (s.size() == 1) {
      facets.push_back(chain);
    } else {
      for (size_t i = 0; i < s.size(); ++i) {
        std::vector<int> f = s;
        f.erase(f.begin() + i);
        descend(f);
      }
    }
    chain.pop_back();
  };
  for (auto& layer : simplices)
    for (auto& s : layer) descend(s);  // non-maximal starts give faces of chains, harmless
  if (vertex_of) *vertex_of = verts;
  return from_facets(static_cast<int>(verts.size()), facets);
}

static int perm_sign(std::vector<int> v) {
  int sign = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) sign = -sign;
  return sign;
}

InvolutionQuotient quotient_by_involution(const SimplicialComplex& K0, const std::vector<int>& perm0) {
  InvolutionQuotient out;
  SimplicialComplex K = K0;
  std::vector<int> perm = perm0;
  auto image = [&](const std::vector<int>& s) {
    std::vector<int> t;
    for (int v : s) t.push_back(perm[v]);
    return t;
  };
  bool fixed_cell = false;
  for (auto& layer : K.simplices)
    for (auto& s : layer) {
      auto t = image(s);
      std::sort(t.begin(), t.end());
      if (t == s && image(s) != s) fixed_cell = true;
    }
  if (fixed_cell) {
    std::vector<std::vector<int>> vof;
    SimplicialComplex S = K.barycentric(&vof);
    std::map<std::vector<int>, int> id;
    for (size_t i = 0; i < vof.size(); ++i) id[vof[i]] = static_cast<int>(i);
    std::vector<int> np(vof.size());
    for (size_t i = 0; i < vof.size(); ++i) {
      auto t = image(vof[i]);
      std::sort(t.begin(), t.end());
      np[i] = id.at(t);
    }
    K = S;
    perm = np;
    out.subdivided = true;
  }
  // orbit representatives: the smaller of s and its image
  std::vector<std::vector<int>> rep(K.simplices.size());      // [dim][k] -> orbit index
  std::vector<std::vector<int>> sgn(K.simplices.size());      // sign of k relative to its orbit rep
  std::vector<int> counts;
  for (size_t d = 0; d < K.simplices.size(); ++d) {
    auto& layer = K.simplices[d];
    rep[d].assign(layer.size(), -1);
    sgn[d].assign(layer.size(), 1);
    int n = 0;
    for (size_t k = 0; k < layer.size(); ++k) {
      if (rep[d][k] >= 0) continue;
      auto t = image(layer[k]);
      int s = perm_sign(t);
      std::sort(t.begin(), t.end());
      int j = K.index(t);
      rep[d][k] = n;
      if (j != static_cast<int>(k)) {
        rep[d][j] = n;
        sgn[d][j] = s;
      } else if (s != 1) {
        throw std::logic_error("involution reverses an invariant cell");
      }
      ++n;
    }
    counts.push_back(n);
  }
  ChainComplex C(counts);
  ChainComplex full = K.chain_complex();
  for (size_t d = 1; d < K.simplices.size(); ++d) {
    std::vector<bool> done(counts[d], false);
    for (size_t k = 0; k < K.simplices[d].size(); ++k) {
      int o = rep[d][k];
      if (done[o] || sgn[d][k] != 1) continue;
      done[o] = true;
      for (auto& [row, v] : full.d[d].col[k]) C.d[d].add(rep[d - 1][row], o, v * sgn[d - 1][row]);
    }
    C.d[d].finalize();
  }
  out.cells.counts = counts;
  out.cells.chains = C;
  return out;
}

}  // namespace btq
