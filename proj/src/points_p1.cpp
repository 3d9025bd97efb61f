#include "btq/points_p1.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include "btq/fq.h"

namespace btq {

std::string variant_str(PointsVariant v) { return v == PointsVariant::Plain ? "plain" : "alternating"; }

PointsVariant parse_variant(const std::string& s) {
  if (s == "plain") return PointsVariant::Plain;
  if (s == "alternating" || s == "alt") return PointsVariant::Alternating;
  throw std::invalid_argument("unknown variant: " + s);
}

int PointsComplex::index(const std::vector<int>& t) const {
  int n = static_cast<int>(t.size()) - 1;
  if (n < 0 || n >= static_cast<int>(lookup_.size())) return -1;
  auto it = lookup_[n].find(t);
  return it == lookup_[n].end() ? -1 : it->second;
}

std::string PointsComplex::point_str(int x) const { return x == q ? "inf" : Fq::get(q).str(x); }

namespace {

int sort_sign(std::vector<int>& v) {
  int s = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) s = -s;
  std::sort(v.begin(), v.end());
  return s;
}

void injective_words(int m, int len, std::vector<int>& cur, std::vector<bool>& used,
                     std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int x = 0; x < m; ++x) {
    if (used[x]) continue;
    used[x] = true;
    cur.push_back(x);
    injective_words(m, len, cur, used, out);
    cur.pop_back();
    used[x] = false;
  }
}

void subsets(int m, int len, int start, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int x = start; x < m; ++x) {
    cur.push_back(x);
    subsets(m, len, x + 1, cur, out);
    cur.pop_back();
  }
}

}  // namespace

PointsComplex build_points_complex(int q, int N, PointsVariant variant) {
  Fq::get(q);  // validates q
  if (N < 0 || N > q) throw std::invalid_argument("need 0 <= N <= q for distinct tuples");
  int m = q + 1;
  long long total = 0;
  for (int n = 0; n <= N; ++n) {
    long long c = 1;
    if (variant == PointsVariant::Plain)
      for (int i = 0; i <= n; ++i) c *= m - i;
    else
      for (int i = 0; i <= n; ++i) c = c * (m - i) / (i + 1);
    total += c;
  }
  if (total > kPointsGeneratorCap) throw std::length_error("points complex exceeds the generator cap");
  PointsComplex C;
  C.q = q;
  C.N = N;
  C.variant = variant;
  C.basis.resize(N + 1);
  C.lookup_.resize(N + 1);
  std::vector<int> dims;
  for (int n = 0; n <= N; ++n) {
    std::vector<int> cur;
    if (variant == PointsVariant::Plain) {
      std::vector<bool> used(m, false);
      injective_words(m, n + 1, cur, used, C.basis[n]);
    } else {
      subsets(m, n + 1, 0, cur, C.basis[n]);
    }
    for (size_t k = 0; k < C.basis[n].size(); ++k) C.lookup_[n][C.basis[n][k]] = static_cast<int>(k);
    dims.push_back(static_cast<int>(C.basis[n].size()));
  }
  C.chains = ChainComplex(dims);
  for (int n = 1; n <= N; ++n) {
    auto& D = C.chains.d[n];
    for (size_t k = 0; k < C.basis[n].size(); ++k) {
      auto& t = C.basis[n][k];
      for (int i = 0; i <= n; ++i) {
        std::vector<int> f;
        for (int j = 0; j <= n; ++j)
          if (j != i) f.push_back(t[j]);
        D.add(C.lookup_[n - 1].at(f), static_cast<int>(k), i % 2 ? -1 : 1);
      }
    }
    D.finalize();
  }
  return C;
}

std::vector<SparseMatrix> alternation_map(const PointsComplex& plain, const PointsComplex& alt) {
  if (plain.variant != PointsVariant::Plain || alt.variant != PointsVariant::Alternating || plain.q != alt.q)
    throw std::invalid_argument("need plain and alternating complexes over the same field");
  std::vector<SparseMatrix> out;
  int N = std::min(plain.N, alt.N);
  for (int n = 0; n <= N; ++n) {
    SparseMatrix M(static_cast<int>(alt.basis[n].size()), static_cast<int>(plain.basis[n].size()));
    for (size_t k = 0; k < plain.basis[n].size(); ++k) {
      auto t = plain.basis[n][k];
      int s = sort_sign(t);
      M.add(alt.index(t), static_cast<int>(k), s);
    }
    M.finalize();
    out.push_back(M);
  }
  return out;
}

AcyclicityReport acyclicity_check(const PointsComplex& c, int max_degree, Coeff coeff) {
  AcyclicityReport R;
  ChainComplex A = c.chains.augmented_reduced();  // degree n sits at index n + 1
  for (int n = 0; n <= max_degree; ++n) {
    if (n > c.q - 2) {
      R.lines.push_back("degree " + std::to_string(n) + ": outside contraction range (a cycle may use every point)");
      continue;
    }
    if (n + 1 > c.N) {
      R.lines.push_back("degree " + std::to_string(n) + ": not checked, needs cells of degree " + std::to_string(n + 1));
      continue;
    }
    auto H = homology_of_pair(A.d[n + 1], A.d[n + 2], coeff);
    R.degrees.push_back(n);
    R.reduced.push_back(H);
    R.acyclic = R.acyclic && H.is_zero();
    R.lines.push_back("degree " + std::to_string(n) + ": reduced homology " + H.str() +
                      " (a point outside the support gives the contraction)");
  }
  return R;
}

std::vector<std::vector<bool>> f0_mask(const PointsComplex& c) {
  std::vector<std::vector<bool>> m;
  for (int n = 0; n <= c.N; ++n) m.push_back(std::vector<bool>(c.basis[n].size(), n <= 1));
  return m;
}

DEResolution de_resolution(int q) {
  DEResolution R;
  R.q = q;
  int m = q + 1;
  auto alt = build_points_complex(q, 1, PointsVariant::Alternating);
  R.F0 = alt.chains;
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      if (x != y) R.d1_basis.emplace_back(x, y);
  for (int x = 0; x < m; ++x)
    for (int y = x + 1; y < m; ++y) R.e1_basis.emplace_back(x, y);
  int nd = static_cast<int>(R.d1_basis.size()), ne = static_cast<int>(R.e1_basis.size());
  R.D = ChainComplex({m, nd});
  for (int k = 0; k < nd; ++k) R.D.d[1].add(R.d1_basis[k].first, k, -1);  // (y)_x -> -1_x
  R.D.d[1].finalize();
  R.E = ChainComplex({0, ne});
  R.E.d[1].finalize();
  auto d_index = [&](int x, int y) {
    return static_cast<int>(std::find(R.d1_basis.begin(), R.d1_basis.end(), std::make_pair(x, y)) - R.d1_basis.begin());
  };
  auto e_index = [&](int x, int y) {
    if (x > y) std::swap(x, y);
    return static_cast<int>(std::find(R.e1_basis.begin(), R.e1_basis.end(), std::make_pair(x, y)) - R.e1_basis.begin());
  };
  R.f0 = SparseMatrix(m, m);
  for (int x = 0; x < m; ++x) R.f0.add(x, x, 1);
  R.f0.finalize();
  R.f1 = SparseMatrix(nd, static_cast<int>(alt.basis[1].size()));
  for (size_t k = 0; k < alt.basis[1].size(); ++k) {
    int x = alt.basis[1][k][0], y = alt.basis[1][k][1];
    R.f1.add(d_index(x, y), static_cast<int>(k), 1);   // (y)_x
    R.f1.add(d_index(y, x), static_cast<int>(k), -1);  // -(x)_y
  }
  R.f1.finalize();
  R.g0 = SparseMatrix(0, m);
  R.g0.finalize();
  R.g1 = SparseMatrix(ne, nd);
  for (int k = 0; k < nd; ++k) R.g1.add(e_index(R.d1_basis[k].first, R.d1_basis[k].second), k, 1);
  R.g1.finalize();
  return R;
}

bool DEReport::exact() const {
  auto all = [](const std::vector<bool>& v) { return std::all_of(v.begin(), v.end(), [](bool b) { return b; }); };
  return chain_maps && composite_zero && all(exact_half) && all(exact_mod3);
}

DEReport de_exactness(int q) {
  if (q > 7) throw std::invalid_argument("D/E exactness is checked for q <= 7");
  auto R = de_resolution(q);
  DEReport out;
  auto same = [](const SparseMatrix& a, const SparseMatrix& b) { return a.dense() == b.dense(); };
  // d_D f1 = f0 d_F and d_E g1 = g0 d_D
  out.chain_maps = same(R.D.d[1] * R.f1, R.f0 * R.F0.d[1]) && same(R.E.d[1] * R.g1, R.g0 * R.D.d[1]);
  out.composite_zero = (R.g1 * R.f1).is_zero() && (R.g0 * R.f0).is_zero();
  std::vector<std::pair<SparseMatrix, SparseMatrix>> maps{{R.f0, R.g0}, {R.f1, R.g1}};
  for (int n = 0; n <= 1; ++n) {
    auto& [f, g] = maps[n];
    auto exact_with = [&](Coeff c) {
      SparseMatrix into_a(f.cols, 0), out_c(0, g.rows);
      into_a.finalize();
      out_c.finalize();
      bool inj = homology_of_pair(f, into_a, c).is_zero();
      bool mid = homology_of_pair(g, f, c).is_zero();
      bool sur = homology_of_pair(out_c, g, c).is_zero();
      return inj && mid && sur;
    };
    out.exact_half.push_back(exact_with(Coeff::half()));
    out.exact_mod3.push_back(exact_with(Coeff::mod(3)));
    out.exact_integral.push_back(exact_with(Coeff::integers()));
    out.lines.push_back("degree " + std::to_string(n) + ": Z[1/2] " + (out.exact_half[n] ? "exact" : "NOT exact") +
                        ", Z/3 " + (out.exact_mod3[n] ? "exact" : "NOT exact") + ", Z " +
                        (out.exact_integral[n] ? "exact" : "not exact"));
  }
  return out;
}

GComplex sl2_points_simplex(int q) {
  FiniteGroup G = FiniteGroup::sl2(q);
  const Fq& F = Fq::get(q);
  int m = q + 1;
  std::vector<std::vector<int>> perm(G.n, std::vector<int>(m));
  for (int g = 0; g < G.n; ++g) {
    auto [a, b, c, d] = G.matrices[g];
    for (int z = 0; z < m; ++z) {
      int num, den;
      if (z == q) {
        num = a;
        den = c;
      } else {
        num = F.add(F.mul(a, z), b);
        den = F.add(F.mul(c, z), d);
      }
      perm[g][z] = den == 0 ? q : F.div(num, den);
    }
  }
  std::vector<int> all(m);
  std::iota(all.begin(), all.end(), 0);
  return GComplex::from_simplicial(G, SimplicialComplex::from_facets(m, {all}), perm);
}

RP1Report rp1_low_degree(int q, int nmax, Coeff coeff) {
  if (q < 2 || q > 5) throw std::invalid_argument("RP1 is computed for q in 2..5");
  if (nmax < 0 || nmax > 2) throw std::invalid_argument("RP1 degrees 0..2 only");
  RP1Report R;
  R.q = q;
  GComplex X = sl2_points_simplex(q);
  auto orbits = [&](int p) {
    std::set<int> seen;
    int k = 0;
    for (int c = 0; c < X.counts[p]; ++c) {
      if (seen.count(c)) continue;
      ++k;
      for (int g = 0; g < X.G.n; ++g) seen.insert(X.act[p][static_cast<size_t>(g) * X.counts[p] + c].first);
    }
    return k;
  };
  R.points_transitive = orbits(0) == 1;
  R.pairs_transitive = orbits(1) == 1;
  int e = X.simplicial->index({0, q});
  R.pair_stabilizer_monomial = true;
  for (int g = 0; g < X.G.n; ++g)
    if (X.act[1][static_cast<size_t>(g) * X.counts[1] + e].first == e) {
      ++R.pair_stabilizer;
      auto& M = X.G.matrices[g];
      bool diag = M[1] == 0 && M[2] == 0, anti = M[0] == 0 && M[3] == 0;
      R.pair_stabilizer_monomial = R.pair_stabilizer_monomial && (diag || anti);
    }
  std::vector<std::vector<bool>> mask;
  for (int p = 0; p < static_cast<int>(X.counts.size()); ++p) mask.push_back(std::vector<bool>(X.counts[p], p <= 1));
  GComplex Q = X.quotient(mask);
  R.rp1 = equivariant_homology(Q, nmax, coeff);
  R.lines.push_back(std::string("SL2 transitive on points: ") + (R.points_transitive ? "yes" : "no") +
                    ", on pairs: " + (R.pairs_transitive ? "yes" : "no"));
  R.lines.push_back("stabilizer of {0, inf}: order " + std::to_string(R.pair_stabilizer) +
                    (R.pair_stabilizer_monomial ? ", monomial (torus normalizer)" : ", not monomial"));
  for (int n = 0; n <= nmax; ++n)
    R.lines.push_back("RP1_" + std::to_string(n) + " = " + R.rp1[n].str() +
                      (n <= 1 ? (R.pairs_transitive ? " (licensed by transitivity on pairs)" : " (transitivity fails)")
                              : " (exploratory)"));
  return R;
}

}  // namespace btq
