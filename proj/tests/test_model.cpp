#include <doctest.h>

#include <functional>
#include <map>
#include <set>
#include <numeric>

#include "btq/model.h"

using namespace btq;

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

void check_betti(const std::vector<FgAbGroup>& H, int rank) {
  for (size_t k = 0; k < H.size(); ++k) {
    CHECK(H[k].free_rank == binom(rank, static_cast<int>(k)));
    CHECK(H[k].torsion.empty());
  }
}

// Oracle: cells of a box merged by union-find under the group generators
// (lattice basis, its negatives, the inversions). Counts orbits of cells based
// on the slice where the free coordinates vanish; for full-rank lattices that
// is every orbit.
std::vector<int> brute_orbit_counts(const CrystGroup& g, int box) {
  int s = g.s;
  auto gens = g.generators();
  std::vector<CrystGroup::Affine> all;
  for (auto& a : gens) {
    all.push_back(a);
    if (a.eps == 1) {
      CrystGroup::Affine b = a;
      for (auto& x : b.v) x = -x;
      all.push_back(b);
    }
  }
  // free coordinates: annihilator of the lattice
  std::vector<std::vector<long long>> P;
  if (g.lattice.rows) {
    IntMatrix N = integer_kernel(g.lattice);
    for (int c = 0; c < N.cols; ++c) {
      std::vector<long long> row;
      for (int i = 0; i < s; ++i) row.push_back(N(i, c).get_si());
      P.push_back(row);
    }
  } else {
    for (int i = 0; i < s; ++i) {
      std::vector<long long> row(s, 0);
      row[i] = 1;
      P.push_back(row);
    }
  }
  std::vector<int> counts(s + 1, 0);
  for (int mask = 0; mask < (1 << s); ++mask) {
    std::vector<int> dirs;
    for (int i = 0; i < s; ++i)
      if (mask >> i & 1) dirs.push_back(i);
    std::map<std::vector<long long>, int> id;
    std::vector<std::vector<long long>> pts;
    std::vector<long long> x(s, -box);
    while (true) {
      id[x] = static_cast<int>(pts.size());
      pts.push_back(x);
      int i = 0;
      while (i < s && x[i] == box) x[i++] = -box;
      if (i == s) break;
      ++x[i];
    }
    std::vector<int> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (size_t k = 0; k < pts.size(); ++k)
      for (auto& a : all) {
        auto y = a.apply(pts[k]);
        if (a.eps < 0)
          for (int j : dirs) y[j] -= 1;
        auto it = id.find(y);
        if (it != id.end()) parent[find(static_cast<int>(k))] = find(it->second);
      }
    // orbits of cells whose free coordinates vanish at the base
    std::set<int> roots;
    for (size_t k = 0; k < pts.size(); ++k) {
      bool zero = true;
      for (auto& row : P) {
        long long v = 0;
        for (int i = 0; i < s; ++i) v += row[i] * pts[k][i];
        if (v != 0) zero = false;
      }
      if (zero) roots.insert(find(static_cast<int>(k)));
    }
    counts[dirs.size()] += static_cast<int>(roots.size());
  }
  return counts;
}

}  // namespace

TEST_CASE("crystallographic groups from curves") {
  auto g = build_cryst(nagata(p1_config(3, {"t", "inf"})), CrystFlavor::T);
  CHECK(g.lattice == IntMatrix::from({{1, -1}}));
  auto st = build_cryst(nagata(p1_config(3, {"t", "inf"})), CrystFlavor::ST);
  CHECK(st.lattice == IntMatrix::from({{2, -2}}));
  CHECK(build_cryst(nagata(p1_config(3, {"inf"})), CrystFlavor::T).rank() == 0);
  for (auto& c : {p1_config(2, {"t", "t+1", "inf"}), p1_config(5, {"t", "t^2+2"}), p1_config(3, {"t^2+1"}),
                  elliptic_config(5, {0, 0, 0, -1, 0}, {"O", "0,0"})}) {
    auto pic = nagata(c);
    CHECK(build_cryst(pic, CrystFlavor::T).rank() == pic.unit_rank);
  }
}

TEST_CASE("torus quotients have binomial Betti numbers") {
  check_betti(quotient_homology(build_cryst(nagata(p1_config(3, {"t", "inf"})), CrystFlavor::T), 4), 1);
  check_betti(quotient_homology(build_cryst(nagata(p1_config(3, {"inf"})), CrystFlavor::T), 2), 0);
  for (auto f : {CrystFlavor::T, CrystFlavor::ST}) {
    auto g2 = synthetic_cryst(IntMatrix::from({{1, 1, 1}}), {0}, f);
    check_betti(quotient_homology(g2, min_window(g2)), 2);
    auto g3 = synthetic_cryst(IntMatrix::from({{1, 1, 1, 1}}), {0}, f);
    check_betti(quotient_homology(g3, min_window(g3)), 3);
    auto gt = synthetic_cryst(IntMatrix::from({{1, 2, 0}, {0, 1, 1}}), {0, 3}, f);
    check_betti(quotient_homology(gt, min_window(gt)), 2);
  }
  CHECK_THROWS(model_quotient(synthetic_cryst(IntMatrix::from({{1, 1}}), {0}, CrystFlavor::T), 1));
}

TEST_CASE("normalizer quotients") {
  auto g = synthetic_cryst(IntMatrix::from({{1, 1, 1}}), {0}, CrystFlavor::N);
  // the torus modulo -1 is a sphere
  CHECK(groups_str(quotient_homology(g, min_window(g))) == "(Z, 0, Z, 0)");
  auto sn = synthetic_cryst(IntMatrix::from({{1, 1, 1}}), {0}, CrystFlavor::SN);
  CHECK(special_vertices(sn).count == 4);
  auto Q = model_quotient(sn, min_window(sn));
  int fixed = 0;
  for (auto& v : Q.cells[0]) fixed += v.stabilizer == 2;
  CHECK(fixed == 4);
  for (size_t d = 1; d < Q.cells.size(); ++d)
    for (auto& c : Q.cells[d]) CHECK(c.stabilizer == 1);
  CHECK(special_vertices(build_cryst(nagata(p1_config(3, {"t", "inf"})), CrystFlavor::SN)).count == 2);
  CHECK(special_vertices(build_cryst(nagata(p1_config(3, {"inf"})), CrystFlavor::SN)).count == 1);
}

TEST_CASE("model orbits against a union-find oracle") {
  int compared = 0;
  for (auto f : {CrystFlavor::T, CrystFlavor::ST, CrystFlavor::N, CrystFlavor::SN})
    for (auto& [phi, mod] : {std::make_pair(IntMatrix::from({{1, 1}}), std::vector<long long>{3}),
                             std::make_pair(IntMatrix::from({{1, 0}, {0, 1}}), std::vector<long long>{2, 2})}) {
      // full-rank lattices: the quotient is compact and the window plays no role
      auto g = synthetic_cryst(phi, mod, f);
      CHECK(g.rank() == 2);
      auto Q = model_quotient(g, min_window(g));
      if (Q.scale != 1) continue;
      CHECK(Q.counts() == brute_orbit_counts(g, 9));
      ++compared;
    }
  CHECK(compared == 7);
}

TEST_CASE("abelianization of the monomial group") {
  FgAbGroup f2;
  f2.free_rank = 1;
  CHECK(sn_tilde_h1(f2, Coeff::half()).is_zero());
  CHECK(sn_tilde_h1(f2).str() == "Z/2 + Z/2");
  FgAbGroup f5;
  f5.free_rank = 2;
  f5.torsion = {4};
  CHECK(sn_tilde_h1(f5, Coeff::half()).is_zero());
  CHECK(sn_tilde_h1(f5).str() == "Z/2 + Z/2 + Z/2 + Z/2");
  CHECK(sn_tilde_h1(f5, Coeff::mod(3)).is_zero());
  for (auto& c : {p1_config(2, {"t", "inf"}), p1_config(3, {"t", "t+1", "inf"}), p1_config(5, {"t^2+2"})}) {
    auto u = units_presentation(c, nagata(c));
    CHECK(sn_tilde_h1(u, Coeff::half()).is_zero());
  }
}
