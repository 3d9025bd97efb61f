#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "btq/bundles.h"
#include "btq/fqlinalg.h"

namespace btq {

std::vector<Mat2> group_generators(const CurveConfig& c, GroupFlavor group, int D) {
  const Fq& F = c.field();
  RatFunc one = RatFunc::constant(F, 1), zero = RatFunc(Poly(F), Poly::constant(F, 1));
  RatFunc al = RatFunc::constant(F, F.generator());
  std::vector<Mat2> gens;
  bool sl = group == GroupFlavor::SL2 || group == GroupFlavor::PSL2;
  auto units = units_group(c);
  if (sl && !units.empty()) throw std::domain_error("unsupported: SL2 quotients need unit rank 0");
  if (sl) {
    gens.push_back(Mat2::diag(al, al.inverse()));
    gens.push_back(Mat2(zero, one, -one, zero));
  } else {
    gens.push_back(Mat2::diag(al, one));
    gens.push_back(Mat2::diag(one, al));
    gens.push_back(Mat2(zero, one, one, zero));
    for (auto& u : units) {
      gens.push_back(Mat2::diag(u.p1, one));
      gens.push_back(Mat2::diag(u.p1.inverse(), one));
    }
  }
  // f in H^0(O(D * sum P_i)), all nonzero multiples of a monomial basis
  Poly den = Poly::constant(F, 1);
  int bound = 0;
  for (auto& p : c.punctures) {
    if (p.place.is_infinity()) {
      bound += D;
    } else {
      den = den * pow(p.place.pi(), D);
      bound += D * p.degree;
    }
  }
  for (int k = 0; k <= bound; ++k)
    for (int x = 1; x < F.q; ++x) {
      RatFunc f(Poly::monomial(F, x, k), den);
      gens.push_back(Mat2(one, f, zero, one));
      gens.push_back(Mat2(one, zero, f, one));
    }
  return gens;
}

namespace {

struct SignedUF {
  std::vector<int> parent, sign;  // sign of the element relative to its parent
  std::vector<bool> reversed;     // root flag: orbit contains an orientation-reversing loop
  explicit SignedUF(int n) : parent(n), sign(n, 1), reversed(n, false) { std::iota(parent.begin(), parent.end(), 0); }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 1};
    auto [r, s] = find(parent[x]);
    sign[x] *= s;
    parent[x] = r;
    return {r, sign[x]};
  }
  // record x = s * y
  void unite(int x, int y, int s) {
    auto [rx, sx] = find(x);
    auto [ry, sy] = find(y);
    if (rx == ry) {
      if (sx != s * sy) reversed[rx] = true;
      return;
    }
    parent[rx] = ry;
    sign[rx] = sx * s * sy;
    reversed[ry] = reversed[ry] || reversed[rx];
  }
};

}  // namespace

std::vector<std::vector<BuildingVertex>> vertex_orbits_bfs(const CurveConfig& c, int r, GroupFlavor group, int D) {
  Building B = building_of(c);
  if (D < 0) D = r + 1;
  auto ball = building_ball(B, B.base(), r);
  auto& verts = ball.cubes[0];
  std::map<BuildingVertex, int> id;
  for (size_t k = 0; k < verts.size(); ++k) id[verts[k].base] = static_cast<int>(k);
  SignedUF uf(static_cast<int>(verts.size()));
  for (auto& g : group_generators(c, group, D))
    for (size_t k = 0; k < verts.size(); ++k) {
      auto it = id.find(B.act(g, verts[k].base));
      if (it != id.end()) uf.unite(static_cast<int>(k), it->second, 1);
    }
  std::map<int, std::vector<BuildingVertex>> orb;
  for (size_t k = 0; k < verts.size(); ++k) orb[uf.find(static_cast<int>(k)).first].push_back(verts[k].base);
  std::vector<std::vector<BuildingVertex>> out;
  for (auto& [root, o] : orb) out.push_back(o);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> QuotientComplex::counts() const {
  std::vector<int> out;
  for (auto& l : cells) out.push_back(static_cast<int>(l.size()));
  return out;
}

ChainComplex QuotientComplex::chain_complex(bool parabolic_only) const {
  // cells kept: all, or the parabolic ones; numbering within each dimension
  std::vector<std::vector<int>> idx(cells.size());
  std::vector<int> dims;
  for (size_t d = 0; d < cells.size(); ++d) {
    int n = 0;
    for (auto& cell : cells[d]) idx[d].push_back((!parabolic_only || cell.parabolic) && !cell.reversed ? n++ : -1);
    dims.push_back(n);
  }
  ChainComplex C(dims);
  for (size_t d = 1; d < cells.size(); ++d) {
    for (size_t k = 0; k < cells[d].size(); ++k) {
      if (idx[d][k] < 0) continue;
      for (auto& [f, s] : cells[d][k].faces)
        if (idx[d - 1][f] >= 0) C.d[d].add(idx[d - 1][f], idx[d][k], s);
    }
    C.d[d].finalize();
  }
  return C;
}

bool QuotientComplex::faces_parabolic_closed() const {
  for (size_t d = 1; d < cells.size(); ++d)
    for (auto& cell : cells[d])
      if (cell.parabolic)
        for (auto& [f, s] : cell.faces)
          if (!cells[d - 1][f].parabolic) return false;
  return true;
}

int QuotientComplex::parabolic_components() const {
  if (cells.empty()) return 0;
  int n = static_cast<int>(cells[0].size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  if (cells.size() > 1)
    for (auto& e : cells[1]) {
      if (!e.parabolic || e.faces.empty()) continue;
      int a = e.faces.front().first, b = e.faces.back().first;
      parent[find(a)] = find(b);
    }
  std::set<int> roots;
  for (int i = 0; i < n; ++i)
    if (cells[0][i].parabolic) roots.insert(find(i));
  return static_cast<int>(roots.size());
}

namespace {

// Residue field k(P) with elements coded as in the tree (base q digits).
struct ResField {
  int Q = 0, deg = 0;
  std::vector<int> add, mul, inv;
  ResField(const Fq& F, const Place& P) : deg(P.degree()) {
    Q = static_cast<int>(P.residue_size());
    add.resize(Q * Q);
    mul.resize(Q * Q);
    inv.assign(Q, 0);
    for (int a = 0; a < Q; ++a)
      for (int b = 0; b < Q; ++b) {
        Poly pa = Poly::from_code(F, a), pb = Poly::from_code(F, b);
        Poly m = pa * pb;
        if (!P.is_infinity()) m = m % P.pi();
        add[a * Q + b] = static_cast<int>((pa + pb).code());
        mul[a * Q + b] = static_cast<int>(m.code());
        if (mul[a * Q + b] == 1) inv[a] = b;
      }
  }
  int sub(int a, int b) const {
    for (int x = 0; x < Q; ++x)
      if (add[b * Q + x] == a) return x;
    return 0;
  }
};

using ResMat = std::array<int, 4>;

// apply [[a,b],[c,d]] to the line with link coordinate x
long long act_line(const ResField& R, const ResMat& k, long long x) {
  int u, w;
  if (x < 0) {
    u = k[0], w = k[2];
  } else {
    int xi = static_cast<int>(x);
    u = R.add[R.mul[k[0] * R.Q + xi] * R.Q + k[1]];
    w = R.add[R.mul[k[2] * R.Q + xi] * R.Q + k[3]];
  }
  if (w == 0) return -1;
  return R.mul[u * R.Q + R.inv[w]];
}

int res_det(const ResField& R, const ResMat& k) { return R.sub(R.mul[k[0] * R.Q + k[3]], R.mul[k[1] * R.Q + k[2]]); }

int min_val(const Mat2& M, const Place& P) {
  int v = 1 << 20;
  for (auto& x : M.e)
    if (!x.is_zero()) v = std::min(v, valuation(x, P));
  return v;
}

// Image in prod_i M_2(k(P_i)) of the maps h with M_v^{-1} h M_w pi_i^{-e_i}
// integral everywhere, h over the ring of functions regular off the punctures.
// Elements are flattened to F_q digit vectors.
struct HomImage {
  std::vector<FqRow> basis;
  std::vector<int> offset;  // digit offset of place i
  int width = 0;
  int rho0 = 1;             // det h = c u with c = det(k_0) / rho0
};

HomImage hom_image(const CurveConfig& c, const std::vector<ResField>& RF, const BuildingVertex& v,
                   const BuildingVertex& w, const std::vector<int>& e, const RatFunc& u) {
  const Fq& F = c.field();
  int s = c.s();
  HomImage H;
  for (int i = 0; i < s; ++i) H.offset.push_back(H.width), H.width += 4 * RF[i].deg;
  std::vector<Mat2> Mvi(s), Mw(s);
  std::vector<RatFunc> sc(s);
  Poly Den = Poly::constant(F, 1);
  int cinf = 0;
  bool inf_punct = false;
  for (int i = 0; i < s; ++i) {
    const Place& P = c.punctures[i].place;
    Mvi[i] = v.x[i].matrix(P).inverse();
    Mw[i] = w.x[i].matrix(P);
    sc[i] = pi_power(P, -e[i]);
    // entries of h lie in M_v M_2(O) M_w^{-1} pi^e
    int lo = min_val(v.x[i].matrix(P), P) + min_val(Mw[i].inverse(), P) + e[i];
    int ci = std::max(0, -lo);
    if (P.is_infinity()) {
      cinf = ci;
      inf_punct = true;
    } else {
      Den = Den * pow(P.pi(), ci);
    }
  }
  (void)inf_punct;
  int N = Den.deg() + cinf;
  int n = 4 * (N + 1);
  std::vector<std::array<RatFunc, 4>> kterm(n);  // contribution of each unknown to k at place i
  std::map<std::tuple<int, int, int, int>, FqRow> rows;
  std::vector<std::vector<std::array<RatFunc, 4>>> contrib(s, std::vector<std::array<RatFunc, 4>>(n));
  for (int kl = 0; kl < 4; ++kl)
    for (int d = 0; d <= N; ++d) {
      int col = kl * (N + 1) + d;
      RatFunc f(Poly::monomial(F, 1, d), Den);
      int kk = kl / 2, ll = kl % 2;
      for (int i = 0; i < s; ++i) {
        const Place& P = c.punctures[i].place;
        for (int r = 0; r < 2; ++r)
          for (int j = 0; j < 2; ++j) {
            RatFunc y = Mvi[i].e[2 * r + kk] * f * Mw[i].e[2 * ll + j] * sc[i];
            contrib[i][col][2 * r + j] = y;
            if (y.is_zero()) continue;
            auto ex = padic_expand(y, P, 0);
            for (int x = ex.start; x < 0; ++x) {
              Poly co = ex.at(x);
              for (int g = 0; g < P.degree(); ++g) {
                int val = co[g];
                if (!val) continue;
                auto& row = rows[{i, 2 * r + j, x, g}];
                if (row.empty()) row.assign(n, 0);
                row[col] = F.add(row[col], val);
              }
            }
          }
      }
    }
  std::vector<FqRow> R;
  for (auto& [key, row] : rows) R.push_back(row);
  auto ker = fq_nullspace(F, R, n);
  std::vector<FqRow> img;
  for (auto& z : ker) {
    FqRow out(H.width, 0);
    for (int i = 0; i < s; ++i) {
      const Place& P = c.punctures[i].place;
      for (int ent = 0; ent < 4; ++ent) {
        RatFunc y(Poly(F), Poly::constant(F, 1));
        for (int col = 0; col < n; ++col)
          if (z[col] && !contrib[i][col][ent].is_zero()) y = y + RatFunc::constant(F, z[col]) * contrib[i][col][ent];
        Poly r = residue(y, P);
        for (int g = 0; g < RF[i].deg; ++g) out[H.offset[i] + ent * RF[i].deg + g] = r[g];
      }
    }
    img.push_back(out);
  }
  fq_rref(F, img, H.width);
  H.basis = img;
  // det k_0 = c * residue(u det M_w / (det M_v pi^{2e}))
  const Place& P0 = c.punctures[0].place;
  RatFunc ratio = u * Mw[0].det() * Mvi[0].det() * sc[0] * sc[0];
  H.rho0 = static_cast<int>(residue(ratio, P0).code());
  return H;
}

std::vector<ResMat> unpack(const FqRow& x, const HomImage& H, const std::vector<ResField>& RF, int q) {
  std::vector<ResMat> out(RF.size());
  for (size_t i = 0; i < RF.size(); ++i)
    for (int ent = 0; ent < 4; ++ent) {
      int code = 0;
      for (int g = RF[i].deg - 1; g >= 0; --g) code = code * q + x[H.offset[i] + ent * RF[i].deg + g];
      out[i][ent] = code;
    }
  return out;
}

constexpr long long kEnumCap = 1 << 20;

struct Enumerated {
  std::vector<std::vector<ResMat>> elems;
  bool complete = true;
};

// elements of the image space meeting the determinant condition; stops at
// the first hit when only one is wanted
Enumerated enumerate_image(const CurveConfig& c, const HomImage& H, const std::vector<ResField>& RF, bool sl,
                           bool first_only, std::mt19937_64& rng) {
  const Fq& F = c.field();
  Enumerated out;
  int dim = static_cast<int>(H.basis.size());
  long long total = 1;
  bool big = false;
  for (int k = 0; k < dim; ++k) {
    total *= F.q;
    if (total > kEnumCap) {
      big = true;
      break;
    }
  }
  auto test = [&](const FqRow& x) {
    auto m = unpack(x, H, RF, F.q);
    int dk = res_det(RF[0], m[0]);
    if (dk == 0) return false;
    if (sl && dk != H.rho0) return false;
    out.elems.push_back(std::move(m));
    return true;
  };
  auto combo = [&](const std::vector<int>& co) {
    FqRow x(H.width, 0);
    for (int k = 0; k < dim; ++k)
      if (co[k])
        for (int j = 0; j < H.width; ++j) x[j] = F.add(x[j], F.mul(co[k], H.basis[k][j]));
    return x;
  };
  if (first_only) {
    std::vector<int> co(dim);
    for (int t = 0; t < 256; ++t) {
      for (auto& z : co) z = static_cast<int>(rng() % F.q);
      if (test(combo(co))) return out;
    }
  }
  if (big) {
    out.complete = false;
    std::vector<int> co(dim);
    for (int t = 0; t < 4096; ++t) {
      for (auto& z : co) z = static_cast<int>(rng() % F.q);
      if (test(combo(co)) && first_only) return out;
    }
    return out;
  }
  std::vector<int> co(dim, 0);
  for (long long t = 0; t < total; ++t) {
    long long r = t;
    for (int k = 0; k < dim; ++k) co[k] = static_cast<int>(r % F.q), r /= F.q;
    if (test(combo(co)) && first_only) return out;
  }
  return out;
}

int vdet(const BuildingVertex& v, const CurveConfig& c, int i) {
  const Place& P = c.punctures[i].place;
  return valuation(v.x[i].matrix(P).det(), P);
}

}  // namespace

QuotientComplex quotient_ball(const CurveConfig& c, int r, GroupFlavor group, int D) {
  if (r < 0 || r > 6) throw std::invalid_argument("radius must be in 0..6");
  (void)D;
  Building B = building_of(c);
  const Fq& F = c.field();
  int s = c.s();
  bool sl = group == GroupFlavor::SL2 || group == GroupFlavor::PSL2;
  auto units = units_group(c);
  if (sl && !units.empty()) throw std::domain_error("unsupported: SL2 quotients need unit rank 0");
  std::vector<ResField> RF;
  for (auto& p : c.punctures) RF.emplace_back(F, p.place);
  // determinant twists: products of distinct unit generators
  std::vector<RatFunc> twists;
  for (int mask = 0; mask < (1 << units.size()); ++mask) {
    RatFunc u = RatFunc::constant(F, 1);
    for (size_t j = 0; j < units.size(); ++j)
      if (mask >> j & 1) u = u * units[j].p1;
    twists.push_back(u);
  }
  std::mt19937_64 rng(0x5eed);

  auto ball = building_ball(B, B.base(), r);
  auto& verts = ball.cubes[0];
  std::map<BuildingVertex, int> vid;
  for (size_t k = 0; k < verts.size(); ++k) vid[verts[k].base] = static_cast<int>(k);
  std::vector<BundleClass> vclass;
  for (auto& v : verts) vclass.push_back(classify_vertex(c, v.base));

  // vertex orbits: representatives per class, transporters into them
  struct Rep {
    BuildingVertex v;
    BundleClass cls;
    std::vector<std::vector<ResMat>> aut;
    bool aut_complete = true;
    bool aut_done = false;
  };
  std::vector<Rep> reps;
  std::vector<int> orbit_v(verts.size(), -1);
  std::vector<std::vector<ResMat>> transport(verts.size());
  bool vertices_exact = true;
  auto find_transport = [&](const BuildingVertex& w, const BuildingVertex& v, std::vector<ResMat>& out, bool& exact) {
    exact = true;
    for (auto& u : twists) {
      std::vector<int> e(s);
      bool ok = true;
      for (int i = 0; i < s && ok; ++i) {
        int tot = vdet(w, c, i) - vdet(v, c, i) + valuation(u, c.punctures[i].place);
        if (tot % 2) ok = false;
        e[i] = tot / 2;
      }
      if (!ok) continue;
      auto H = hom_image(c, RF, v, w, e, u);
      auto E = enumerate_image(c, H, RF, sl, true, rng);
      if (!E.elems.empty()) {
        out = E.elems[0];
        return true;
      }
      if (!E.complete) exact = false;
    }
    return false;
  };
  for (size_t k = 0; k < verts.size(); ++k) {
    const auto& w = verts[k].base;
    for (size_t j = 0; j < reps.size() && orbit_v[k] < 0; ++j) {
      if (!(reps[j].cls == vclass[k])) continue;
      bool exact;
      if (find_transport(w, reps[j].v, transport[k], exact)) orbit_v[k] = static_cast<int>(j);
      else if (!exact) vertices_exact = false;
    }
    if (orbit_v[k] < 0) {
      orbit_v[k] = static_cast<int>(reps.size());
      reps.push_back(Rep{w, vclass[k], {}, true, false});
      transport[k].clear();
      for (int i = 0; i < s; ++i) transport[k].push_back(ResMat{1, 0, 0, 1});
    }
  }
  auto aut_of = [&](Rep& R) -> Rep& {
    if (!R.aut_done) {
      auto H = hom_image(c, RF, R.v, R.v, std::vector<int>(s, 0), RatFunc::constant(F, 1));
      auto E = enumerate_image(c, H, RF, sl, false, rng);
      R.aut = std::move(E.elems);
      R.aut_complete = E.complete;
      R.aut_done = true;
    }
    return R;
  };

  QuotientComplex Q;
  Q.group = group;
  Q.radius = r;
  Q.cells.resize(ball.cubes.size());
  std::vector<std::vector<int>> orbit_of(ball.cubes.size()), sign_of(ball.cubes.size());

  for (size_t d = 0; d < ball.cubes.size(); ++d) {
    auto& cubes = ball.cubes[d];
    bool exact = vertices_exact;
    std::vector<int> root(cubes.size()), rsign(cubes.size(), 1);
    std::vector<bool> rev_node;
    if (d == 0) {
      for (size_t k = 0; k < cubes.size(); ++k) root[k] = orbit_v[k];
      rev_node.assign(reps.size(), false);
    } else {
      // node = (orbit of the chosen corner, canonical line tuple at its representative)
      std::map<std::tuple<int, std::vector<int>, std::vector<long long>>, int> node_id;
      std::vector<std::tuple<int, int, int>> links;  // cube, node, sign
      for (size_t k = 0; k < cubes.size(); ++k) {
        auto& cb = cubes[k];
        auto corners = cb.corners();
        BundleClass best = vclass[vid.at(corners[0])];
        for (auto& x : corners) best = std::min(best, vclass[vid.at(x)]);
        for (auto& x : corners) {
          int wi = vid.at(x);
          if (!(vclass[wi] == best)) continue;
          Rep& R = aut_of(reps[orbit_v[wi]]);
          if (!R.aut_complete) exact = false;
          // lines of the cube at corner x, moved to the representative
          std::vector<long long> lines;
          std::vector<bool> up;  // x is the lower end in direction j
          for (size_t j = 0; j < cb.dirs.size(); ++j) {
            int i = cb.dirs[j];
            const Place& P = c.punctures[i].place;
            TreeVertex nb = x.x[i] == cb.base.x[i] ? cb.other[j] : cb.base.x[i];
            up.push_back(x.x[i] < nb);
            lines.push_back(act_line(RF[i], transport[wi][i], link_coordinate(x.x[i], nb, P)));
          }
          std::vector<long long> bestl;
          for (auto& g : R.aut) {
            std::vector<long long> l2;
            for (size_t j = 0; j < cb.dirs.size(); ++j) l2.push_back(act_line(RF[cb.dirs[j]], g[cb.dirs[j]], lines[j]));
            if (bestl.empty() || l2 < bestl) bestl = l2;
          }
          if (bestl.empty()) bestl = lines;
          int sg = 1;
          for (size_t j = 0; j < cb.dirs.size(); ++j) {
            int i = cb.dirs[j];
            TreeVertex nb2 = neighbor(R.v.x[i], c.punctures[i].place, bestl[j]);
            if ((R.v.x[i] < nb2) != up[j]) sg = -sg;
          }
          auto key = std::make_tuple(orbit_v[wi], cb.dirs, bestl);
          auto it = node_id.emplace(key, static_cast<int>(node_id.size())).first;
          links.emplace_back(static_cast<int>(k), it->second, sg);
        }
      }
      int ncube = static_cast<int>(cubes.size());
      SignedUF uf(ncube + static_cast<int>(node_id.size()));
      for (auto& [k, nd, sg] : links) uf.unite(k, ncube + nd, sg);
      for (int k = 0; k < ncube; ++k) {
        auto [rt, sg] = uf.find(k);
        root[k] = rt;
        rsign[k] = sg;
      }
      rev_node.assign(ncube + node_id.size(), false);
      for (int k = 0; k < ncube; ++k) rev_node[root[k]] = uf.reversed[root[k]];
    }
    std::map<int, std::vector<int>> groups;
    for (size_t k = 0; k < cubes.size(); ++k) groups[root[k]].push_back(static_cast<int>(k));
    std::vector<std::pair<int, std::vector<int>>> members(groups.begin(), groups.end());
    std::sort(members.begin(), members.end(),
              [&](auto& x, auto& y) { return cubes[x.second[0]] < cubes[y.second[0]]; });
    orbit_of[d].assign(cubes.size(), -1);
    sign_of[d].assign(cubes.size(), 1);
    for (auto& [rt, mem] : members) {
      QuotientCell cell;
      cell.dim = static_cast<int>(d);
      int rep = mem[0];
      cell.rep = cubes[rep];
      cell.members = static_cast<long long>(mem.size());
      for (auto& corner : cell.rep.corners()) cell.corner_classes.push_back(vclass[vid.at(corner)]);
      cell.bundle = cell.corner_classes[0];
      std::sort(cell.corner_classes.begin(), cell.corner_classes.end());
      cell.parabolic = is_parabolic(cell.rep, c);
      cell.reversed = d > 0 && rev_node[rt];
      if (d == 0) {
        cell.stab = stabilizer_descriptor(cell.bundle, c, group);
      } else {
        cell.stab.flavor = group;
        cell.stab.kind = cell.parabolic ? StabDescriptor::TorusUnipotent : StabDescriptor::CentralOnly;
        cell.stab.h = -1;
      }
      int o = static_cast<int>(Q.cells[d].size());
      for (int k : mem) {
        orbit_of[d][k] = o;
        sign_of[d][k] = rsign[k] * rsign[rep];
      }
      Q.cells[d].push_back(cell);
    }
    if (!exact) {
      // orbits may be split; flag cells sharing all invariants
      std::map<std::vector<BundleClass>, int> inv_count;
      auto invariant = [](const QuotientCell& cell) {
        auto key = cell.corner_classes;
        key.push_back(BundleClass{cell.parabolic ? 1 : 0, cell.reversed ? 1 : 0, 0});
        return key;
      };
      for (auto& cell : Q.cells[d]) inv_count[invariant(cell)]++;
      for (auto& cell : Q.cells[d]) cell.ambiguous = inv_count[invariant(cell)] > 1;
    }
    if (d == 0) continue;
    for (auto& cell : Q.cells[d]) {
      std::map<int, int> acc;
      for (auto& [f, sg] : cube_boundary(cell.rep)) {
        int fi = ball.find(f);
        acc[orbit_of[d - 1][fi]] += sg * sign_of[d - 1][fi];
      }
      for (auto& [o, sg] : acc)
        if (sg) cell.faces.emplace_back(o, sg);
    }
  }
  return Q;
}

}  // namespace btq
