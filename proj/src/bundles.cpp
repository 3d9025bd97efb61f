#include "btq/bundles.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

#include "btq/fqlinalg.h"

namespace btq {

Building building_of(const CurveConfig& c) {
  if (c.kind != CurveConfig::P1) throw std::invalid_argument("the building dictionary needs base curve P1");
  std::vector<Place> ps;
  for (auto& p : c.punctures) ps.push_back(p.place);
  return Building(ps);
}

namespace {

RatFunc zero_of(const Fq& F) { return RatFunc(Poly(F), Poly::constant(F, 1)); }

int min_entry_valuation(const Mat2& M, const Place& P) {
  int v = 0;
  for (auto& x : M.e)
    if (!x.is_zero()) v = std::min(v, valuation(x, P));
  return v;
}

// H^0(E(m inf)) as the null space of lattice conditions on (g1, g2)/D,
// deg g_j <= N. Coefficient index j * (N + 1) + k stands for t^k e_j / D.
struct SectionSystem {
  Poly D;
  int N = -1;
  std::vector<FqRow> basis;
  std::array<RatFunc, 2> vec(const FqRow& x) const {
    const Fq& F = *D.F;
    std::vector<int> c0(N + 1), c1(N + 1);
    for (int k = 0; k <= N; ++k) c0[k] = x[k], c1[k] = x[N + 1 + k];
    return {RatFunc(Poly(F, c0), D), RatFunc(Poly(F, c1), D)};
  }
};

SectionSystem sections(const CurveConfig& c, const BuildingVertex& v, int m) {
  const Fq& F = c.field();
  int s = c.s();
  SectionSystem S;
  S.D = Poly::constant(F, 1);
  int cinf = 0;
  bool inf_punct = false;
  std::vector<Mat2> Minv(s);
  for (int i = 0; i < s; ++i) {
    const Place& P = c.punctures[i].place;
    Mat2 M = v.x[i].matrix(P);
    Minv[i] = M.inverse();
    int ci = -min_entry_valuation(M, P);
    if (P.is_infinity()) {
      cinf = ci;
      inf_punct = true;
    } else {
      S.D = S.D * pow(P.pi(), ci);
    }
  }
  S.N = S.D.deg() + m + cinf;
  if (S.N < 0) return S;
  int n = 2 * (S.N + 1);
  std::map<std::tuple<int, int, int, int>, FqRow> rows;
  RatFunc tm = inf_punct ? pow(RatFunc::t(F), -m) : RatFunc::constant(F, 1);
  for (int j = 0; j < 2; ++j)
    for (int k = 0; k <= S.N; ++k) {
      RatFunc f(Poly::monomial(F, 1, k), S.D);
      int col = j * (S.N + 1) + k;
      for (int i = 0; i < s; ++i) {
        const Place& P = c.punctures[i].place;
        RatFunc g = P.is_infinity() ? f * tm : f;
        for (int r = 0; r < 2; ++r) {
          RatFunc y = Minv[i].e[2 * r + j] * g;
          if (y.is_zero()) continue;
          auto e = padic_expand(y, P, 0);
          for (int ex = e.start; ex < 0; ++ex) {
            Poly co = e.at(ex);
            for (int d = 0; d < P.degree(); ++d) {
              int val = co[d];
              if (!val) continue;
              auto& row = rows[{i, r, ex, d}];
              if (row.empty()) row.assign(n, 0);
              row[col] = F.add(row[col], val);
            }
          }
        }
      }
    }
  std::vector<FqRow> R;
  for (auto& [k, row] : rows) R.push_back(row);
  S.basis = fq_nullspace(F, R, n);
  return S;
}

Poly residue_poly(const RatFunc& y, const Place& P) { return residue(y, P); }

// coordinates over F_q of a residue class (degree < deg P)
std::vector<int> res_coords(const Poly& p, int d) {
  std::vector<int> out(d);
  for (int i = 0; i < d; ++i) out[i] = p[i];
  return out;
}

Poly mod_place(const Poly& p, const Place& P) { return P.is_infinity() ? p : p % P.pi(); }

}  // namespace

int h0(const CurveConfig& c, const BuildingVertex& v, int m, std::vector<std::array<RatFunc, 2>>* basis) {
  auto S = sections(c, v, m);
  if (basis) {
    basis->clear();
    for (auto& b : S.basis) basis->push_back(S.vec(b));
  }
  return static_cast<int>(S.basis.size());
}

SplitType split_type(const CurveConfig& c, const BuildingVertex& v) {
  int degE = 0;
  for (int i = 0; i < c.s(); ++i) degE -= c.punctures[i].degree * v.x[i].m;
  // a = -min{m : h0(E(m)) > 0}
  int m = 0;
  if (h0(c, v, m) > 0) {
    while (h0(c, v, m - 1) > 0) --m;
  } else {
    while (h0(c, v, m) == 0) ++m;
  }
  SplitType st;
  st.a = -m;
  st.b = degE - st.a;
  int top = h0(c, v, m);
  if (st.a < st.b || top != (st.a == st.b ? 2 : 1)) throw std::logic_error("inconsistent section counts");
  return st;
}

long long BundleClass::kclass() const { return std::min(a_mod, (g - a_mod) % g); }

std::string BundleClass::str() const {
  std::string s = "n=" + std::to_string(n);
  if (g > 1) s += ",a=" + std::to_string(a_mod) + " mod " + std::to_string(g);
  return s;
}

BundleClass classify_vertex(const CurveConfig& c, const BuildingVertex& v) {
  auto st = split_type(c, v);
  BundleClass b;
  long long g = 0;
  for (auto& p : c.punctures) g = std::gcd(g, static_cast<long long>(p.degree));
  b.g = g;
  b.n = st.a - st.b;
  b.a_mod = ((st.a % g) + g) % g;
  return b;
}

std::string flavor_str(GroupFlavor f) {
  switch (f) {
    case GroupFlavor::GL2: return "GL2";
    case GroupFlavor::SL2: return "SL2";
    case GroupFlavor::PGL2: return "PGL2";
    default: return "PSL2";
  }
}

std::string StabDescriptor::str() const {
  std::string fl = flavor_str(flavor);
  switch (kind) {
    case FullGL2k: return "FullGL2k(" + fl + ")";
    case TorusUnipotent: return "TorusUnipotent(h=" + std::to_string(h) + "," + fl + ")";
    case NonSplitTorus: return "NonSplitTorus(deg " + std::to_string(ext_degree) + "," + fl + ")";
    default: return "CentralOnly(" + fl + ")";
  }
}

// non-negative a with sum a_i d_i = n, if any
static bool a0_exponents(const CurveConfig& c, long long n, std::vector<int>& a) {
  int s = c.s();
  a.assign(s, 0);
  std::function<bool(int, long long)> rec = [&](int i, long long rest) {
    if (i == s) return rest == 0;
    int d = c.punctures[i].degree;
    for (long long k = rest / d; k >= 0; --k) {
      a[i] = static_cast<int>(k);
      if (rec(i + 1, rest - k * d)) return true;
    }
    a[i] = 0;
    return false;
  };
  return rec(0, n);
}

// basis of H^0(O(sum e_j P_j)) for e_j >= -1
static std::vector<RatFunc> riemann_roch_basis(const CurveConfig& c, const std::vector<int>& e) {
  const Fq& F = c.field();
  Poly den = Poly::constant(F, 1), num = Poly::constant(F, 1);
  int bound = 0;
  for (int i = 0; i < c.s(); ++i) {
    const Place& P = c.punctures[i].place;
    if (P.is_infinity()) {
      bound += e[i];
    } else if (e[i] >= 0) {
      den = den * pow(P.pi(), e[i]);
      bound += e[i] * P.degree();
    } else {
      num = num * pow(P.pi(), -e[i]);
      bound += e[i] * P.degree();
    }
  }
  std::vector<RatFunc> out;
  for (int k = 0; k <= bound; ++k) out.emplace_back(num * Poly::monomial(F, 1, k), den);
  return out;
}

static long long gl2_order(int q, GroupFlavor f) {
  long long Q = q;
  long long gl = (Q * Q - 1) * (Q * Q - Q);
  switch (f) {
    case GroupFlavor::GL2: return gl;
    case GroupFlavor::SL2:
    case GroupFlavor::PGL2: return gl / (Q - 1);
    default: return gl / (Q - 1) / (q % 2 ? 2 : 1);
  }
}

StabDescriptor stabilizer_descriptor(const BundleClass& b, const CurveConfig& c, GroupFlavor f) {
  const Fq& F = c.field();
  StabDescriptor d;
  d.flavor = f;
  int al = F.generator();
  RatFunc one = RatFunc::constant(F, 1), gen = RatFunc::constant(F, al);
  if (f == GroupFlavor::GL2 || f == GroupFlavor::PGL2) {
    d.torus_generators = {Mat2::diag(gen, one), Mat2::diag(one, gen)};
  } else {
    d.torus_generators = {Mat2::diag(gen, gen.inverse())};
  }
  if (b.n == 0) {
    d.kind = StabDescriptor::FullGL2k;
    d.order = gl2_order(c.q, f);
    return d;
  }
  d.kind = StabDescriptor::TorusUnipotent;
  d.h = static_cast<int>(b.n + 1);
  long long Q = c.q, torus = (f == GroupFlavor::GL2) ? (Q - 1) * (Q - 1) : Q - 1;
  if (f == GroupFlavor::PSL2 && c.q % 2) torus /= 2;
  long long qh = 1;
  for (int i = 0; i < d.h && qh < (1LL << 40); ++i) qh *= Q;
  d.order = torus * qh;
  std::vector<int> a;
  if (b.a_mod == 0 && a0_exponents(c, b.n, a)) d.unipotent_basis = riemann_roch_basis(c, a);
  return d;
}

StabDescriptor nonsplit_torus_descriptor(int q, int ext_degree) {
  StabDescriptor d;
  d.kind = StabDescriptor::NonSplitTorus;
  d.ext_degree = ext_degree;
  long long o = 1;
  for (int i = 0; i < ext_degree; ++i) o *= q;
  d.order = o - 1;
  return d;
}

long long fiber_line(const CurveConfig& c, const BuildingVertex& v, int i, const std::array<RatFunc, 2>& sigma, int m) {
  const Fq& F = c.field();
  const Place& P = c.punctures[i].place;
  Mat2 Minv = v.x[i].matrix(P).inverse();
  RatFunc tw = P.is_infinity() ? pow(RatFunc::t(F), -m) : RatFunc::constant(F, 1);
  RatFunc y1 = (Minv.a() * sigma[0] + Minv.b() * sigma[1]) * tw;
  RatFunc y2 = (Minv.c() * sigma[0] + Minv.d() * sigma[1]) * tw;
  if (y2.is_zero()) return -1;
  if (!y1.is_zero() && valuation(y1, P) < valuation(y2, P)) return -1;
  return residue_poly(y1 / y2, P).code();
}

// fiber residues (y1, y2) of a section of E(m inf) at puncture i
static std::pair<Poly, Poly> fiber_vector(const CurveConfig& c, const BuildingVertex& v, int i,
                                          const std::array<RatFunc, 2>& sigma, int m) {
  const Fq& F = c.field();
  const Place& P = c.punctures[i].place;
  Mat2 Minv = v.x[i].matrix(P).inverse();
  RatFunc tw = P.is_infinity() ? pow(RatFunc::t(F), -m) : RatFunc::constant(F, 1);
  RatFunc y1 = (Minv.a() * sigma[0] + Minv.b() * sigma[1]) * tw;
  RatFunc y2 = (Minv.c() * sigma[0] + Minv.d() * sigma[1]) * tw;
  return {residue_poly(y1, P), residue_poly(y2, P)};
}

bool is_parabolic(const BuildingCube& cube, const CurveConfig& c) {
  if (cube.dim() == 0) return true;
  const Fq& F = c.field();
  const BuildingVertex& v = cube.base;
  std::vector<std::pair<int, long long>> dirs;
  for (int k = 0; k < cube.dim(); ++k) {
    int i = cube.dirs[k];
    dirs.emplace_back(i, link_coordinate(v.x[i], cube.other[k], c.punctures[i].place));
  }
  SplitType st = split_type(c, v);
  if (st.a == st.b) {
    std::vector<std::array<RatFunc, 2>> B;
    h0(c, v, -st.a, &B);
    std::vector<std::array<RatFunc, 2>> pts{B[0]};
    for (int x = 0; x < F.q; ++x) {
      RatFunc cx = RatFunc::constant(F, x);
      pts.push_back({B[1][0] + cx * B[0][0], B[1][1] + cx * B[0][1]});
    }
    std::vector<std::vector<long long>> lines(pts.size());
    for (size_t p = 0; p < pts.size(); ++p)
      for (auto& [i, x] : dirs) lines[p].push_back(fiber_line(c, v, i, pts[p], -st.a));
    for (size_t p = 0; p < pts.size(); ++p)
      for (size_t p2 = p + 1; p2 < pts.size(); ++p2) {
        bool ok = true;
        for (size_t k = 0; k < dirs.size() && ok; ++k)
          ok = dirs[k].second == lines[p][k] || dirs[k].second == lines[p2][k];
        if (ok) return true;
      }
    return false;
  }
  // a > b: the degree-a summand is unique; complements are tau0 + f sigma, deg f <= n
  int n = st.a - st.b;
  auto Sa = sections(c, v, -st.a);
  auto Sb = sections(c, v, -st.b);
  std::array<RatFunc, 2> sigma = Sa.vec(Sa.basis[0]);
  int Nb = Sb.N, ncol = 2 * (Nb + 1);
  std::vector<FqRow> W;
  for (int k = 0; k <= n; ++k) {
    FqRow w(ncol, 0);
    for (int j = 0; j < 2; ++j)
      for (int e = 0; e <= Sa.N; ++e) w[j * (Nb + 1) + e + k] = Sa.basis[0][j * (Sa.N + 1) + e];
    W.push_back(w);
  }
  int rW = fq_rank(F, W, ncol);
  std::array<RatFunc, 2> tau;
  bool found = false;
  for (auto& bvec : Sb.basis) {
    auto W2 = W;
    W2.push_back(bvec);
    if (fq_rank(F, W2, ncol) > rW) {
      tau = Sb.vec(bvec);
      found = true;
      break;
    }
  }
  if (!found) throw std::logic_error("no complement section found");
  std::vector<FqRow> A;
  FqRow rhs;
  for (auto& [i, x] : dirs) {
    if (fiber_line(c, v, i, sigma, -st.a) == x) continue;
    const Place& P = c.punctures[i].place;
    int d = P.degree();
    Poly x1 = x < 0 ? Poly::constant(F, 1) : Poly::from_code(F, static_cast<uint32_t>(x));
    Poly x2 = x < 0 ? Poly(F) : Poly::constant(F, 1);
    auto wedge = [&](const std::pair<Poly, Poly>& y) { return res_coords(mod_place(y.first * x2 - y.second * x1, P), d); };
    auto w0 = wedge(fiber_vector(c, v, i, tau, -st.b));
    std::vector<std::vector<int>> cols;
    for (int k = 0; k <= n; ++k) {
      RatFunc tk(Poly::monomial(F, 1, k));
      cols.push_back(wedge(fiber_vector(c, v, i, {tk * sigma[0], tk * sigma[1]}, -st.b)));
    }
    for (int r = 0; r < d; ++r) {
      FqRow row;
      for (int k = 0; k <= n; ++k) row.push_back(cols[k][r]);
      A.push_back(row);
      rhs.push_back(F.neg(w0[r]));
    }
  }
  if (A.empty()) return true;
  return fq_solvable(F, A, rhs, n + 1);
}

BuildingVertex a0_vertex(const CurveConfig& c, const std::vector<int>& a) {
  if (static_cast<int>(a.size()) != c.s()) throw std::invalid_argument("one exponent per puncture expected");
  BuildingVertex v;
  for (int x : a) v.x.push_back(TreeVertex{x, {}});
  return v;
}

std::vector<Mat2> stabilizer_generators(const CurveConfig& c, const std::vector<int>& a, StabPart part, int direction) {
  const Fq& F = c.field();
  for (int x : a)
    if (x < 0) throw std::invalid_argument("exponents must be non-negative (normalized form)");
  RatFunc one = RatFunc::constant(F, 1), zero = zero_of(F), al = RatFunc::constant(F, F.generator());
  std::vector<Mat2> gens = {Mat2::diag(al, one), Mat2::diag(one, al)};
  if (part == StabPart::Torus) return gens;
  std::vector<int> e = a;
  if (part == StabPart::UnipotentStrict) {
    if (direction < 0) throw std::invalid_argument("strict unipotent part needs a direction");
    gens.clear();
    e[direction] -= 1;
  }
  bool all_zero = std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
  // scalars spanning F_q over F_p
  std::vector<RatFunc> scal;
  for (int j = 0, pj = 1; j < F.e; ++j, pj *= F.p) scal.push_back(RatFunc::constant(F, pj));
  for (auto& f : riemann_roch_basis(c, e))
    for (auto& s : scal) gens.push_back(Mat2(one, zero, s * f, one));
  if (part == StabPart::Full && all_zero) {
    for (auto& s : scal) gens.push_back(Mat2(one, s, zero, one));
    gens.push_back(Mat2(zero, one, one, zero));
  }
  return gens;
}

LinkActionReport stabilizer_link_action(const CurveConfig& c, const std::vector<int>& a, StabPart part) {
  Building B = building_of(c);
  LinkActionReport rep;
  rep.exponents = a;
  rep.part = part;
  BuildingVertex v = a0_vertex(c, a);
  rep.bundle = classify_vertex(c, v);
  rep.generators_stabilize = true;
  bool all_zero = std::all_of(a.begin(), a.end(), [](int x) { return x == 0; });
  for (int i = 0; i < c.s(); ++i) {
    const Place& P = c.punctures[i].place;
    auto gens = stabilizer_generators(c, a, part, i);
    for (auto& g : gens)
      if (B.act(g, v) != v) rep.generators_stabilize = false;
    LinkOrbits lo;
    lo.direction = i;
    auto L = link(v.x[i], P);
    lo.link_size = static_cast<long long>(L.size());
    // union-find over link indices; index q_v stands for infinity
    std::vector<int> parent(L.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    long long qv = P.residue_size();
    auto idx = [&](long long coord) { return coord < 0 ? static_cast<int>(qv) : static_cast<int>(coord); };
    std::vector<bool> moved(L.size(), false);
    for (auto& g : gens)
      for (size_t k = 0; k < L.size(); ++k) {
        TreeVertex w = act(g, L[k], P);
        long long coord = link_coordinate(v.x[i], w, P);
        int j = idx(coord);
        if (j != static_cast<int>(k)) moved[k] = true;
        parent[find(static_cast<int>(k))] = find(j);
      }
    std::map<int, std::vector<long long>> orb;
    for (size_t k = 0; k < L.size(); ++k) orb[find(static_cast<int>(k))].push_back(k == static_cast<size_t>(qv) ? -1 : static_cast<long long>(k));
    for (auto& [r, o] : orb) lo.orbits.push_back(o);
    for (size_t k = 0; k < L.size(); ++k)
      if (!moved[k]) lo.fixed.push_back(k == static_cast<size_t>(qv) ? -1 : static_cast<long long>(k));
    // the fractional-linear prediction x -> alpha x / (f0 x + beta)
    std::vector<long long> all;
    for (long long k = 0; k < qv; ++k) all.push_back(k);
    all.push_back(-1);
    if (part == StabPart::UnipotentStrict || (part == StabPart::Torus && c.q == 2)) {
      lo.predicted_fixed = all;
    } else if (part == StabPart::Torus) {
      lo.predicted_fixed = {0, -1};
    } else if (all_zero) {
      lo.predicted_fixed = {};
    } else {
      lo.predicted_fixed = {0};
    }
    std::sort(lo.fixed.begin(), lo.fixed.end());
    std::sort(lo.predicted_fixed.begin(), lo.predicted_fixed.end());
    if (lo.fixed.size() == L.size())
      lo.kind = "trivial";
    else if (lo.fixed == std::vector<long long>{-1, 0})
      lo.kind = "standard";
    else if (lo.fixed.size() == 1)
      lo.kind = "borel";
    else if (lo.orbits.size() == 1)
      lo.kind = "transitive";
    else
      lo.kind = "other";
    rep.directions.push_back(lo);
  }
  return rep;
}

}  // namespace btq
