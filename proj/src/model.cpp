#include "btq/model.h"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace btq {

std::string cryst_str(CrystFlavor f) {
  switch (f) {
    case CrystFlavor::T: return "T";
    case CrystFlavor::ST: return "ST";
    case CrystFlavor::N: return "N";
    case CrystFlavor::SN: return "SN";
  }
  return "?";
}

CrystFlavor parse_cryst(const std::string& s) {
  if (s == "T") return CrystFlavor::T;
  if (s == "ST") return CrystFlavor::ST;
  if (s == "N") return CrystFlavor::N;
  if (s == "SN") return CrystFlavor::SN;
  throw std::invalid_argument("unknown group flavor: " + s);
}

std::vector<long long> CrystGroup::Affine::apply(const std::vector<long long>& x) const {
  std::vector<long long> y(x.size());
  for (size_t i = 0; i < x.size(); ++i) y[i] = eps * x[i] + v[i];
  return y;
}

std::vector<CrystGroup::Affine> CrystGroup::generators() const {
  std::vector<Affine> out;
  for (int r = 0; r < lattice.rows; ++r) {
    Affine a;
    for (int i = 0; i < s; ++i) a.v.push_back(lattice(r, i).get_si());
    out.push_back(a);
  }
  if (inversions()) {
    out.push_back(Affine{-1, std::vector<long long>(s, 0)});
    for (int r = 0; r < centers.rows; ++r) {
      Affine a{-1, {}};
      for (int i = 0; i < s; ++i) a.v.push_back(2 * centers(r, i).get_si());
      out.push_back(a);
    }
  }
  return out;
}

namespace {

CrystGroup from_centers(int s, const IntMatrix& centers, CrystFlavor flavor) {
  CrystGroup g;
  g.s = s;
  g.flavor = flavor;
  g.centers = centers;
  g.lattice = centers;
  if (flavor == CrystFlavor::ST || flavor == CrystFlavor::SN)
    for (auto& x : g.lattice.a) x *= 2;
  return g;
}

}  // namespace

CrystGroup build_cryst(const PicData& pic, CrystFlavor flavor) {
  return from_centers(pic.phi.cols, pic.ker_phi, flavor);
}

CrystGroup synthetic_cryst(const IntMatrix& phi, const std::vector<long long>& moduli, CrystFlavor flavor) {
  if (static_cast<int>(moduli.size()) != phi.rows) throw std::invalid_argument("one modulus per row of phi");
  int s = phi.cols, m = phi.rows;
  IntMatrix A(m, s + m);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < s; ++j) A(i, j) = phi(i, j);
    A(i, s + i) = static_cast<long>(moduli[i]);
  }
  IntMatrix K = integer_kernel(A);
  IntMatrix proj(K.cols, s);
  for (int c = 0; c < K.cols; ++c)
    for (int i = 0; i < s; ++i) proj(c, i) = K(i, c);
  return from_centers(s, hermite_rows(proj), flavor);
}

namespace {

using Vec = std::vector<long long>;

// Reduction modulo the translation lattice L (in scaled coordinates) and the
// free coordinates used by the window.
struct Reducer {
  int s = 0, k = 0, scale = 1;
  bool inv = false;
  std::vector<Vec> U;      // s x s unimodular, U * L-columns = diag
  std::vector<long long> d;
  std::vector<Vec> P;      // rows spanning the annihilator of L

  Reducer(const CrystGroup& g, int sc) : s(g.s), k(g.lattice.rows), scale(sc), inv(g.inversions()) {
    IntMatrix L(s, k);
    for (int r = 0; r < k; ++r)
      for (int i = 0; i < s; ++i) L(i, r) = g.lattice(r, i) * sc;
    U.assign(s, Vec(s, 0));
    if (k > 0) {
      auto R = snf(L, true);
      for (int i = 0; i < s; ++i)
        for (int j = 0; j < s; ++j) U[i][j] = R.U(i, j).get_si();
      for (auto& f : R.factors) d.push_back(f.get_si());
      IntMatrix Lt = L.transpose();
      IntMatrix N = integer_kernel(Lt);
      IntMatrix H = hermite_rows(N.transpose());
      for (int r = 0; r < H.rows; ++r) {
        Vec row;
        for (int i = 0; i < s; ++i) row.push_back(H(r, i).get_si());
        P.push_back(row);
      }
    } else {
      for (int i = 0; i < s; ++i) {
        U[i][i] = 1;
        Vec row(s, 0);
        row[i] = 1;
        P.push_back(row);
      }
    }
  }
  Vec point_key(const Vec& x) const {
    Vec y(s, 0);
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j) y[i] += U[i][j] * x[j];
    for (int i = 0; i < static_cast<int>(d.size()); ++i) y[i] = ((y[i] % d[i]) + d[i]) % d[i];
    return y;
  }
  Vec free_coords(const Vec& x) const {
    Vec f;
    for (auto& row : P) {
      long long v = 0;
      for (int j = 0; j < s; ++j) v += row[j] * x[j];
      f.push_back(v);
    }
    return f;
  }
  // orbit key of the cell (x, dirs), taken from it or its inverted image,
  // with the orientation sign relative to that key
  struct CellKey {
    std::pair<Vec, std::vector<int>> key;
    int sign = 1;
    bool fixed = false;
    bool swapped = false;  // key taken from the inverted image
  };
  CellKey cell_key(const Vec& x, const std::vector<int>& dirs) const {
    CellKey out;
    out.key = {point_key(x), dirs};
    if (!inv) return out;
    Vec y(s);
    for (int i = 0; i < s; ++i) y[i] = -x[i];
    for (int j : dirs) y[j] -= 1;
    auto k2 = std::make_pair(point_key(y), dirs);
    int sg = dirs.size() % 2 ? -1 : 1;
    if (k2 == out.key) {
      out.fixed = true;
      if (sg < 0) throw std::logic_error("cell reversed by an inversion");
    } else if (k2 < out.key) {
      out.key = k2;
      out.sign = sg;
      out.swapped = true;
    }
    return out;
  }
};

bool in_window(const Reducer& R, const Vec& x, const std::vector<int>& dirs, long long W) {
  // every corner's free coordinates in [-W, W]
  int n = static_cast<int>(dirs.size());
  for (int mask = 0; mask < (1 << n); ++mask) {
    Vec y = x;
    for (int j = 0; j < n; ++j)
      if (mask >> j & 1) y[dirs[j]] += 1;
    for (long long f : R.free_coords(y))
      if (f < -W || f > W) return false;
  }
  return true;
}

int needs_subdivision(const CrystGroup& g) {
  if (g.flavor != CrystFlavor::N) return 1;
  for (auto& x : g.lattice.a)
    if (x % 2 != 0) return 2;
  return 1;
}

}  // namespace

int min_window(const CrystGroup& g) {
  long long m = 0;
  for (auto& x : g.lattice.a) m = std::max(m, static_cast<long long>(mpz_class(abs(x)).get_si()));
  return static_cast<int>(2 * m + 2);
}

std::vector<int> ModelQuotient::counts() const {
  std::vector<int> out;
  for (auto& l : cells) out.push_back(static_cast<int>(l.size()));
  return out;
}

ChainComplex ModelQuotient::chain_complex() const {
  ChainComplex C(counts());
  for (size_t d = 1; d < cells.size(); ++d) {
    for (size_t k = 0; k < cells[d].size(); ++k)
      for (auto& [f, s] : cells[d][k].faces) C.d[d].add(f, static_cast<int>(k), s);
    C.d[d].finalize();
  }
  return C;
}

ModelQuotient model_quotient(const CrystGroup& g, int window) {
  if (window < min_window(g)) throw std::invalid_argument("window too small: need at least " + std::to_string(min_window(g)));
  int sc = needs_subdivision(g);
  Reducer R(g, sc);
  long long W = static_cast<long long>(window) * sc;
  int s = g.s;
  ModelQuotient Q;
  Q.window = window;
  Q.scale = sc;
  // vertex orbits by breadth-first search in unit steps inside the window
  std::map<Vec, int> vkey;
  std::vector<Vec> vrep;
  std::deque<Vec> queue{Vec(s, 0)};
  vkey[R.cell_key(Vec(s, 0), {}).key.first] = 0;
  vrep.push_back(Vec(s, 0));
  while (!queue.empty()) {
    Vec x = queue.front();
    queue.pop_front();
    for (int i = 0; i < s; ++i)
      for (int e : {1, -1}) {
        Vec y = x;
        y[i] += e;
        if (!in_window(R, y, {}, W)) continue;
        auto key = R.cell_key(y, {}).key.first;
        if (vkey.count(key)) continue;
        vkey[key] = static_cast<int>(vrep.size());
        vrep.push_back(y);
        queue.push_back(y);
      }
  }
  // cells based at the vertex representatives, all direction sets
  Q.cells.resize(s + 1);
  std::vector<std::map<std::pair<Vec, std::vector<int>>, int>> index(s + 1);
  for (int mask = 0; mask < (1 << s); ++mask) {
    std::vector<int> dirs;
    for (int i = 0; i < s; ++i)
      if (mask >> i & 1) dirs.push_back(i);
    int d = static_cast<int>(dirs.size());
    // each cell orbit has a member whose base or top corner is a vertex rep
    std::vector<Vec> bases = vrep;
    if (g.inversions() && d > 0)
      for (auto x : vrep) {
        for (int j : dirs) x[j] -= 1;
        bases.push_back(x);
      }
    for (auto& x : bases) {
      if (!in_window(R, x, dirs, W)) continue;
      auto ck = R.cell_key(x, dirs);
      if (index[d].count(ck.key)) continue;
      index[d][ck.key] = static_cast<int>(Q.cells[d].size());
      ModelCell cell;
      cell.base = x;
      cell.dirs = dirs;
      cell.stabilizer = ck.fixed ? 2 : 1;
      Q.cells[d].push_back(cell);
    }
  }
  // boundaries, with signs relative to the orientation of each orbit key
  for (int d = 1; d <= s; ++d)
    for (auto& cell : Q.cells[d]) {
      int k = 0;
      std::map<int, int> acc;
      for (int j : cell.dirs) {
        std::vector<int> rest;
        for (int i : cell.dirs)
          if (i != j) rest.push_back(i);
        int sg = k % 2 ? -1 : 1;
        Vec hi = cell.base;
        hi[j] += 1;
        for (auto [pt, ss] : {std::make_pair(hi, sg), std::make_pair(cell.base, -sg)}) {
          auto ck = R.cell_key(pt, rest);
          auto it = index[d - 1].find(ck.key);
          if (it == index[d - 1].end()) throw std::logic_error("face orbit missing");
          acc[it->second] += ss * ck.sign;
          cell.terms.push_back({it->second, ss * ck.sign, ck.swapped ? -1 : 1});
        }
        ++k;
      }
      for (auto& [f, v] : acc)
        if (v) cell.faces.emplace_back(f, v);
    }
  // the stored representative may carry the opposite orientation to its key
  for (int d = 1; d <= s; ++d)
    for (auto& cell : Q.cells[d]) {
      int sg = R.cell_key(cell.base, cell.dirs).sign;
      if (sg < 0) {
        for (auto& f : cell.faces) f.second = -f.second;
        for (auto& t : cell.terms) t.sign = -t.sign;
      }
    }
  // transport parity relative to the stored face representative
  for (int d = 1; d <= s; ++d)
    for (auto& cell : Q.cells[d])
      for (auto& t : cell.terms) {
        auto& f = Q.cells[d - 1][t.target];
        if (R.cell_key(f.base, f.dirs).swapped) t.eps = -t.eps;
      }
  return Q;
}

std::vector<FgAbGroup> quotient_homology(const CrystGroup& g, int window, Coeff coeff) {
  auto a = model_quotient(g, window).chain_complex().homology_all(coeff);
  auto b = model_quotient(g, window + 2).chain_complex().homology_all(coeff);
  if (a != b) throw std::runtime_error("window too small: homology not stable");
  return a;
}

SpecialVertices special_vertices(const CrystGroup& g) {
  if (g.flavor != CrystFlavor::SN) throw std::invalid_argument("special vertices need the SN flavor");
  Reducer R(g, 1);
  SpecialVertices out;
  std::set<Vec> seen;
  int k = g.rank();
  for (int mask = 0; mask < (1 << k); ++mask) {
    Vec a(g.s, 0);
    for (int r = 0; r < k; ++r)
      if (mask >> r & 1)
        for (int i = 0; i < g.s; ++i) a[i] += g.centers(r, i).get_si();
    auto ck = R.cell_key(a, {});
    if (!ck.fixed) throw std::logic_error("inversion center not fixed");
    if (seen.insert(ck.key.first).second) out.reps.push_back(a);
  }
  out.count = static_cast<long long>(out.reps.size());
  return out;
}

FgAbGroup tensor(const FgAbGroup& g, Coeff coeff) {
  switch (coeff.kind) {
    case Coeff::Z: return g;
    case Coeff::Zhalf: return g.without_two_torsion();
    case Coeff::Zmod: {
      std::vector<mpz_class> f;
      for (int i = 0; i < g.free_rank; ++i) f.push_back(static_cast<long>(coeff.ell));
      for (long long t : g.torsion) f.push_back(static_cast<long>(std::gcd(t, coeff.ell)));
      return FgAbGroup::cokernel([&] {
        IntMatrix M(static_cast<int>(f.size()), static_cast<int>(f.size()));
        for (size_t i = 0; i < f.size(); ++i) M(static_cast<int>(i), static_cast<int>(i)) = f[i];
        return M;
      }());
    }
  }
  return g;
}

FgAbGroup sn_tilde_h1(const FgAbGroup& units, Coeff coeff) {
  if (units.torsion.size() > 1) throw std::invalid_argument("constant units must be cyclic");
  long long n = units.torsion.empty() ? 1 : units.torsion[0];
  int r = units.free_rank;
  // generators: zeta, u_1..u_r, w
  int m = r + 2;
  std::vector<std::vector<long long>> rel;
  auto row = [&] { return std::vector<long long>(m, 0); };
  auto a = row();
  a[0] = n;
  rel.push_back(a);
  // w d(u) w^-1 = d(u)^-1 forces 2 d(u) = 0
  a = row();
  a[0] = 2;
  rel.push_back(a);
  for (int j = 0; j < r; ++j) {
    a = row();
    a[1 + j] = 2;
    rel.push_back(a);
  }
  // w^2 = d(-1); -1 = zeta^(n/2) when n is even, else -1 = 1
  a = row();
  a[m - 1] = 2;
  if (n % 2 == 0) a[0] = -(n / 2);
  rel.push_back(a);
  IntMatrix M = IntMatrix::from(rel).transpose();
  return tensor(FgAbGroup::cokernel(M), coeff);
}

FgAbGroup units_presentation(const CurveConfig& c, const PicData& pic) {
  FgAbGroup u;
  u.free_rank = pic.unit_rank;
  if (c.q > 2) u.torsion = {c.q - 1};
  return u;
}

}  // namespace btq
