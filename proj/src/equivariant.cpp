#include "btq/equivariant.h"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "btq/fq.h"
#include "btq/fqlinalg.h"

namespace btq {

// ---------------------------------------------------------------- G-complexes

namespace {

int perm_sign(std::vector<int> v) {
  int s = 1;
  for (size_t i = 0; i < v.size(); ++i)
    for (size_t j = i + 1; j < v.size(); ++j)
      if (v[i] > v[j]) s = -s;
  return s;
}

}  // namespace

GComplex GComplex::from_simplicial(const FiniteGroup& G, const SimplicialComplex& K,
                                   const std::vector<std::vector<int>>& vertex_perm) {
  if (static_cast<int>(vertex_perm.size()) != G.n) throw std::invalid_argument("one vertex permutation per element");
  GComplex X;
  X.G = G;
  X.counts = K.counts();
  auto C = K.chain_complex();
  X.d = C.d;
  X.simplicial = K;
  X.vertex_perm = vertex_perm;
  X.act.resize(X.counts.size());
  for (size_t p = 0; p < X.counts.size(); ++p) {
    X.act[p].resize(static_cast<size_t>(G.n) * X.counts[p]);
    for (int g = 0; g < G.n; ++g)
      for (int c = 0; c < X.counts[p]; ++c) {
        std::vector<int> img;
        for (int v : K.simplices[p][c]) img.push_back(vertex_perm[g][v]);
        int s = perm_sign(img);
        std::sort(img.begin(), img.end());
        int idx = K.index(img);
        if (idx < 0) throw std::invalid_argument("vertex permutation does not preserve the complex");
        X.act[p][static_cast<size_t>(g) * X.counts[p] + c] = {idx, s};
      }
  }
  return X;
}

ChainComplex GComplex::chain_complex() const {
  ChainComplex C(counts);
  C.d = d;
  return C;
}

bool GComplex::validate() const {
  for (size_t p = 0; p < counts.size(); ++p) {
    // group law on cells: (ab) c = a (b c), identity fixes
    for (int c = 0; c < counts[p]; ++c)
      if (act[p][c] != std::make_pair(c, 1)) return false;
    for (int a = 0; a < G.n; ++a)
      for (int b = 0; b < G.n; ++b)
        for (int c = 0; c < counts[p]; ++c) {
          auto [y, s1] = act[p][static_cast<size_t>(b) * counts[p] + c];
          auto [z, s2] = act[p][static_cast<size_t>(a) * counts[p] + y];
          if (act[p][static_cast<size_t>(G.mul(a, b)) * counts[p] + c] != std::make_pair(z, s1 * s2)) return false;
        }
  }
  // g d = d g
  for (size_t p = 1; p < counts.size(); ++p)
    for (int g = 0; g < G.n; ++g)
      for (int c = 0; c < counts[p]; ++c) {
        std::map<int, long long> lhs, rhs;
        for (auto& [f, v] : d[p].col[c]) {
          auto [fi, s] = act[p - 1][static_cast<size_t>(g) * counts[p - 1] + f];
          lhs[fi] += v * s;
        }
        auto [ci, s] = act[p][static_cast<size_t>(g) * counts[p] + c];
        for (auto& [f, v] : d[p].col[ci]) rhs[f] += v * s;
        std::erase_if(lhs, [](auto& kv) { return kv.second == 0; });
        std::erase_if(rhs, [](auto& kv) { return kv.second == 0; });
        if (lhs != rhs) return false;
      }
  return true;
}

bool GComplex::stabilizers_trivial() const {
  std::function<bool(int, int, int)> fixes = [&](int g, int p, int c) {
    if (act[p][static_cast<size_t>(g) * counts[p] + c] != std::make_pair(c, 1)) return false;
    if (p == 0) return true;
    for (auto& [f, v] : d[p].col[c])
      if (!fixes(g, p - 1, f)) return false;
    return true;
  };
  for (size_t p = 0; p < counts.size(); ++p)
    for (int c = 0; c < counts[p]; ++c)
      for (int g = 1; g < G.n; ++g)
        if (act[p][static_cast<size_t>(g) * counts[p] + c].first == c && !fixes(g, static_cast<int>(p), c)) return false;
  return true;
}

GComplex GComplex::subdivided() const {
  if (!simplicial) throw std::invalid_argument("subdivision needs a simplicial G-complex");
  std::vector<std::vector<int>> vertex_of;
  auto Kb = simplicial->barycentric(&vertex_of);
  std::map<std::vector<int>, int> vidx;
  for (size_t i = 0; i < vertex_of.size(); ++i) vidx[vertex_of[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> perm(G.n, std::vector<int>(vertex_of.size()));
  for (int g = 0; g < G.n; ++g)
    for (size_t i = 0; i < vertex_of.size(); ++i) {
      std::vector<int> img;
      for (int v : vertex_of[i]) img.push_back(vertex_perm[g][v]);
      std::sort(img.begin(), img.end());
      perm[g][i] = vidx.at(img);
    }
  return from_simplicial(G, Kb, perm);
}

GComplex GComplex::quotient(const std::vector<std::vector<bool>>& in_A) const {
  GComplex Q;
  Q.G = G;
  std::vector<std::vector<int>> idx(counts.size());
  for (size_t p = 0; p < counts.size(); ++p) {
    int k = 0;
    for (int c = 0; c < counts[p]; ++c) idx[p].push_back(in_A[p][c] ? -1 : k++);
    Q.counts.push_back(k);
  }
  for (size_t p = 0; p < counts.size(); ++p)
    for (int c = 0; c < counts[p]; ++c)
      for (int g = 0; g < G.n; ++g)
        if (in_A[p][c] != in_A[p][act[p][static_cast<size_t>(g) * counts[p] + c].first])
          throw std::invalid_argument("subcomplex is not G-stable");
  Q.d.resize(counts.size());
  Q.act.resize(counts.size());
  for (size_t p = 0; p < counts.size(); ++p) {
    Q.d[p] = SparseMatrix(p ? Q.counts[p - 1] : 0, Q.counts[p]);
    for (int c = 0; c < counts[p]; ++c) {
      if (idx[p][c] < 0) continue;
      if (p)
        for (auto& [f, v] : d[p].col[c])
          if (idx[p - 1][f] >= 0) Q.d[p].add(idx[p - 1][f], idx[p][c], v);
    }
    Q.d[p].finalize();
    Q.act[p].resize(static_cast<size_t>(G.n) * Q.counts[p]);
    for (int g = 0; g < G.n; ++g)
      for (int c = 0; c < counts[p]; ++c)
        if (idx[p][c] >= 0) {
          auto [img, s] = act[p][static_cast<size_t>(g) * counts[p] + c];
          Q.act[p][static_cast<size_t>(g) * Q.counts[p] + idx[p][c]] = {idx[p][img], s};
        }
  }
  return Q;
}

ChainComplex OrbitComplex::quotient_chains() const {
  std::vector<int> dims;
  for (auto& l : cells) dims.push_back(static_cast<int>(l.size()));
  ChainComplex C(dims);
  for (size_t p = 1; p < cells.size(); ++p) {
    for (size_t k = 0; k < cells[p].size(); ++k)
      for (auto& f : cells[p][k].faces) C.d[p].add(f.target, static_cast<int>(k), f.coeff);
    C.d[p].finalize();
  }
  return C;
}

OrbitComplex orbit_complex(const GComplex& X0) {
  bool sub = !X0.stabilizers_trivial();
  GComplex X = sub ? X0.subdivided() : X0;
  if (sub && !X.stabilizers_trivial()) throw std::logic_error("subdivision left a stabilizer acting nontrivially");
  const FiniteGroup& G = X.G;
  OrbitComplex O;
  O.subdivided = sub;
  O.cells.resize(X.counts.size());
  std::vector<std::vector<int>> orbit(X.counts.size()), trans(X.counts.size()), tsign(X.counts.size());
  std::vector<std::vector<int>> reps(X.counts.size());
  std::vector<std::vector<std::vector<int>>> stab_elems(X.counts.size());
  for (size_t p = 0; p < X.counts.size(); ++p) {
    int n = X.counts[p];
    orbit[p].assign(n, -1);
    trans[p].assign(n, 0);
    tsign[p].assign(n, 1);
    for (int c = 0; c < n; ++c) {
      if (orbit[p][c] >= 0) continue;
      int o = static_cast<int>(reps[p].size());
      reps[p].push_back(c);
      std::vector<int> st;
      for (int g = 0; g < G.n; ++g) {
        auto [img, s] = X.act[p][static_cast<size_t>(g) * n + c];
        if (img == c) st.push_back(g);
        if (orbit[p][img] < 0) {
          orbit[p][img] = o;
          trans[p][img] = g;
          tsign[p][img] = s;
        }
      }
      stab_elems[p].push_back(st);
      OrbitCell cell;
      cell.stab = G.subgroup(st);
      O.cells[p].push_back(cell);
    }
  }
  for (size_t p = 1; p < X.counts.size(); ++p)
    for (size_t o = 0; o < reps[p].size(); ++o) {
      int c = reps[p][o];
      auto& st = stab_elems[p][o];
      for (auto& [f, v] : X.d[p].col[c]) {
        int tau = orbit[p - 1][f];
        int g = trans[p - 1][f];
        std::map<int, int> pos;
        auto& stt = stab_elems[p - 1][tau];
        for (size_t i = 0; i < stt.size(); ++i) pos[stt[i]] = static_cast<int>(i);
        OrbitCell::Face face;
        face.target = tau;
        face.coeff = v * tsign[p - 1][f];
        for (int h : st) face.hom.push_back(pos.at(G.conj(g, h)));
        O.cells[p][o].faces.push_back(face);
      }
    }
  return O;
}

OrbitComplex sn_orbit_complex(const CrystGroup& g, int window, int q) {
  if (g.flavor != CrystFlavor::SN) throw std::invalid_argument("SN flavor required");
  auto Q = model_quotient(g, window);
  FiniteGroup M = FiniteGroup::torus_normalizer(q);
  int m = q - 1;
  std::vector<int> torus_elems(m);
  for (int i = 0; i < m; ++i) torus_elems[i] = i;
  FiniteGroup T = M.subgroup(torus_elems);
  OrbitComplex O;
  O.cells.resize(Q.cells.size());
  for (size_t d = 0; d < Q.cells.size(); ++d)
    for (auto& c : Q.cells[d]) {
      OrbitCell cell;
      cell.stab = c.stabilizer == 2 ? M : T;
      if (c.stabilizer == 2 && d > 0) throw std::logic_error("only vertices can be special");
      for (auto& t : c.terms) {
        OrbitCell::Face f;
        f.target = t.target;
        f.coeff = t.sign;
        // torus element i goes to i or -i; both stabilizers list the torus first
        for (int i = 0; i < m; ++i) f.hom.push_back(t.eps > 0 ? i : (m - i) % m);
        cell.faces.push_back(f);
      }
      O.cells[d].push_back(cell);
    }
  return O;
}

// ------------------------------------------------------------ lattice helpers

namespace {

IntMatrix hcat(const IntMatrix& A, const IntMatrix& B) {
  if (A.rows != B.rows) throw std::logic_error("hcat row mismatch");
  IntMatrix C(A.rows, A.cols + B.cols);
  for (int i = 0; i < A.rows; ++i) {
    for (int j = 0; j < A.cols; ++j) C(i, j) = A(i, j);
    for (int j = 0; j < B.cols; ++j) C(i, A.cols + j) = B(i, j);
  }
  return C;
}

IntMatrix scalar_identity(int n, long long s) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = static_cast<long>(s);
  return I;
}

// basis (columns) of the lattice spanned by the columns of M
IntMatrix column_basis(const IntMatrix& M) {
  if (M.cols == 0) return IntMatrix(M.rows, 0);
  IntMatrix H = hermite_rows(M.transpose());
  return H.transpose();
}

// kernel of M (columns); a map with no rows has the whole space as kernel
IntMatrix kernel_basis(const IntMatrix& M) {
  if (M.rows == 0) return IntMatrix::identity(M.cols);
  if (M.cols == 0) return IntMatrix(0, 0);
  return integer_kernel(M);
}

IntMatrix top_rows(const IntMatrix& M, int k) {
  IntMatrix T(k, M.cols);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < M.cols; ++j) T(i, j) = M(i, j);
  return T;
}

// coordinates in a lattice basis K (full column rank)
struct LatticeSolver {
  IntMatrix K;
  SNFResult S;
  explicit LatticeSolver(const IntMatrix& k) : K(k) {
    if (K.cols > 0) S = snf(K, true);
  }
  std::vector<mpz_class> solve(const std::vector<mpz_class>& b) const {
    int m = K.rows, k = K.cols;
    std::vector<mpz_class> y(k);
    if (k == 0) {
      for (auto& x : b)
        if (x != 0) throw std::logic_error("vector outside the lattice");
      return y;
    }
    std::vector<mpz_class> c(m);
    for (int i = 0; i < m; ++i) {
      mpz_class acc = 0;
      for (int j = 0; j < m; ++j)
        if (b[j] != 0) acc += S.U(i, j) * b[j];
      c[i] = acc;
    }
    std::vector<mpz_class> z(k);
    for (int i = 0; i < m; ++i) {
      if (i < S.rank()) {
        if (c[i] % S.factors[i] != 0) throw std::logic_error("vector outside the lattice");
        z[i] = c[i] / S.factors[i];
      } else if (c[i] != 0) {
        throw std::logic_error("vector outside the lattice");
      }
    }
    for (int i = 0; i < k; ++i) {
      mpz_class acc = 0;
      for (int j = 0; j < k; ++j)
        if (z[j] != 0) acc += S.V(i, j) * z[j];
      y[i] = acc;
    }
    return y;
  }
  IntMatrix solve_columns(const IntMatrix& B) const {
    IntMatrix Y(K.cols, B.cols);
    std::vector<mpz_class> b(B.rows);
    for (int j = 0; j < B.cols; ++j) {
      for (int i = 0; i < B.rows; ++i) b[i] = B(i, j);
      auto y = solve(b);
      for (int i = 0; i < K.cols; ++i) Y(i, j) = y[i];
    }
    return Y;
  }
};

// H(B) for A --f--> B --g--> C with B = Z^kB / relB and C = Z^kC / relC,
// where g f lands in relC. Returns the subquotient presentation in the
// coordinates of Z^kB.
Presented subquotient(int kB, const IntMatrix& relB, const IntMatrix& f, const IntMatrix& g, const IntMatrix& relC) {
  IntMatrix K;
  if (g.rows == 0) {
    K = IntMatrix::identity(kB);
  } else {
    IntMatrix A = hcat(g, relC);
    IntMatrix ker = kernel_basis(A);
    K = column_basis(top_rows(ker, kB));
  }
  Presented P;
  P.gens = K;
  IntMatrix img = f.cols ? hcat(f, relB) : relB;
  LatticeSolver sol(K);
  P.rel = img.cols ? sol.solve_columns(img) : IntMatrix(K.cols, 0);
  return P;
}

}  // namespace

FgAbGroup Presented::group() const {
  if (gens.cols == 0) return FgAbGroup{};
  if (rel.cols == 0) {
    FgAbGroup g;
    g.free_rank = gens.cols;
    return g;
  }
  return FgAbGroup::cokernel(rel);
}

// ------------------------------------------------------------------ E1 page

namespace {

constexpr long long kE1Cap = 20000;

struct ColumnHomology {
  Presented pres;
  std::shared_ptr<LatticeSolver> solver;  // coordinates of cycles in gens
};

ColumnHomology bar_column_homology(const FiniteGroup& G, int q, long long ell) {
  if (bar_rank(G, q + 1) > kE1Cap) throw std::length_error("bar complex too large for the E1 page");
  int m = static_cast<int>(bar_rank(G, q));
  IntMatrix dq = bar_boundary(G, q).dense();
  IntMatrix dq1 = bar_boundary(G, q + 1).dense();
  ColumnHomology out;
  IntMatrix K;
  if (m == 0) {
    K = IntMatrix(0, 0);
  } else if (ell == 0) {
    K = kernel_basis(dq);
  } else {
    IntMatrix A = hcat(dq, scalar_identity(dq.rows, ell));
    K = column_basis(top_rows(kernel_basis(A), m));
  }
  IntMatrix bnd = ell ? hcat(dq1, scalar_identity(m, ell)) : dq1;
  bnd = column_basis(bnd);
  out.solver = std::make_shared<LatticeSolver>(K);
  out.pres.gens = K;
  out.pres.rel = bnd.cols ? out.solver->solve_columns(bnd) : IntMatrix(K.cols, 0);
  return out;
}

std::vector<mpz_class> push_forward(const FiniteGroup& Gs, const FiniteGroup& Gt, const std::vector<int>& hom, int q,
                                    const IntMatrix& gens, int col) {
  long long mt = bar_rank(Gt, q);
  std::vector<mpz_class> w(static_cast<size_t>(mt));
  if (q == 0) {
    if (mt) w[0] = gens(0, col);
    return w;
  }
  long long ms = bar_rank(Gs, q);
  for (long long x = 0; x < ms; ++x) {
    const mpz_class& v = gens(static_cast<int>(x), col);
    if (v == 0) continue;
    long long r = x;
    std::vector<int> t(q);
    for (int i = q - 1; i >= 0; --i) {
      t[i] = static_cast<int>(r % (Gs.n - 1)) + 1;
      r /= (Gs.n - 1);
    }
    long long idx = 0;
    bool degenerate = false;
    for (int g : t) {
      int h = hom[g];
      if (h == 0) {
        degenerate = true;
        break;
      }
      idx = idx * (Gt.n - 1) + (h - 1);
    }
    if (!degenerate) w[idx] += v;
  }
  return w;
}

}  // namespace

FgAbGroup E1Page::group(int p, int q) const {
  auto g = entry[p][q].group();
  return coeff.kind == Coeff::Zhalf ? g.without_two_torsion() : g;
}

bool E1Page::d1_squares_to_zero() const {
  for (int p = 2; p <= pmax; ++p)
    for (int q = 0; q <= qmax; ++q) {
      IntMatrix M = d1[p - 1][q] * d1[p][q];
      const IntMatrix& rel = entry[p - 2][q].rel;
      std::vector<mpz_class> b(M.rows), x;
      for (int j = 0; j < M.cols; ++j) {
        for (int i = 0; i < M.rows; ++i) b[i] = M(i, j);
        bool zero = std::all_of(b.begin(), b.end(), [](auto& v) { return v == 0; });
        if (zero) continue;
        if (rel.cols == 0 || !integer_solve(rel, b, x)) return false;
      }
    }
  return true;
}

std::string E1Page::csv() const {
  std::ostringstream os;
  os << "p,q,group\n";
  for (int p = 0; p <= pmax; ++p)
    for (int q = 0; q <= qmax; ++q) os << p << "," << q << "," << group(p, q).str() << "\n";
  return os.str();
}

E1Page e1_page(const OrbitComplex& X, int qmax, Coeff coeff) {
  if (coeff.kind == Coeff::Zmod && coeff.ell < 2) throw std::invalid_argument("bad modulus");
  long long ell = coeff.kind == Coeff::Zmod ? coeff.ell : 0;
  E1Page E;
  E.coeff = coeff;
  E.pmax = static_cast<int>(X.cells.size()) - 1;
  E.qmax = qmax;
  E.entry.assign(E.pmax + 1, std::vector<Presented>(qmax + 1));
  E.d1.assign(E.pmax + 1, std::vector<IntMatrix>(qmax + 1));
  std::map<std::pair<std::vector<int>, int>, ColumnHomology> cache;
  auto column = [&](const FiniteGroup& G, int q) -> ColumnHomology& {
    auto key = std::make_pair(G.table, q);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, bar_column_homology(G, q, ell)).first;
    return it->second;
  };
  std::vector<std::vector<std::vector<int>>> offset(E.pmax + 1, std::vector<std::vector<int>>(qmax + 1));
  for (int p = 0; p <= E.pmax; ++p)
    for (int q = 0; q <= qmax; ++q) {
      int amb = 0, k = 0, r = 0;
      for (auto& c : X.cells[p]) {
        auto& h = column(c.stab, q);
        offset[p][q].push_back(k);
        amb += h.pres.gens.rows;
        k += h.pres.k();
        r += h.pres.rel.cols;
      }
      Presented P;
      P.gens = IntMatrix(amb, k);
      P.rel = IntMatrix(k, r);
      int ao = 0, ko = 0, ro = 0;
      for (auto& c : X.cells[p]) {
        auto& h = column(c.stab, q);
        for (int i = 0; i < h.pres.gens.rows; ++i)
          for (int j = 0; j < h.pres.k(); ++j) P.gens(ao + i, ko + j) = h.pres.gens(i, j);
        for (int i = 0; i < h.pres.k(); ++i)
          for (int j = 0; j < h.pres.rel.cols; ++j) P.rel(ko + i, ro + j) = h.pres.rel(i, j);
        ao += h.pres.gens.rows;
        ko += h.pres.k();
        ro += h.pres.rel.cols;
      }
      E.entry[p][q] = P;
    }
  for (int p = 1; p <= E.pmax; ++p)
    for (int q = 0; q <= qmax; ++q) {
      IntMatrix D(E.entry[p - 1][q].k(), E.entry[p][q].k());
      for (size_t s = 0; s < X.cells[p].size(); ++s) {
        auto& cell = X.cells[p][s];
        auto& hs = column(cell.stab, q);
        for (auto& f : cell.faces) {
          auto& tcell = X.cells[p - 1][f.target];
          auto& ht = column(tcell.stab, q);
          for (int j = 0; j < hs.pres.k(); ++j) {
            auto w = push_forward(cell.stab, tcell.stab, f.hom, q, hs.pres.gens, j);
            auto y = ht.solver->solve(w);
            for (int i = 0; i < ht.pres.k(); ++i)
              D(offset[p - 1][q][f.target] + i, offset[p][q][s] + j) += y[i] * static_cast<long>(f.coeff);
          }
        }
      }
      E.d1[p][q] = D;
    }
  return E;
}

E1Page e1_page(const GComplex& X, int qmax, Coeff coeff) { return e1_page(orbit_complex(X), qmax, coeff); }

// ------------------------------------------------------------------ E2 page

std::string E2Result::csv() const {
  std::ostringstream os;
  os << "p,q,group\n";
  for (size_t p = 0; p < e2.size(); ++p)
    for (size_t q = 0; q < e2[p].size(); ++q) os << p << "," << q << "," << e2[p][q].str() << "\n";
  return os.str();
}

E2Result e2_and_total(const E1Page& page) {
  E2Result R;
  int P = page.pmax, Q = page.qmax;
  R.e2.assign(P + 1, std::vector<FgAbGroup>(Q + 1));
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q) {
      const Presented& B = page.entry[p][q];
      IntMatrix f = p < P ? page.d1[p + 1][q] : IntMatrix(B.k(), 0);
      IntMatrix g = p > 0 ? page.d1[p][q] : IntMatrix(0, B.k());
      IntMatrix relC = p > 0 ? page.entry[p - 1][q].rel : IntMatrix(0, 0);
      auto H = subquotient(B.k(), B.rel, f, g, relC).group();
      R.e2[p][q] = page.coeff.kind == Coeff::Zhalf ? H.without_two_torsion() : H;
    }
  std::vector<int> cols, rows;
  for (int p = 0; p <= P; ++p)
    for (int q = 0; q <= Q; ++q)
      if (!R.e2[p][q].is_zero()) cols.push_back(p), rows.push_back(q);
  std::sort(cols.begin(), cols.end());
  cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  bool two_cols = cols.size() <= 1 || (cols.size() == 2 && cols[1] == cols[0] + 1);
  bool one_row = rows.size() <= 1 && (rows.empty() || rows[0] == 0);
  R.degenerate = two_cols || one_row;
  if (!R.degenerate) {
    R.notes.push_back("possible higher differentials");
    return R;
  }
  R.notes.push_back(two_cols ? "concentrated in two adjacent columns" : "concentrated in the row q = 0");
  // total degree n is complete only while every (p, n - p) lies on the page
  for (int n = 0; n <= Q; ++n) {
    FgAbGroup tot;
    int pieces = 0;
    bool torsion = false;
    for (int p = 0; p <= std::min(n, P); ++p) {
      auto& x = R.e2[p][n - p];
      if (x.is_zero()) continue;
      ++pieces;
      torsion = torsion || !x.torsion.empty();
      tot = tot + x;
    }
    if (pieces > 1 && torsion && page.coeff.kind != Coeff::Zmod)
      R.notes.push_back("degree " + std::to_string(n) + ": extension undetermined, direct sum shown");
    R.total.push_back(tot);
  }
  return R;
}

// ------------------------------------------------------- total complex oracle

std::vector<FgAbGroup> equivariant_homology(const GComplex& X, int nmax, Coeff coeff) {
  const FiniteGroup& G = X.G;
  int P = X.dim();
  // blocks of Tot_n: (p, q = n - p)
  auto block_sizes = [&](int n) {
    std::vector<long long> off(P + 2, 0);
    for (int p = 0; p <= P; ++p) {
      int q = n - p;
      long long sz = q >= 0 ? X.counts[p] * bar_rank(G, q) : 0;
      off[p + 1] = off[p] + sz;
    }
    return off;
  };
  auto differential = [&](int n) {
    auto src = block_sizes(n), dst = block_sizes(n - 1);
    if (src[P + 1] > 2000000) throw std::length_error("total complex too large");
    SparseMatrix D(static_cast<int>(n >= 1 ? dst[P + 1] : 0), static_cast<int>(src[P + 1]));
    if (n == 0) {
      D.finalize();
      return D;
    }
    for (int p = 0; p <= P; ++p) {
      int q = n - p;
      if (q < 0) continue;
      long long nt = bar_rank(G, q);
      for (int c = 0; c < X.counts[p]; ++c)
        for (long long t = 0; t < nt; ++t) {
          int col = static_cast<int>(src[p] + c * nt + t);
          // vertical: boundary of the cell
          if (p >= 1) {
            long long nt2 = bar_rank(G, q);
            for (auto& [f, v] : X.d[p].col[c]) D.add(static_cast<int>(dst[p - 1] + f * nt2 + t), col, v);
          }
          if (q == 0) continue;
          int sg = p % 2 ? -1 : 1;
          std::vector<int> tup(q);
          long long r = t;
          for (int i = q - 1; i >= 0; --i) {
            tup[i] = static_cast<int>(r % (G.n - 1)) + 1;
            r /= (G.n - 1);
          }
          long long nq = bar_rank(G, q - 1);
          auto enc = [&](const std::vector<int>& u) {
            long long x = 0;
            for (int g : u) x = x * (G.n - 1) + (g - 1);
            return x;
          };
          // c . g1 = g1^-1 c
          auto [c2, s2] = X.act[p][static_cast<size_t>(G.inv(tup[0])) * X.counts[p] + c];
          D.add(static_cast<int>(dst[p] + c2 * nq + enc(std::vector<int>(tup.begin() + 1, tup.end()))), col, sg * s2);
          for (int i = 0; i + 1 < q; ++i) {
            int m = G.mul(tup[i], tup[i + 1]);
            if (m == 0) continue;
            std::vector<int> u;
            for (int j = 0; j < q; ++j) {
              if (j == i + 1) continue;
              u.push_back(j == i ? m : tup[j]);
            }
            D.add(static_cast<int>(dst[p] + c * nq + enc(u)), col, sg * ((i + 1) % 2 ? -1 : 1));
          }
          D.add(static_cast<int>(dst[p] + c * nq + enc(std::vector<int>(tup.begin(), tup.end() - 1))), col,
                sg * (q % 2 ? -1 : 1));
        }
    }
    D.finalize();
    return D;
  };
  std::vector<FgAbGroup> out;
  SparseMatrix cur = differential(0);
  for (int n = 0; n <= nmax; ++n) {
    SparseMatrix next = differential(n + 1);
    out.push_back(homology_of_pair(cur, next, coeff));
    cur = std::move(next);
  }
  return out;
}

// ---------------------------------------------------- short exact sequences

namespace {

using Rows = std::vector<FqRow>;

int span_dim(const Fq& F, const Rows& v, int n) { return v.empty() ? 0 : fq_rank(F, v, n); }

Rows concat(Rows a, const Rows& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

SesReport chain_ses_check(const ChainComplex& X, const std::vector<std::vector<bool>>& in_A,
                          const std::vector<long long>& primes) {
  SesReport R;
  R.primes = primes;
  int top = static_cast<int>(X.d.size()) - 1;
  std::vector<int> dims;
  for (int p = 0; p <= top; ++p) dims.push_back(X.d[p].cols);
  R.subcomplex = true;
  for (int p = 1; p <= top; ++p)
    for (int c = 0; c < dims[p]; ++c)
      if (in_A[p][c])
        for (auto& [f, v] : X.d[p].col[c])
          if (v && !in_A[p - 1][f]) R.subcomplex = false;
  if (!R.subcomplex) throw std::invalid_argument("A is not a subcomplex");
  bool emptyA = true, fullA = true;
  for (int p = 0; p <= top; ++p)
    for (int c = 0; c < dims[p]; ++c) (in_A[p][c] ? emptyA : fullA) = false;
  if (emptyA) R.lines.push_back("A is empty: relative chains are C(X), no augmentation");
  if (fullA) R.lines.push_back("A = X: relative chains vanish");
  // degreewise: the quotient differential is well defined and squares to zero
  R.short_exact = X.is_complex();
  for (int p = 0; p <= top; ++p) {
    int a = 0;
    for (int c = 0; c < dims[p]; ++c) a += in_A[p][c];
    R.lines.push_back("degree " + std::to_string(p) + ": rank C(A) " + std::to_string(a) + " + rank C(X,A) " +
                      std::to_string(dims[p] - a) + " = " + std::to_string(dims[p]));
  }
  R.long_exact = true;
  for (long long ell : primes) {
    const Fq& F = Fq::get(static_cast<int>(ell));
    auto red = [&](long long v) { return static_cast<int>(((v % ell) + ell) % ell); };
    // d_p as rows over F (C_p -> C_{p-1}), and images of basis vectors
    auto equations = [&](int p, bool only_outside_A) {
      Rows rows;
      if (p == 0) return rows;
      for (int i = 0; i < dims[p - 1]; ++i) {
        if (only_outside_A && in_A[p - 1][i]) continue;
        rows.push_back(FqRow(dims[p], 0));
      }
      std::vector<int> rowpos(dims[p - 1], -1);
      int k = 0;
      for (int i = 0; i < dims[p - 1]; ++i)
        if (!(only_outside_A && in_A[p - 1][i])) rowpos[i] = k++;
      for (int c = 0; c < dims[p]; ++c)
        for (auto& [f, v] : X.d[p].col[c])
          if (rowpos[f] >= 0) rows[rowpos[f]][c] = F.add(rows[rowpos[f]][c], red(v));
      return rows;
    };
    auto apply_d = [&](int p, const FqRow& x) {
      FqRow y(dims[p - 1], 0);
      for (int c = 0; c < dims[p]; ++c)
        if (x[c])
          for (auto& [f, v] : X.d[p].col[c]) y[f] = F.add(y[f], F.mul(x[c], red(v)));
      return y;
    };
    auto unit = [&](int p, int c) {
      FqRow e(dims[p], 0);
      e[c] = 1;
      return e;
    };
    std::vector<Rows> ZX(top + 2), BX(top + 2), CA(top + 2), ZA(top + 2), BA(top + 2), Zrel(top + 2);
    for (int p = 0; p <= top; ++p) {
      int n = dims[p];
      ZX[p] = p ? fq_nullspace(F, equations(p, false), n) : Rows{};
      if (p == 0)
        for (int c = 0; c < n; ++c) ZX[p].push_back(unit(0, c));
      Zrel[p] = p ? fq_nullspace(F, equations(p, true), n) : ZX[p];
      for (int c = 0; c < n; ++c)
        if (in_A[p][c]) CA[p].push_back(unit(p, c));
      for (auto& z : ZX[p]) {
        bool inside = true;
        for (int c = 0; c < n; ++c)
          if (z[c] && !in_A[p][c]) inside = false;
        (void)inside;
      }
    }
    for (int p = 0; p <= top; ++p) {
      int n = dims[p];
      // cycles of A: kernel of d restricted to A columns
      Rows eq = equations(p, false);
      Rows za;
      if (p == 0) {
        za = CA[p];
      } else {
        std::vector<int> acols;
        for (int c = 0; c < n; ++c)
          if (in_A[p][c]) acols.push_back(c);
        Rows eqA;
        for (auto& r : eq) {
          FqRow x;
          for (int c : acols) x.push_back(r[c]);
          eqA.push_back(x);
        }
        for (auto& v : fq_nullspace(F, eqA, static_cast<int>(acols.size()))) {
          FqRow x(n, 0);
          for (size_t j = 0; j < acols.size(); ++j) x[acols[j]] = v[j];
          za.push_back(x);
        }
      }
      ZA[p] = za;
      if (p < top) {
        for (int c = 0; c < dims[p + 1]; ++c) {
          auto img = apply_d(p + 1, unit(p + 1, c));
          BX[p].push_back(img);
          if (in_A[p + 1][c]) BA[p].push_back(img);
        }
      }
    }
    auto dimH_X = [&](int p) { return span_dim(F, ZX[p], dims[p]) - span_dim(F, BX[p], dims[p]); };
    auto dimH_A = [&](int p) { return span_dim(F, ZA[p], dims[p]) - span_dim(F, BA[p], dims[p]); };
    auto dimH_rel = [&](int p) {
      return span_dim(F, Zrel[p], dims[p]) - span_dim(F, concat(BX[p], CA[p]), dims[p]);
    };
    auto rank_i = [&](int p) {
      return span_dim(F, concat(ZA[p], BX[p]), dims[p]) - span_dim(F, BX[p], dims[p]);
    };
    auto rank_j = [&](int p) {
      return span_dim(F, concat(ZX[p], CA[p]), dims[p]) - span_dim(F, concat(BX[p], CA[p]), dims[p]);
    };
    auto rank_del = [&](int p) {  // H_p(X,A) -> H_{p-1}(A)
      if (p == 0 || p > top) return 0;
      Rows imgs;
      for (auto& z : Zrel[p]) imgs.push_back(apply_d(p, z));
      return span_dim(F, imgs, dims[p - 1]) - span_dim(F, BA[p - 1], dims[p - 1]);
    };
    bool ok = true;
    for (int p = 0; p <= top; ++p) {
      bool a = rank_del(p + 1) + rank_i(p) == dimH_A(p);
      bool b = rank_i(p) + rank_j(p) == dimH_X(p);
      bool c = rank_j(p) + rank_del(p) == dimH_rel(p);
      ok = ok && a && b && c;
      R.lines.push_back("F_" + std::to_string(ell) + " degree " + std::to_string(p) + ": dim H(A) " +
                        std::to_string(dimH_A(p)) + ", H(X) " + std::to_string(dimH_X(p)) + ", H(X,A) " +
                        std::to_string(dimH_rel(p)) + (a && b && c ? ", exact" : ", NOT exact"));
    }
    R.long_exact = R.long_exact && ok;
  }
  return R;
}

}  // namespace btq
