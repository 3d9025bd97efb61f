#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <regex>
#include <stdexcept>

#include "btq/equivariant.h"
#include "btq/fq.h"

namespace btq {

namespace {

FiniteGroup finish(int n, std::vector<int> table, std::string name) {
  FiniteGroup G;
  G.n = n;
  G.table = std::move(table);
  G.name = std::move(name);
  G.inverse.assign(n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (G.table[a * n + b] == 0) G.inverse[a] = b;
  return G;
}

// group of 2x2 matrices over F_q closed under multiplication, identity first
FiniteGroup matrix_group(int q, const std::function<bool(const std::array<int, 4>&)>& keep, const std::string& name) {
  const Fq& F = Fq::get(q);
  std::vector<std::array<int, 4>> els;
  std::array<int, 4> id{1, 0, 0, 1};
  els.push_back(id);
  for (int a = 0; a < q; ++a)
    for (int b = 0; b < q; ++b)
      for (int c = 0; c < q; ++c)
        for (int d = 0; d < q; ++d) {
          std::array<int, 4> m{a, b, c, d};
          if (m == id) continue;
          if (F.sub(F.mul(a, d), F.mul(b, c)) == 0) continue;
          if (keep(m)) els.push_back(m);
        }
  std::map<std::array<int, 4>, int> idx;
  for (size_t i = 0; i < els.size(); ++i) idx[els[i]] = static_cast<int>(i);
  int n = static_cast<int>(els.size());
  std::vector<int> t(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto& x = els[i];
      auto& y = els[j];
      std::array<int, 4> z{F.add(F.mul(x[0], y[0]), F.mul(x[1], y[2])), F.add(F.mul(x[0], y[1]), F.mul(x[1], y[3])),
                           F.add(F.mul(x[2], y[0]), F.mul(x[3], y[2])), F.add(F.mul(x[2], y[1]), F.mul(x[3], y[3]))};
      auto it = idx.find(z);
      if (it == idx.end()) throw std::logic_error("matrix group not closed");
      t[i * n + j] = it->second;
    }
  auto G = finish(n, t, name);
  G.field = q;
  G.matrices = els;
  return G;
}

}  // namespace

bool FiniteGroup::is_abelian() const {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < a; ++b)
      if (mul(a, b) != mul(b, a)) return false;
  return true;
}

int FiniteGroup::element_order(int a) const {
  int k = 1;
  for (int x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup{}; }

FiniteGroup FiniteGroup::cyclic(int m) {
  if (m < 1) throw std::invalid_argument("cyclic order must be positive");
  std::vector<int> t(m * m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) t[a * m + b] = (a + b) % m;
  auto G = finish(m, t, "C" + std::to_string(m));
  G.cyclic_order = m;
  return G;
}

FiniteGroup FiniteGroup::dihedral(int m) {
  // (a, e) with a in Z/m, e in {0, 1}; (a, e)(b, f) = (a + (-1)^e b, e + f)
  int n = 2 * m;
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a = x % m, e = x / m, b = y % m, f = y / m;
      int c = ((a + (e ? -b : b)) % m + m) % m;
      t[x * n + y] = c + m * ((e + f) % 2);
    }
  return finish(n, t, "D" + std::to_string(m));
}

FiniteGroup FiniteGroup::monomial_sl2(int q) {
  const Fq& F = Fq::get(q);
  return matrix_group(
      q,
      [&](const std::array<int, 4>& m) {
        bool diag = m[1] == 0 && m[2] == 0, anti = m[0] == 0 && m[3] == 0;
        return (diag || anti) && F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2])) == 1;
      },
      "M(" + std::to_string(q) + ")");
}

FiniteGroup FiniteGroup::torus_normalizer(int q) {
  int m = q - 1;
  if (m < 1) throw std::invalid_argument("bad field size");
  int z = q % 2 ? m / 2 : 0;
  int n = 2 * m;
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int i = x % m, e = x / m, j = y % m, f = y / m;
      int k = ((i + (e ? -j : j) + (e && f ? z : 0)) % m + m) % m;
      t[x * n + y] = k + m * (e ^ f);
    }
  return finish(n, t, "M(" + std::to_string(q) + ")");
}

FiniteGroup FiniteGroup::gl2(int q) {
  if (q > 5) throw std::invalid_argument("GL2 tables only for q <= 5");
  return matrix_group(q, [](const std::array<int, 4>&) { return true; }, "GL2(" + std::to_string(q) + ")");
}

FiniteGroup FiniteGroup::sl2(int q) {
  if (q > 5) throw std::invalid_argument("SL2 tables only for q <= 5");
  const Fq& F = Fq::get(q);
  return matrix_group(
      q, [&](const std::array<int, 4>& m) { return F.sub(F.mul(m[0], m[3]), F.mul(m[1], m[2])) == 1; },
      "SL2(" + std::to_string(q) + ")");
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  int n = a.n * b.n;
  std::vector<int> t(n * n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) t[x * n + y] = a.mul(x / b.n, y / b.n) * b.n + b.mul(x % b.n, y % b.n);
  return finish(n, t, a.name + "x" + b.name);
}

FiniteGroup FiniteGroup::from_table(const std::vector<std::vector<int>>& t, const std::string& name) {
  int n = static_cast<int>(t.size());
  if (n < 1 || n > 32) throw std::invalid_argument("table groups must have order 1..32");
  std::vector<int> flat;
  for (auto& row : t) {
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("table must be square");
    for (int x : row) {
      if (x < 0 || x >= n) throw std::invalid_argument("table entry out of range");
      flat.push_back(x);
    }
  }
  for (int a = 0; a < n; ++a)
    if (flat[a] != a || flat[a * n] != a) throw std::invalid_argument("element 0 must be the identity");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (flat[flat[a * n + b] * n + c] != flat[a * n + flat[b * n + c]])
          throw std::invalid_argument("table is not associative");
  auto G = finish(n, flat, name);
  for (int a = 0; a < n; ++a)
    if (G.inverse[a] < 0 || G.mul(G.inverse[a], a) != 0) throw std::invalid_argument("table lacks inverses");
  return G;
}

FiniteGroup FiniteGroup::parse(const std::string& name) {
  std::smatch m;
  if (name == "1") return trivial();
  if (std::regex_match(name, m, std::regex(R"(C(\d+))"))) return cyclic(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(D(\d+))"))) return dihedral(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(SL2\((\d+)\))"))) return sl2(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(GL2\((\d+)\))"))) return gl2(std::stoi(m[1]));
  if (std::regex_match(name, m, std::regex(R"(M\((\d+)\))"))) return monomial_sl2(std::stoi(m[1]));
  throw std::invalid_argument("unknown group: " + name);
}

FiniteGroup FiniteGroup::subgroup(const std::vector<int>& elems) const {
  if (elems.empty() || elems[0] != 0) throw std::invalid_argument("subgroup list must start with the identity");
  std::map<int, int> pos;
  for (size_t i = 0; i < elems.size(); ++i) pos[elems[i]] = static_cast<int>(i);
  int k = static_cast<int>(elems.size());
  std::vector<int> t(k * k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      auto it = pos.find(mul(elems[i], elems[j]));
      if (it == pos.end()) throw std::invalid_argument("subgroup not closed");
      t[i * k + j] = it->second;
    }
  auto H = finish(k, t, "sub(" + name + ")");
  if (k == 1) H.name = "1";
  // cyclic subgroups keep the closed form
  for (int i = 0; i < k; ++i)
    if (H.element_order(i) == k) {
      H.cyclic_order = k;
      H.name = "C" + std::to_string(k);
      break;
    }
  return H;
}

long long bar_rank(const FiniteGroup& G, int k) {
  long long r = 1;
  for (int i = 0; i < k; ++i) r *= G.n - 1;
  return r;
}

namespace {

// tuple of non-identity elements <-> index base (n - 1), first entry most significant
long long encode(const std::vector<int>& t, int n) {
  long long x = 0;
  for (int g : t) x = x * (n - 1) + (g - 1);
  return x;
}

std::vector<int> decode(long long x, int k, int n) {
  std::vector<int> t(k);
  for (int i = k - 1; i >= 0; --i) {
    t[i] = static_cast<int>(x % (n - 1)) + 1;
    x /= (n - 1);
  }
  return t;
}

}  // namespace

SparseMatrix bar_boundary(const FiniteGroup& G, int k) {
  long long rows = k >= 1 ? bar_rank(G, k - 1) : 0, cols = bar_rank(G, k);
  SparseMatrix M(static_cast<int>(rows), static_cast<int>(cols));
  if (k <= 1 || G.n == 1) {
    M.finalize();
    return M;
  }
  for (long long c = 0; c < cols; ++c) {
    auto t = decode(c, k, G.n);
    // trivial coefficients: the first face drops g_1
    M.add(static_cast<int>(encode(std::vector<int>(t.begin() + 1, t.end()), G.n)), static_cast<int>(c), 1);
    for (int i = 0; i + 1 < k; ++i) {
      int p = G.mul(t[i], t[i + 1]);
      if (p == 0) continue;
      std::vector<int> u;
      for (int j = 0; j < k; ++j) {
        if (j == i + 1) continue;
        u.push_back(j == i ? p : t[j]);
      }
      M.add(static_cast<int>(encode(u, G.n)), static_cast<int>(c), (i + 1) % 2 ? -1 : 1);
    }
    M.add(static_cast<int>(encode(std::vector<int>(t.begin(), t.end() - 1), G.n)), static_cast<int>(c), k % 2 ? -1 : 1);
  }
  M.finalize();
  return M;
}

constexpr long long kBarCap = 400000;

FgAbGroup group_homology_bar(const FiniteGroup& G, int n, Coeff coeff) {
  if (n < 0) return FgAbGroup{};
  if (bar_rank(G, n + 1) > kBarCap)
    throw std::length_error("bar complex too large for H_" + std::to_string(n) + " of a group of order " +
                            std::to_string(G.n));
  return homology_of_pair(bar_boundary(G, n), bar_boundary(G, n + 1), coeff);
}

FgAbGroup group_homology(const FiniteGroup& G, int n, Coeff coeff) {
  if (G.cyclic_order == 0 || n < 0) return group_homology_bar(G, n, coeff);
  long long m = G.cyclic_order;
  auto cyc = [](long long k) {
    FgAbGroup g;
    if (k > 1) g.torsion = {k};
    return g;
  };
  FgAbGroup Z;
  Z.free_rank = 1;
  switch (coeff.kind) {
    case Coeff::Z:
      if (n == 0) return Z;
      return n % 2 ? cyc(m) : FgAbGroup{};
    case Coeff::Zhalf:
      if (n == 0) return Z;
      return n % 2 ? cyc(m).without_two_torsion() : FgAbGroup{};
    case Coeff::Zmod:
      if (n == 0) return cyc(coeff.ell);
      return cyc(std::gcd(m, coeff.ell));
  }
  return {};
}

}  // namespace btq
