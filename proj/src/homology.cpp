#include "btq/homology.h"

#include <algorithm>
#include <stdexcept>

namespace btq {

FgAbGroup FgAbGroup::from_invariants(int free_rank, const std::vector<mpz_class>& factors) {
  FgAbGroup g;
  g.free_rank = free_rank;
  for (auto& f : factors) {
    mpz_class a = abs(f);
    if (a == 1) continue;
    if (a == 0) throw std::invalid_argument("zero torsion factor");
    if (!a.fits_slong_p()) throw std::overflow_error("torsion factor too large");
    g.torsion.push_back(a.get_si());
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

FgAbGroup FgAbGroup::cokernel(const IntMatrix& M) {
  auto r = snf(M);
  return from_invariants(M.rows - r.rank(), r.factors);
}

long long FgAbGroup::order() const {
  if (free_rank) throw std::domain_error("infinite group has no finite order");
  long long o = 1;
  for (auto t : torsion) o *= t;
  return o;
}

long long FgAbGroup::two_torsion_count() const {
  if (free_rank) throw std::domain_error("infinite group");
  long long c = 1;
  for (auto t : torsion)
    if (t % 2 == 0) c *= 2;
  return c;
}

FgAbGroup FgAbGroup::without_two_torsion() const {
  FgAbGroup g;
  g.free_rank = free_rank;
  for (auto t : torsion) {
    while (t % 2 == 0) t /= 2;
    if (t > 1) g.torsion.push_back(t);
  }
  std::sort(g.torsion.begin(), g.torsion.end());
  return g;
}

FgAbGroup FgAbGroup::operator+(const FgAbGroup& o) const {
  // recombine into invariant-factor form via SNF of the diagonal
  std::vector<long long> all = torsion;
  all.insert(all.end(), o.torsion.begin(), o.torsion.end());
  IntMatrix D(static_cast<int>(all.size()), static_cast<int>(all.size()));
  for (size_t i = 0; i < all.size(); ++i) D(static_cast<int>(i), static_cast<int>(i)) = static_cast<long>(all[i]);
  return from_invariants(free_rank + o.free_rank, snf(D).factors);
}

std::string FgAbGroup::str() const {
  if (is_zero()) return "0";
  std::string s;
  if (free_rank) s = free_rank == 1 ? "Z" : "Z^" + std::to_string(free_rank);
  for (auto t : torsion) s += (s.empty() ? "" : " + ") + ("Z/" + std::to_string(t));
  return s;
}

Coeff Coeff::parse(const std::string& s) {
  if (s == "Z" || s == "z") return integers();
  if (s == "Z[1/2]" || s == "Zhalf" || s == "half") return half();
  if (s.rfind("Z/", 0) == 0 || s.rfind("z/", 0) == 0) {
    long long l = std::stoll(s.substr(2));
    if (l < 2) throw std::invalid_argument("bad coefficient modulus");
    return mod(l);
  }
  throw std::invalid_argument("unknown coefficient ring: " + s);
}

std::string Coeff::str() const {
  switch (kind) {
    case Z: return "Z";
    case Zhalf: return "Z[1/2]";
    default: return "Z/" + std::to_string(ell);
  }
}

static bool prime(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

FgAbGroup homology_of_pair(const SparseMatrix& dn, const SparseMatrix& dn1, Coeff coeff) {
  if (dn.cols != dn1.rows) throw std::invalid_argument("boundary maps have incompatible shapes");
  if (dn.rows > 0 && dn1.cols > 0 && !(dn * dn1).is_zero()) throw std::domain_error("not a complex");
  int n = dn.cols;
  if (coeff.kind == Coeff::Zmod) {
    if (!prime(coeff.ell)) throw std::invalid_argument("Z/l coefficients need l prime");
    int dim = n - rank_mod_p(dn, coeff.ell) - rank_mod_p(dn1, coeff.ell);
    FgAbGroup g;
    g.torsion.assign(dim, coeff.ell);
    return g;
  }
  int r = rank_Q(dn);
  auto f = snf_invariants(dn1);
  FgAbGroup g = FgAbGroup::from_invariants(n - r - static_cast<int>(f.size()), f);
  if (coeff.kind == Coeff::Zhalf) g = g.without_two_torsion();
  return g;
}

FgAbGroup homology_of_pair(const IntMatrix& dn, const IntMatrix& dn1, Coeff coeff) {
  return homology_of_pair(SparseMatrix::from_dense(dn), SparseMatrix::from_dense(dn1), coeff);
}

ChainComplex::ChainComplex(std::vector<int> dd) : dims(std::move(dd)) {
  for (size_t n = 0; n < dims.size(); ++n) d.emplace_back(n == 0 ? 0 : dims[n - 1], dims[n]);
}

SparseMatrix ChainComplex::boundary_or_zero(int n) const {
  if (n >= 0 && n <= top()) return d[n];
  if (n == top() + 1) return SparseMatrix(dims.empty() ? 0 : dims.back(), 0);
  return SparseMatrix(0, 0);
}

bool ChainComplex::is_complex() const {
  for (int n = 2; n <= top(); ++n)
    if (!(d[n - 1] * d[n]).is_zero()) return false;
  return true;
}

FgAbGroup ChainComplex::homology(int n, Coeff coeff) const {
  if (n < 0 || n > top()) return FgAbGroup{};
  return homology_of_pair(boundary_or_zero(n), boundary_or_zero(n + 1), coeff);
}

std::vector<FgAbGroup> ChainComplex::homology_all(Coeff coeff) const {
  std::vector<FgAbGroup> out;
  for (int n = 0; n <= top(); ++n) out.push_back(homology(n, coeff));
  return out;
}

ChainComplex ChainComplex::augmented_reduced() const {
  // shift so that the augmentation target sits in degree 0
  std::vector<int> nd = {1};
  nd.insert(nd.end(), dims.begin(), dims.end());
  ChainComplex A(nd);
  for (int j = 0; j < (dims.empty() ? 0 : dims[0]); ++j) A.d[1].add(0, j, 1);
  for (int n = 1; n <= top(); ++n) A.d[n + 1] = d[n];
  for (auto& m : A.d) m.finalize();
  return A;
}

std::string groups_str(const std::vector<FgAbGroup>& gs) {
  std::string s = "(";
  for (size_t i = 0; i < gs.size(); ++i) s += (i ? ", " : "") + gs[i].str();
  return s + ")";
}

}  // namespace btq
