#include "btq/poly.h"

#include <stdexcept>

namespace btq {

Poly::Poly(const Fq& f, std::vector<int> coeffs) : F(&f), c(std::move(coeffs)) { trim(); }

Poly Poly::constant(const Fq& f, int a) { return Poly(f, {a}); }

Poly Poly::monomial(const Fq& f, int a, int deg) {
  std::vector<int> v(deg + 1, 0);
  v[deg] = a;
  return Poly(f, v);
}

void Poly::trim() {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scale(*this, F->inv(lead()));
}

int Poly::eval(int x) const {
  int r = 0;
  for (int i = deg(); i >= 0; --i) r = F->add(F->mul(r, x), c[i]);
  return r;
}

uint32_t Poly::code() const {
  uint32_t r = 0;
  for (int i = deg(); i >= 0; --i) r = r * F->q + c[i];
  return r;
}

Poly Poly::from_code(const Fq& f, uint32_t code) {
  std::vector<int> v;
  while (code) v.push_back(code % f.q), code /= f.q;
  return Poly(f, v);
}

std::string Poly::str(const char* var) const {
  if (is_zero()) return "0";
  std::string s;
  for (int i = deg(); i >= 0; --i) {
    if (!c[i]) continue;
    if (!s.empty()) s += "+";
    std::string coef = F->str(c[i]);
    if (F->e > 1 && i > 0 && c[i] != 1) coef = "(" + coef + ")";
    if (i == 0) s += coef;
    else {
      if (c[i] != 1) s += coef + "*";
      s += var;
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

static const Fq* field_of(const Poly& a, const Poly& b) {
  const Fq* f = a.F ? a.F : b.F;
  if (a.F && b.F && a.F != b.F) throw std::invalid_argument("polynomials over different fields");
  if (!f) throw std::invalid_argument("polynomial without a field");
  return f;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Fq* F = field_of(a, b);
  std::vector<int> r(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = F->add(a[i], b[i]);
  return Poly(*F, r);
}

Poly operator-(const Poly& a) {
  Poly r = a;
  for (auto& x : r.c) x = a.F->neg(x);
  return r;
}

Poly operator-(const Poly& a, const Poly& b) {
  const Fq* F = field_of(a, b);
  std::vector<int> r(std::max(a.c.size(), b.c.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = F->sub(a[i], b[i]);
  return Poly(*F, r);
}

Poly operator*(const Poly& a, const Poly& b) {
  const Fq* F = field_of(a, b);
  if (a.is_zero() || b.is_zero()) return Poly(*F);
  std::vector<int> r(a.c.size() + b.c.size() - 1, 0);
  for (size_t i = 0; i < a.c.size(); ++i) {
    if (!a.c[i]) continue;
    for (size_t j = 0; j < b.c.size(); ++j) r[i + j] = F->add(r[i + j], F->mul(a.c[i], b.c[j]));
  }
  return Poly(*F, r);
}

Poly scale(const Poly& a, int s) {
  Poly r = a;
  for (auto& x : r.c) x = a.F->mul(x, s);
  r.trim();
  return r;
}

bool operator==(const Poly& a, const Poly& b) { return a.c == b.c; }

bool operator<(const Poly& a, const Poly& b) {
  if (a.deg() != b.deg()) return a.deg() < b.deg();
  for (int i = a.deg(); i >= 0; --i)
    if (a.c[i] != b.c[i]) return a.c[i] < b.c[i];
  return false;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  const Fq* F = field_of(a, b);
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  if (a.deg() < b.deg()) return {Poly(*F), a};
  std::vector<int> r = a.c, qv(a.deg() - b.deg() + 1, 0);
  int il = F->inv(b.lead());
  for (int k = a.deg(); k >= b.deg(); --k) {
    int co = F->mul(r[k], il);
    if (!co) continue;
    qv[k - b.deg()] = co;
    for (int i = 0; i <= b.deg(); ++i) r[k - b.deg() + i] = F->sub(r[k - b.deg() + i], F->mul(co, b.c[i]));
  }
  return {Poly(*F, qv), Poly(*F, r)};
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& u) {
  const Fq* F = field_of(a, b);
  Poly r0 = a, r1 = b, s0 = Poly::constant(*F, 1), s1(*F), u0(*F), u1 = Poly::constant(*F, 1);
  while (!r1.is_zero()) {
    auto [qq, rr] = divmod(r0, r1);
    r0 = std::move(r1); r1 = std::move(rr);
    Poly ns = s0 - qq * s1; s0 = std::move(s1); s1 = std::move(ns);
    Poly nu = u0 - qq * u1; u0 = std::move(u1); u1 = std::move(nu);
  }
  if (r0.is_zero()) { s = s0; u = u0; return r0; }
  int il = F->inv(r0.lead());
  s = scale(s0, il);
  u = scale(u0, il);
  return scale(r0, il);
}

Poly inverse_mod(const Poly& a, const Poly& m) {
  Poly s, u;
  Poly g = ext_gcd(a % m, m, s, u);
  if (!g.is_one()) throw std::domain_error("polynomial not invertible modulo m");
  return s % m;
}

Poly powmod(Poly base, long long n, const Poly& m) {
  Poly r = Poly::constant(*m.F, 1) % m;
  base = base % m;
  while (n) {
    if (n & 1) r = (r * base) % m;
    base = (base * base) % m;
    n >>= 1;
  }
  return r;
}

Poly pow(const Poly& a, int n) {
  Poly r = Poly::constant(*a.F, 1);
  for (int i = 0; i < n; ++i) r = r * a;
  return r;
}

bool is_irreducible(const Poly& f) {
  if (f.deg() < 1) return false;
  if (f.deg() == 1) return true;
  const Fq& F = *f.F;
  Poly t = Poly::t(F);
  Poly x = t % f;
  for (int i = 1; i <= f.deg() / 2; ++i) {
    x = powmod(x, F.q, f);
    if (!gcd(f, x - t).is_one()) return false;
  }
  return true;
}

std::vector<Poly> monic_polys(const Fq& f, int d) {
  std::vector<Poly> out;
  long long n = 1;
  for (int i = 0; i < d; ++i) n *= f.q;
  for (long long k = 0; k < n; ++k) {
    Poly p = Poly::from_code(f, static_cast<uint32_t>(k));
    p.c.resize(d + 1, 0);
    p.c[d] = 1;
    out.push_back(p);
  }
  return out;
}

std::vector<Poly> monic_irreducibles(const Fq& f, int d) {
  std::vector<Poly> out;
  for (auto& p : monic_polys(f, d))
    if (is_irreducible(p)) out.push_back(p);
  return out;
}

}  // namespace btq
