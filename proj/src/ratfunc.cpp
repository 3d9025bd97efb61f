#include "btq/ratfunc.h"

#include <cctype>
#include <stdexcept>

namespace btq {

RatFunc::RatFunc(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw std::domain_error("rational function with zero denominator");
  const Fq& F = *d.F;
  if (n.is_zero()) {
    num_ = Poly(F);
    den_ = Poly::constant(F, 1);
    return;
  }
  Poly g = gcd(n, d);
  Poly nn = n / g, dd = d / g;
  int il = F.inv(dd.lead());
  num_ = scale(nn, il);
  den_ = scale(dd, il);
}

RatFunc RatFunc::inverse() const {
  if (is_zero()) throw std::domain_error("inverse of zero rational function");
  return RatFunc(den_, num_);
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc operator+(const RatFunc& a, const RatFunc& b) {
  if (a.den() == b.den()) return RatFunc(a.num() + b.num(), a.den());
  return RatFunc(a.num() * b.den() + b.num() * a.den(), a.den() * b.den());
}
RatFunc operator-(const RatFunc& a) { return RatFunc(-a.num(), a.den()); }
RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
RatFunc operator*(const RatFunc& a, const RatFunc& b) {
  if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
  return RatFunc(a.num() * b.num(), a.den() * b.den());
}
RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }
RatFunc pow(const RatFunc& a, int n) {
  if (n < 0) return pow(a.inverse(), -n);
  return RatFunc(pow(a.num(), n), pow(a.den(), n));
}
bool operator==(const RatFunc& a, const RatFunc& b) { return a.num() == b.num() && a.den() == b.den(); }

Place Place::finite(const Poly& pi) {
  if (!is_irreducible(pi)) throw std::invalid_argument("place polynomial is not irreducible: " + pi.str());
  Place P;
  P.F_ = pi.F;
  P.pi_ = pi.monic();
  return P;
}

Place Place::infinity(const Fq& f) {
  Place P;
  P.F_ = &f;
  P.inf_ = true;
  P.pi_ = Poly(f);
  return P;
}

long long Place::residue_size() const {
  long long r = 1;
  for (int i = 0; i < degree(); ++i) r *= F_->q;
  return r;
}

RatFunc Place::uniformizer() const {
  if (inf_) return RatFunc(Poly::constant(*F_, 1), Poly::t(*F_));
  return RatFunc(pi_);
}

uint64_t Place::key() const {
  uint64_t h = 1469598103934665603ULL ^ static_cast<uint64_t>(F_->q);
  h = (h ^ (inf_ ? 0xABCDu : 0x1234u)) * 1099511628211ULL;
  for (int c : pi_.c) h = (h ^ static_cast<uint64_t>(c + 7)) * 1099511628211ULL;
  return h;
}

std::string Place::str() const { return inf_ ? "inf" : pi_.str(); }

bool Place::operator<(const Place& o) const {
  if (inf_ != o.inf_) return !inf_;
  return pi_ < o.pi_;
}

int valuation(const Poly& f, const Place& P) {
  if (f.is_zero()) throw std::domain_error("valuation of zero undefined");
  if (P.is_infinity()) return -f.deg();
  int v = 0;
  Poly g = f;
  while (true) {
    auto [qq, r] = divmod(g, P.pi());
    if (!r.is_zero()) break;
    g = std::move(qq);
    ++v;
  }
  return v;
}

int valuation(const RatFunc& f, const Place& P) {
  if (f.is_zero()) throw std::domain_error("valuation of zero undefined");
  return valuation(f.num(), P) - valuation(f.den(), P);
}

Poly PadicExpansion::at(int i) const {
  if (i < start || i >= start + static_cast<int>(coeffs.size())) {
    if (coeffs.empty()) return Poly();
    return Poly(*coeffs[0].F);
  }
  return coeffs[i - start];
}

namespace {

Poly reversed(const Poly& p, int d) {
  std::vector<int> v(d + 1, 0);
  for (int i = 0; i <= p.deg(); ++i) v[d - i] = p.c[i];
  return Poly(*p.F, v);
}

// digits of a polynomial g in base pi, n digits
std::vector<Poly> digits(Poly g, const Poly& pi, int n) {
  std::vector<Poly> out;
  for (int i = 0; i < n; ++i) {
    auto [qq, r] = divmod(g, pi);
    out.push_back(r);
    g = std::move(qq);
  }
  return out;
}

}  // namespace

PadicExpansion padic_expand(const RatFunc& f, const Place& P, int upper) {
  PadicExpansion out;
  const Fq& F = P.field();
  if (f.is_zero()) {
    out.start = upper;
    return out;
  }
  int v = valuation(f, P);
  out.start = v;
  int n = upper - v;
  if (n <= 0) return out;
  Poly A, B, pi;
  if (P.is_infinity()) {
    // f(1/s) = s^v rev(num)/rev(den)
    A = reversed(f.num(), f.num().deg());
    B = reversed(f.den(), f.den().deg());
    pi = Poly::t(F);
  } else {
    pi = P.pi();
    A = f.num();
    B = f.den();
    int vn = valuation(A, P), vd = valuation(B, P);
    for (int i = 0; i < vn; ++i) A = A / pi;
    for (int i = 0; i < vd; ++i) B = B / pi;
  }
  Poly mod = pow(pi, n);
  Poly g = (A * inverse_mod(B, mod)) % mod;
  out.coeffs = digits(g, pi, n);
  return out;
}

Poly residue(const RatFunc& f, const Place& P) {
  if (f.is_zero()) return Poly(P.field());
  auto e = padic_expand(f, P, 1);
  if (e.start < 0) throw std::domain_error("residue of a function with a pole");
  return e.at(0);
}

Poly parse_poly(const Fq& F, const std::string& s0) {
  std::string s;
  for (char ch : s0)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw std::invalid_argument("empty polynomial");
  Poly acc(F);
  size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    long long coef = 1;
    bool have_coef = false;
    size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j > i) { coef = std::stoll(s.substr(i, j - i)); have_coef = true; i = j; }
    if (i < s.size() && s[i] == '*') ++i;
    // "a" and "a^k": powers of the generator in the printed basis of F_q;
    // "(...)" a constant written in that basis
    int gen_part = 1;
    if (!have_coef && i < s.size() && s[i] == '(') {
      size_t close = s.find(')', i);
      if (close == std::string::npos) throw std::invalid_argument("unbalanced parenthesis in " + s0);
      Poly inner = parse_poly(F, s.substr(i + 1, close - i - 1));
      if (inner.deg() > 0) throw std::invalid_argument("nonconstant coefficient in " + s0);
      gen_part = inner.deg() < 0 ? 0 : inner.c[0];
      have_coef = true;
      i = close + 1;
      if (i < s.size() && s[i] == '*') ++i;
    } else if (i < s.size() && s[i] == 'a') {
      ++i;
      int k = 1;
      if (i < s.size() && s[i] == '^') {
        size_t m = ++i;
        while (m < s.size() && std::isdigit(static_cast<unsigned char>(s[m]))) ++m;
        if (m == i) throw std::invalid_argument("bad exponent in " + s0);
        k = std::stoi(s.substr(i, m - i));
        i = m;
      }
      if (k >= F.e) throw std::invalid_argument("coefficient a^" + std::to_string(k) + " outside the basis of F_q");
      gen_part = 1;
      for (int r = 0; r < k; ++r) gen_part *= F.p;
      have_coef = true;
      if (i < s.size() && s[i] == '*') ++i;
    }
    int deg = 0;
    if (i < s.size() && (s[i] == 't' || s[i] == 'x')) {
      ++i;
      deg = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        size_t k = i;
        while (k < s.size() && std::isdigit(static_cast<unsigned char>(s[k]))) ++k;
        if (k == i) throw std::invalid_argument("bad exponent in " + s0);
        deg = std::stoi(s.substr(i, k - i));
        i = k;
      }
    } else if (!have_coef) {
      throw std::invalid_argument("cannot parse polynomial: " + s0);
    }
    int c = F.mul(F.from_int(sign * coef), gen_part);
    acc = acc + Poly::monomial(F, c, deg);
    if (i < s.size() && s[i] != '+' && s[i] != '-') throw std::invalid_argument("cannot parse polynomial: " + s0);
  }
  return acc;
}

Place parse_place(const Fq& F, const std::string& s) {
  if (s == "inf" || s == "infinity" || s == "oo") return Place::infinity(F);
  Poly p = parse_poly(F, s);
  return Place::finite(p.monic());
}

}  // namespace btq
