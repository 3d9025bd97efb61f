#pragma once
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "btq/fq.h"

namespace btq {

// Polynomial over F_q in the variable t, coefficients low degree first,
// no trailing zeros. The zero polynomial has an empty coefficient list.
struct Poly {
  const Fq* F = nullptr;
  std::vector<int> c;

  Poly() = default;
  explicit Poly(const Fq& f) : F(&f) {}
  Poly(const Fq& f, std::vector<int> coeffs);
  static Poly constant(const Fq& f, int a);
  static Poly monomial(const Fq& f, int a, int deg);
  static Poly t(const Fq& f) { return monomial(f, 1, 1); }

  int deg() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  bool is_one() const { return c.size() == 1 && c[0] == 1; }
  int lead() const { return c.empty() ? 0 : c.back(); }
  int operator[](int i) const { return i < static_cast<int>(c.size()) ? c[i] : 0; }
  void trim();
  Poly monic() const;
  int eval(int x) const;

  // residue codes: polynomials of degree < d packed in base q
  uint32_t code() const;
  static Poly from_code(const Fq& f, uint32_t code);

  std::string str(const char* var = "t") const;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator-(const Poly& a);
Poly operator*(const Poly& a, const Poly& b);
Poly scale(const Poly& a, int s);
bool operator==(const Poly& a, const Poly& b);
inline bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
bool operator<(const Poly& a, const Poly& b);  // degree then coefficients from the top

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
inline Poly operator/(const Poly& a, const Poly& b) { return divmod(a, b).first; }
inline Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).second; }
Poly gcd(Poly a, Poly b);  // monic
// returns g = gcd (monic) with s*a + u*b = g
Poly ext_gcd(const Poly& a, const Poly& b, Poly& s, Poly& u);
Poly inverse_mod(const Poly& a, const Poly& m);
Poly powmod(Poly base, long long n, const Poly& m);
Poly pow(const Poly& a, int n);
bool is_irreducible(const Poly& f);
// all monic polynomials of exact degree d, in code order
std::vector<Poly> monic_polys(const Fq& f, int d);
std::vector<Poly> monic_irreducibles(const Fq& f, int d);

}  // namespace btq
