#pragma once
#include <string>
#include <vector>

#include "btq/poly.h"

namespace btq {

// Element of F_q(t), stored reduced with monic denominator so that
// equality is syntactic.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Fq& f) : num_(f), den_(Poly::constant(f, 1)) {}
  explicit RatFunc(const Poly& p) : num_(p), den_(Poly::constant(*p.F, 1)) {}
  RatFunc(const Poly& n, const Poly& d);
  static RatFunc constant(const Fq& f, int a) { return RatFunc(Poly::constant(f, a)); }
  static RatFunc t(const Fq& f) { return RatFunc(Poly::t(f)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Fq& field() const { return *den_.F; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  RatFunc inverse() const;
  std::string str() const;

 private:
  Poly num_, den_;
};

RatFunc operator+(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a, const RatFunc& b);
RatFunc operator-(const RatFunc& a);
RatFunc operator*(const RatFunc& a, const RatFunc& b);
RatFunc operator/(const RatFunc& a, const RatFunc& b);
RatFunc pow(const RatFunc& a, int n);
bool operator==(const RatFunc& a, const RatFunc& b);
inline bool operator!=(const RatFunc& a, const RatFunc& b) { return !(a == b); }

// A closed point of P^1: a monic irreducible pi, or infinity with
// uniformizer 1/t.
class Place {
 public:
  Place() = default;
  static Place finite(const Poly& pi);
  static Place infinity(const Fq& f);

  bool is_infinity() const { return inf_; }
  const Poly& pi() const { return pi_; }
  const Fq& field() const { return *F_; }
  int degree() const { return inf_ ? 1 : pi_.deg(); }
  long long residue_size() const;  // q^deg
  RatFunc uniformizer() const;
  uint64_t key() const;
  std::string str() const;
  bool operator==(const Place& o) const { return F_ == o.F_ && inf_ == o.inf_ && pi_ == o.pi_; }
  bool operator!=(const Place& o) const { return !(*this == o); }
  bool operator<(const Place& o) const;

 private:
  const Fq* F_ = nullptr;
  bool inf_ = false;
  Poly pi_;
};

int valuation(const Poly& f, const Place& P);
int valuation(const RatFunc& f, const Place& P);

// Coefficients c_i (residue representatives of degree < deg P) with
// f = sum c_i pi^i mod pi^upper, i running from start to upper - 1.
struct PadicExpansion {
  int start = 0;
  std::vector<Poly> coeffs;
  Poly at(int i) const;
};
PadicExpansion padic_expand(const RatFunc& f, const Place& P, int upper);

// Residue of a P-integral f in k(P), as a polynomial of degree < deg P.
Poly residue(const RatFunc& f, const Place& P);

// Parses "t^2+t+1", "2*t+1", "inf", "t-1". Returns a place.
Place parse_place(const Fq& f, const std::string& s);
Poly parse_poly(const Fq& f, const std::string& s);

}  // namespace btq
