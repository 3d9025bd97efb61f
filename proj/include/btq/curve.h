#pragma once
#include <optional>
#include <string>
#include <vector>

#include "btq/homology.h"
#include "btq/ratfunc.h"

namespace btq {

struct ECPoint {
  bool inf = true;
  int x = 0, y = 0;
  static ECPoint origin() { return {}; }
  static ECPoint at(int x, int y) { return {false, x, y}; }
  bool operator==(const ECPoint& o) const { return inf == o.inf && (inf || (x == o.x && y == o.y)); }
  bool operator!=(const ECPoint& o) const { return !(*this == o); }
  bool operator<(const ECPoint& o) const;
};

// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 over F (codes).
struct EllipticCurve {
  const Fq* F = nullptr;
  int a1 = 0, a2 = 0, a3 = 0, a4 = 0, a6 = 0;

  EllipticCurve() = default;
  EllipticCurve(const Fq& f, int a1, int a2, int a3, int a4, int a6);
  int discriminant() const;
  bool on_curve(const ECPoint& P) const;
  ECPoint neg(const ECPoint& P) const;
  ECPoint add(const ECPoint& P, const ECPoint& Q) const;
  ECPoint mul(long long n, ECPoint P) const;
  ECPoint frobenius(const ECPoint& P, int q) const;  // coordinatewise x -> x^q
  std::vector<ECPoint> points() const;                 // origin first
  // same equation over F_{q^d}; needs q prime when d > 1
  EllipticCurve extend(int d) const;
  std::string str() const;
  std::string point_str(const ECPoint& P) const;
};

// E(F_q) = Z/n1 x Z/n2 with n1 | n2 (n1 may be 1), generators g1, g2.
struct ECGroup {
  EllipticCurve E;
  std::vector<ECPoint> pts;
  long long n1 = 1, n2 = 1;
  ECPoint g1, g2;
  static ECGroup compute(const EllipticCurve& E);
  std::pair<long long, long long> log(const ECPoint& P) const;  // P = a g1 + b g2
  FgAbGroup abstract() const;
};

struct Puncture {
  int degree = 1;
  Place place;      // base P^1
  ECPoint rep;      // elliptic: representative over F_{q^degree}
  std::string label;
};

struct CurveConfig {
  enum Kind { P1, Elliptic } kind = P1;
  int q = 2;
  EllipticCurve curve;  // elliptic only, over F_q
  std::vector<Puncture> punctures;

  const Fq& field() const { return Fq::get(q); }
  int s() const { return static_cast<int>(punctures.size()); }
  std::vector<int> degrees() const;
  void validate() const;
  std::string str() const;
};

// P^1: places with max degree; elliptic: Galois orbits of exact degree d
std::vector<Puncture> enumerate_closed_points(const CurveConfig& base, int max_degree);
CurveConfig p1_config(int q, const std::vector<std::string>& punctures);
// punctures: "O", a rational point "x,y"; "d:k" is the k-th closed point of degree d
CurveConfig elliptic_config(int q, const std::vector<int>& a, const std::vector<std::string>& punctures);

struct PicData {
  // Pic of the complete curve = Z + Z/m_1 + ... ; coordinates (deg, t_1, ...)
  std::vector<long long> pic_bar_torsion;
  IntMatrix phi;            // rows: coordinates of Pic of the complete curve; cols: punctures
  FgAbGroup pic;            // Pic(C)
  FgAbGroup pic0;           // Pic^0(C)
  long long degree_gcd = 0; // Pic(C)/Pic^0(C) = Z/gcd
  IntMatrix ker_phi;        // rows form a basis of ker phi
  int unit_rank = 0;
  // Im(phi) intersected with Pic^0 of the complete curve, as a subgroup of E(F_q)
  std::vector<std::vector<long long>> im_phi_pic0;
  long long im_phi_pic0_order = 1;
  std::vector<std::string> pic_generators;  // representative divisor per cyclic factor of Pic(C)
  std::vector<std::string> exactness_report;
  bool exact = false;
};
PicData nagata(const CurveConfig& c);

struct KummerSet {
  std::vector<long long> invariants;                       // torsion invariants of Pic(C)
  std::vector<std::vector<std::vector<long long>>> orbits; // element tuples
  long long fixed_points() const;
};
KummerSet kummer(const PicData& pic);

struct Unit {
  std::vector<long long> divisor;  // valuations at the punctures
  std::string function;            // printable form
  RatFunc p1;                      // base P^1 only
  // elliptic: f = (A0(x) + A1(x) y) / h(x), coefficient codes low degree first
  std::vector<int> a0, a1, h;
};
std::vector<Unit> units_group(const CurveConfig& c, int bound = 12);

// valuation of an emitted unit at an arbitrary closed point
int unit_valuation(const CurveConfig& c, const Unit& u, const Puncture& P);

}  // namespace btq
