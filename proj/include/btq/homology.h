#pragma once
#include <string>
#include <vector>

#include "btq/intmat.h"

namespace btq {

// Z^r + Z/t1 + ... with t1 | t2 | ..., each ti > 1.
struct FgAbGroup {
  int free_rank = 0;
  std::vector<long long> torsion;

  static FgAbGroup from_invariants(int free_rank, const std::vector<mpz_class>& factors);
  // cokernel of M : Z^cols -> Z^rows
  static FgAbGroup cokernel(const IntMatrix& M);
  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  bool is_finite() const { return free_rank == 0; }
  long long order() const;  // finite groups only
  long long two_torsion_count() const;  // |G[2]| for finite G
  FgAbGroup without_two_torsion() const;
  FgAbGroup operator+(const FgAbGroup& o) const;  // direct sum
  bool operator==(const FgAbGroup& o) const { return free_rank == o.free_rank && torsion == o.torsion; }
  bool operator!=(const FgAbGroup& o) const { return !(*this == o); }
  std::string str() const;
};

// Coefficient ring tag. Zhalf is Z[1/2], realized as Z-homology with the
// 2-primary torsion discarded; this is valid because Z[1/2] is flat over Z.
struct Coeff {
  enum Kind { Z, Zmod, Zhalf } kind = Z;
  long long ell = 0;
  static Coeff integers() { return {Z, 0}; }
  static Coeff mod(long long l) { return {Zmod, l}; }
  static Coeff half() { return {Zhalf, 0}; }
  static Coeff parse(const std::string& s);
  std::string str() const;
};

// ker(d_n) / im(d_{n+1}); d_n : C_n -> C_{n-1}, d_np1 : C_{n+1} -> C_n.
FgAbGroup homology_of_pair(const SparseMatrix& d_n, const SparseMatrix& d_np1, Coeff coeff = Coeff::integers());
FgAbGroup homology_of_pair(const IntMatrix& d_n, const IntMatrix& d_np1, Coeff coeff = Coeff::integers());

// Graded complex with d[n] : C_n -> C_{n-1} (d[0] is the zero map to C_{-1}).
struct ChainComplex {
  std::vector<int> dims;
  std::vector<SparseMatrix> d;  // d[n] for n = 0..top; d[0] has 0 rows

  ChainComplex() = default;
  explicit ChainComplex(std::vector<int> dims);
  int top() const { return static_cast<int>(dims.size()) - 1; }
  SparseMatrix& boundary(int n) { return d[n]; }
  SparseMatrix boundary_or_zero(int n) const;  // handles n out of range
  bool is_complex() const;
  FgAbGroup homology(int n, Coeff coeff = Coeff::integers()) const;
  std::vector<FgAbGroup> homology_all(Coeff coeff = Coeff::integers()) const;
  // augmented: C_0 -> Z sends each generator to 1
  ChainComplex augmented_reduced() const;
};

std::string groups_str(const std::vector<FgAbGroup>& gs);

}  // namespace btq
