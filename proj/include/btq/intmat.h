#pragma once
#include <gmpxx.h>

#include <string>
#include <utility>
#include <vector>

namespace btq {

// Dense matrix of arbitrary-precision integers, row major.
struct IntMatrix {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static IntMatrix identity(int n);
  static IntMatrix from(const std::vector<std::vector<long long>>& v, int cols_if_empty = 0);
  mpz_class& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const mpz_class& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  bool is_zero() const;
  IntMatrix transpose() const;
  std::string str() const;
};

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B);
bool operator==(const IntMatrix& A, const IntMatrix& B);
mpz_class det(const IntMatrix& A);  // Bareiss, square only

// Sparse integer matrix stored by columns; used for boundary maps.
struct SparseMatrix {
  int rows = 0, cols = 0;
  std::vector<std::vector<std::pair<int, long long>>> col;  // sorted by row

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}
  void add(int i, int j, long long v);  // accumulates
  void finalize();                       // sort and drop zeros
  long long nnz() const;
  IntMatrix dense() const;
  static SparseMatrix from_dense(const IntMatrix& M);
  bool is_zero() const;
};

SparseMatrix operator*(const SparseMatrix& A, const SparseMatrix& B);

struct SNFResult {
  std::vector<mpz_class> factors;  // nonzero invariant factors d1 | d2 | ...
  int rank() const { return static_cast<int>(factors.size()); }
  // present when transforms were requested: U*M*V = D
  IntMatrix U, V, Vinv;
  bool has_transforms = false;
};

// Smith normal form. Pivot: nonzero entry of minimal absolute value.
SNFResult snf(const IntMatrix& M, bool transforms = false);
// Invariant factors only, eliminating unit pivots sparsely first.
std::vector<mpz_class> snf_invariants(const SparseMatrix& M);
int rank_mod_p(const SparseMatrix& M, long long p);
int rank_Q(const SparseMatrix& M);

// Integer kernel basis (columns) and an integer solution of A x = b.
IntMatrix integer_kernel(const IntMatrix& A);
bool integer_solve(const IntMatrix& A, const std::vector<mpz_class>& b, std::vector<mpz_class>& x);

// Hermite normal form of the row lattice (rows echelon, positive pivots,
// entries above pivots reduced). Zero rows dropped.
IntMatrix hermite_rows(const IntMatrix& M);

}  // namespace btq
