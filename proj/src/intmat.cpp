#include "btq/intmat.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace btq {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix I(n, n);
  for (int i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

IntMatrix IntMatrix::from(const std::vector<std::vector<long long>>& v, int cols_if_empty) {
  int r = static_cast<int>(v.size());
  int c = r ? static_cast<int>(v[0].size()) : cols_if_empty;
  IntMatrix M(r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(v[i].size()) != c) throw std::invalid_argument("ragged matrix");
    for (int j = 0; j < c; ++j) M(i, j) = static_cast<long>(v[i][j]);
  }
  return M;
}

bool IntMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const mpz_class& x) { return x == 0; });
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix T(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) T(j, i) = (*this)(i, j);
  return T;
}

std::string IntMatrix::str() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows; ++i) {
    os << (i ? ",[" : "[");
    for (int j = 0; j < cols; ++j) os << (j ? "," : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

IntMatrix operator*(const IntMatrix& A, const IntMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
  IntMatrix C(A.rows, B.cols);
  for (int i = 0; i < A.rows; ++i)
    for (int k = 0; k < A.cols; ++k) {
      const mpz_class& x = A(i, k);
      if (x == 0) continue;
      for (int j = 0; j < B.cols; ++j) C(i, j) += x * B(k, j);
    }
  return C;
}

bool operator==(const IntMatrix& A, const IntMatrix& B) {
  return A.rows == B.rows && A.cols == B.cols && A.a == B.a;
}

mpz_class det(const IntMatrix& A0) {
  if (A0.rows != A0.cols) throw std::invalid_argument("det of non-square matrix");
  int n = A0.rows;
  if (n == 0) return 1;
  IntMatrix A = A0;
  mpz_class prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (A(k, k) == 0) {
      int s = -1;
      for (int i = k + 1; i < n; ++i)
        if (A(i, k) != 0) { s = i; break; }
      if (s < 0) return 0;
      for (int j = 0; j < n; ++j) std::swap(A(k, j), A(s, j));
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        A(i, j) = (A(i, j) * A(k, k) - A(i, k) * A(k, j));
        mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

void SparseMatrix::add(int i, int j, long long v) {
  if (i < 0 || i >= rows || j < 0 || j >= cols) throw std::out_of_range("sparse index");
  col[j].push_back({i, v});
}

void SparseMatrix::finalize() {
  for (auto& c : col) {
    std::sort(c.begin(), c.end());
    std::vector<std::pair<int, long long>> out;
    for (auto& e : c) {
      if (!out.empty() && out.back().first == e.first) out.back().second += e.second;
      else out.push_back(e);
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& e) { return e.second == 0; }), out.end());
    c = std::move(out);
  }
}

long long SparseMatrix::nnz() const {
  long long n = 0;
  for (auto& c : col) n += static_cast<long long>(c.size());
  return n;
}

IntMatrix SparseMatrix::dense() const {
  IntMatrix M(rows, cols);
  for (int j = 0; j < cols; ++j)
    for (auto& [i, v] : col[j]) M(i, j) += static_cast<long>(v);
  return M;
}

SparseMatrix SparseMatrix::from_dense(const IntMatrix& M) {
  SparseMatrix S(M.rows, M.cols);
  for (int j = 0; j < M.cols; ++j)
    for (int i = 0; i < M.rows; ++i)
      if (M(i, j) != 0) {
        if (!M(i, j).fits_slong_p()) throw std::overflow_error("entry too large for sparse storage");
        S.col[j].push_back({i, M(i, j).get_si()});
      }
  return S;
}

bool SparseMatrix::is_zero() const {
  for (auto& c : col)
    for (auto& e : c)
      if (e.second) return false;
  return true;
}

SparseMatrix operator*(const SparseMatrix& A, const SparseMatrix& B) {
  if (A.cols != B.rows) throw std::invalid_argument("matrix shape mismatch");
  SparseMatrix C(A.rows, B.cols);
  std::vector<long long> acc(A.rows, 0);
  std::vector<int> touched;
  for (int j = 0; j < B.cols; ++j) {
    touched.clear();
    for (auto& [k, v] : B.col[j])
      for (auto& [i, w] : A.col[k]) {
        if (acc[i] == 0) touched.push_back(i);
        acc[i] += v * w;
      }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (int i : touched) {
      if (acc[i]) C.col[j].push_back({i, acc[i]});
      acc[i] = 0;
    }
  }
  return C;
}

namespace {

struct Snf {
  IntMatrix A, U, V, Vi;
  bool tr;
  Snf(const IntMatrix& M, bool t) : A(M), tr(t) {
    if (tr) {
      U = IntMatrix::identity(M.rows);
      V = IntMatrix::identity(M.cols);
      Vi = IntMatrix::identity(M.cols);
    }
  }
  // row i += k * row j
  void row_add(int i, int j, const mpz_class& k) {
    for (int c = 0; c < A.cols; ++c)
      if (A(j, c) != 0) A(i, c) += k * A(j, c);
    if (tr)
      for (int c = 0; c < U.cols; ++c)
        if (U(j, c) != 0) U(i, c) += k * U(j, c);
  }
  // col i += k * col j
  void col_add(int i, int j, const mpz_class& k) {
    for (int r = 0; r < A.rows; ++r)
      if (A(r, j) != 0) A(r, i) += k * A(r, j);
    if (tr) {
      for (int r = 0; r < V.rows; ++r)
        if (V(r, j) != 0) V(r, i) += k * V(r, j);
      for (int c = 0; c < Vi.cols; ++c)
        if (Vi(i, c) != 0) Vi(j, c) -= k * Vi(i, c);
    }
  }
  void row_swap(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < A.cols; ++c) std::swap(A(i, c), A(j, c));
    if (tr)
      for (int c = 0; c < U.cols; ++c) std::swap(U(i, c), U(j, c));
  }
  void col_swap(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < A.rows; ++r) std::swap(A(r, i), A(r, j));
    if (tr) {
      for (int r = 0; r < V.rows; ++r) std::swap(V(r, i), V(r, j));
      for (int c = 0; c < Vi.cols; ++c) std::swap(Vi(i, c), Vi(j, c));
    }
  }
  void row_neg(int i) {
    for (int c = 0; c < A.cols; ++c) A(i, c) = -A(i, c);
    if (tr)
      for (int c = 0; c < U.cols; ++c) U(i, c) = -U(i, c);
  }

  bool min_in_block(int t, int& bi, int& bj) {
    bi = bj = -1;
    mpz_class best;
    for (int i = t; i < A.rows; ++i)
      for (int j = t; j < A.cols; ++j) {
        const mpz_class& x = A(i, j);
        if (x == 0) continue;
        if (bi < 0 || abs(x) < best) {
          best = abs(x);
          bi = i, bj = j;
          if (best == 1) return true;
        }
      }
    return bi >= 0;
  }

  std::vector<mpz_class> run() {
    int m = A.rows, n = A.cols, t = 0;
    for (; t < std::min(m, n); ++t) {
      int bi, bj;
      if (!min_in_block(t, bi, bj)) break;
      row_swap(t, bi);
      col_swap(t, bj);
      while (true) {
        bool clean = true;
        for (int i = t + 1; i < m; ++i) {
          if (A(i, t) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          row_add(i, t, -q);
          if (A(i, t) != 0) clean = false;
        }
        for (int j = t + 1; j < n; ++j) {
          if (A(t, j) == 0) continue;
          mpz_class q;
          mpz_fdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          col_add(j, t, -q);
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) {
          // move the smallest remaining entry of row/column t to the pivot
          int si = t, sj = t;
          mpz_class best = abs(A(t, t));
          for (int i = t + 1; i < m; ++i)
            if (A(i, t) != 0 && abs(A(i, t)) < best) best = abs(A(i, t)), si = i, sj = t;
          for (int j = t + 1; j < n; ++j)
            if (A(t, j) != 0 && abs(A(t, j)) < best) best = abs(A(t, j)), si = t, sj = j;
          row_swap(t, si);
          col_swap(t, sj);
          continue;
        }
        int fi = -1;
        for (int i = t + 1; i < m && fi < 0; ++i)
          for (int j = t + 1; j < n; ++j)
            if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              fi = i;
              break;
            }
        if (fi < 0) break;
        row_add(t, fi, 1);
      }
      if (A(t, t) < 0) row_neg(t);
    }
    std::vector<mpz_class> f;
    for (int i = 0; i < t; ++i) f.push_back(A(i, i));
    return f;
  }
};

}  // namespace

SNFResult snf(const IntMatrix& M, bool transforms) {
  Snf s(M, transforms);
  SNFResult r;
  r.factors = s.run();
  if (transforms) {
    r.U = std::move(s.U);
    r.V = std::move(s.V);
    r.Vinv = std::move(s.Vi);
    r.has_transforms = true;
  }
  return r;
}

namespace {

using Row = std::vector<std::pair<int, mpz_class>>;

// out = a - k * b, rows sorted by column
void row_axpy(Row& a, const Row& b, const mpz_class& k, std::vector<int>& entered, std::vector<int>& left) {
  Row out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(std::move(a[i++]));
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.push_back({b[j].first, -k * b[j].second});
      entered.push_back(b[j].first);
      ++j;
    } else {
      mpz_class v = a[i].second - k * b[j].second;
      if (v != 0) out.push_back({a[i].first, std::move(v)});
      else left.push_back(a[i].first);
      ++i, ++j;
    }
  }
  a = std::move(out);
}

const mpz_class* row_find(const Row& r, int c) {
  auto it = std::lower_bound(r.begin(), r.end(), c, [](const auto& e, int x) { return e.first < x; });
  if (it == r.end() || it->first != c) return nullptr;
  return &it->second;
}

}  // namespace

std::vector<mpz_class> snf_invariants(const SparseMatrix& M) {
  std::vector<Row> row(M.rows);
  for (int c = 0; c < M.cols; ++c)
    for (auto& [r, v] : M.col[c])
      if (v) row[r].push_back({c, mpz_class(static_cast<long>(v))});
  std::vector<std::vector<int>> colrows(M.cols);
  for (int r = 0; r < M.rows; ++r)
    for (auto& e : row[r]) colrows[e.first].push_back(r);
  std::vector<char> alive(M.rows, 1);
  int units = 0;
  bool progress = true;
  std::vector<int> entered, left;
  while (progress) {
    progress = false;
    std::vector<int> order;
    for (int r = 0; r < M.rows; ++r)
      if (alive[r] && !row[r].empty()) order.push_back(r);
    std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return row[x].size() < row[y].size(); });
    for (int r : order) {
      if (!alive[r] || row[r].empty()) continue;
      int bc = -1;
      size_t bcnt = 0;
      for (auto& [c, v] : row[r]) {
        if (abs(v) != 1) continue;
        size_t cnt = colrows[c].size();
        if (bc < 0 || cnt < bcnt) bc = c, bcnt = cnt;
      }
      if (bc < 0) continue;
      const mpz_class u = *row_find(row[r], bc);
      auto& lst = colrows[bc];
      std::sort(lst.begin(), lst.end());
      lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
      for (int r2 : lst) {
        if (r2 == r || !alive[r2]) continue;
        const mpz_class* a = row_find(row[r2], bc);
        if (!a) continue;
        mpz_class k = *a * u;
        entered.clear();
        left.clear();
        row_axpy(row[r2], row[r], k, entered, left);
        for (int c : entered) colrows[c].push_back(r2);
      }
      alive[r] = 0;
      row[r].clear();
      lst.clear();
      ++units;
      progress = true;
    }
  }
  // dense remainder
  std::vector<int> rows_left, cols_left;
  std::vector<int> cmap(M.cols, -1);
  for (int r = 0; r < M.rows; ++r)
    if (alive[r] && !row[r].empty()) {
      rows_left.push_back(r);
      for (auto& e : row[r])
        if (cmap[e.first] < 0) cmap[e.first] = 0, cols_left.push_back(e.first);
    }
  std::sort(cols_left.begin(), cols_left.end());
  for (size_t j = 0; j < cols_left.size(); ++j) cmap[cols_left[j]] = static_cast<int>(j);
  IntMatrix D(static_cast<int>(rows_left.size()), static_cast<int>(cols_left.size()));
  for (size_t i = 0; i < rows_left.size(); ++i)
    for (auto& e : row[rows_left[i]]) D(static_cast<int>(i), cmap[e.first]) = e.second;
  std::vector<mpz_class> f(units, mpz_class(1));
  auto rest = snf(D).factors;
  f.insert(f.end(), rest.begin(), rest.end());
  return f;
}

int rank_mod_p(const SparseMatrix& M, long long p) {
  using PRow = std::vector<std::pair<int, long long>>;
  std::vector<PRow> row(M.rows);
  for (int c = 0; c < M.cols; ++c)
    for (auto& [r, v] : M.col[c]) {
      long long x = ((v % p) + p) % p;
      if (x) row[r].push_back({c, x});
    }
  auto inv = [p](long long a) {
    long long r = 1, e = p - 2;
    a %= p;
    while (e) {
      if (e & 1) r = static_cast<long long>((__int128)r * a % p);
      a = static_cast<long long>((__int128)a * a % p);
      e >>= 1;
    }
    return r;
  };
  std::vector<std::vector<int>> colrows(M.cols);
  for (int r = 0; r < M.rows; ++r)
    for (auto& e : row[r]) colrows[e.first].push_back(r);
  std::vector<char> alive(M.rows, 1);
  int rank = 0;
  std::vector<int> order;
  for (int r = 0; r < M.rows; ++r) order.push_back(r);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return row[x].size() < row[y].size(); });
  for (int r : order) {
    if (row[r].empty()) continue;
    int bc = -1;
    size_t bcnt = 0;
    for (auto& e : row[r]) {
      size_t cnt = colrows[e.first].size();
      if (bc < 0 || cnt < bcnt) bc = e.first, bcnt = cnt;
    }
    long long pv = 0;
    for (auto& e : row[r])
      if (e.first == bc) pv = e.second;
    long long pinv = inv(pv);
    auto& lst = colrows[bc];
    std::sort(lst.begin(), lst.end());
    lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    for (int r2 : lst) {
      if (r2 == r || !alive[r2]) continue;
      long long a = 0;
      for (auto& e : row[r2])
        if (e.first == bc) { a = e.second; break; }
      if (!a) continue;
      long long k = static_cast<long long>((__int128)a * pinv % p);
      PRow out;
      size_t i = 0, j = 0;
      const PRow& A = row[r2];
      const PRow& B = row[r];
      while (i < A.size() || j < B.size()) {
        if (j == B.size() || (i < A.size() && A[i].first < B[j].first)) out.push_back(A[i++]);
        else if (i == A.size() || B[j].first < A[i].first) {
          long long v = (p - static_cast<long long>((__int128)k * B[j].second % p)) % p;
          if (v) {
            out.push_back({B[j].first, v});
            colrows[B[j].first].push_back(r2);
          }
          ++j;
        } else {
          long long v = (A[i].second - static_cast<long long>((__int128)k * B[j].second % p) + p) % p;
          if (v) out.push_back({A[i].first, v});
          ++i, ++j;
        }
      }
      row[r2] = std::move(out);
    }
    alive[r] = 0;
    row[r].clear();
    lst.clear();
    ++rank;
  }
  return rank;
}

int rank_Q(const SparseMatrix& M) { return static_cast<int>(snf_invariants(M).size()); }

IntMatrix integer_kernel(const IntMatrix& A) {
  auto r = snf(A, true);
  int k = A.cols - r.rank();
  IntMatrix K(A.cols, k);
  for (int i = 0; i < A.cols; ++i)
    for (int j = 0; j < k; ++j) K(i, j) = r.V(i, r.rank() + j);
  return K;
}

bool integer_solve(const IntMatrix& A, const std::vector<mpz_class>& b, std::vector<mpz_class>& x) {
  if (static_cast<int>(b.size()) != A.rows) throw std::invalid_argument("rhs size mismatch");
  auto r = snf(A, true);
  std::vector<mpz_class> ub(A.rows);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.rows; ++j) ub[i] += r.U(i, j) * b[j];
  std::vector<mpz_class> y(A.cols);
  for (int i = 0; i < A.rows; ++i) {
    if (i < r.rank()) {
      if (!mpz_divisible_p(ub[i].get_mpz_t(), r.factors[i].get_mpz_t())) return false;
      y[i] = ub[i] / r.factors[i];
    } else if (ub[i] != 0) {
      return false;
    }
  }
  x.assign(A.cols, 0);
  for (int i = 0; i < A.cols; ++i)
    for (int j = 0; j < A.cols; ++j) x[i] += r.V(i, j) * y[j];
  return true;
}

IntMatrix hermite_rows(const IntMatrix& M0) {
  IntMatrix M = M0;
  int m = M.rows, n = M.cols, pr = 0;
  auto rswap = [&](int i, int j) {
    for (int c = 0; c < n; ++c) std::swap(M(i, c), M(j, c));
  };
  auto radd = [&](int i, int j, const mpz_class& k) {
    for (int c = 0; c < n; ++c) M(i, c) += k * M(j, c);
  };
  std::vector<int> pivcols;
  for (int c = 0; c < n && pr < m; ++c) {
    while (true) {
      int best = -1;
      for (int i = pr; i < m; ++i)
        if (M(i, c) != 0 && (best < 0 || abs(M(i, c)) < abs(M(best, c)))) best = i;
      if (best < 0) break;
      rswap(pr, best);
      bool done = true;
      for (int i = pr + 1; i < m; ++i) {
        if (M(i, c) == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), M(i, c).get_mpz_t(), M(pr, c).get_mpz_t());
        radd(i, pr, -q);
        if (M(i, c) != 0) done = false;
      }
      if (done) break;
    }
    if (M(pr, c) == 0) continue;
    if (M(pr, c) < 0)
      for (int k = 0; k < n; ++k) M(pr, k) = -M(pr, k);
    for (int i = 0; i < pr; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), M(i, c).get_mpz_t(), M(pr, c).get_mpz_t());
      if (q != 0) radd(i, pr, -q);
    }
    ++pr;
  }
  IntMatrix H(pr, n);
  for (int i = 0; i < pr; ++i)
    for (int j = 0; j < n; ++j) H(i, j) = M(i, j);
  return H;
}

}  // namespace btq
