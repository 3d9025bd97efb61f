#include "btq/fqlinalg.h"

namespace btq {

std::vector<int> fq_rref(const Fq& K, std::vector<FqRow>& rows, int ncols) {
  std::vector<int> piv;
  size_t r = 0;
  for (int c = 0; c < ncols && r < rows.size(); ++c) {
    size_t p = r;
    while (p < rows.size() && rows[p][c] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    int inv = K.inv(rows[r][c]);
    for (auto& v : rows[r]) v = K.mul(v, inv);
    for (size_t i = 0; i < rows.size(); ++i)
      if (i != r && rows[i][c]) {
        int f = rows[i][c];
        for (size_t j = 0; j < rows[i].size(); ++j) rows[i][j] = K.sub(rows[i][j], K.mul(f, rows[r][j]));
      }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  return piv;
}

int fq_rank(const Fq& K, std::vector<FqRow> rows, int ncols) { return static_cast<int>(fq_rref(K, rows, ncols).size()); }

std::vector<FqRow> fq_nullspace(const Fq& K, std::vector<FqRow> rows, int ncols) {
  auto piv = fq_rref(K, rows, ncols);
  std::vector<bool> is_piv(ncols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<FqRow> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_piv[f]) continue;
    FqRow v(ncols, 0);
    v[f] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = K.neg(rows[i][f]);
    out.push_back(v);
  }
  return out;
}

bool fq_solvable(const Fq& K, std::vector<FqRow> rows, const FqRow& rhs, int ncols) {
  for (size_t i = 0; i < rows.size(); ++i) rows[i].push_back(rhs[i]);
  auto piv = fq_rref(K, rows, ncols + 1);
  return piv.empty() || piv.back() != ncols;
}

}  // namespace btq
