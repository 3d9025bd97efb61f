#pragma once
#include <vector>

#include "btq/fq.h"

namespace btq {

using FqRow = std::vector<int>;

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> fq_rref(const Fq& K, std::vector<FqRow>& rows, int ncols);
int fq_rank(const Fq& K, std::vector<FqRow> rows, int ncols);
// basis of {x : rows * x = 0}
std::vector<FqRow> fq_nullspace(const Fq& K, std::vector<FqRow> rows, int ncols);
// does rows * x = rhs have a solution
bool fq_solvable(const Fq& K, std::vector<FqRow> rows, const FqRow& rhs, int ncols);

}  // namespace btq
