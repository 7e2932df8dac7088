#include "carlitz/linear.hpp"

#include <stdexcept>

namespace carlitz {

LinearSolveResult solve_linear(const Fq& F, FqMatrix rows, FqRow rhs) {
  const std::size_t m = rows.size();
  if (rhs.size() != m) throw std::invalid_argument("rhs length mismatch");
  const std::size_t n = m == 0 ? 0 : rows[0].size();
  for (auto& r : rows)
    if (r.size() != n) throw std::invalid_argument("ragged matrix");

  std::vector<int> pivot_col;  // pivot column of each pivot row
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m; ++col) {
    std::size_t sel = row;
    while (sel < m && rows[sel][col].is_zero()) ++sel;
    if (sel == m) continue;
    std::swap(rows[sel], rows[row]);
    std::swap(rhs[sel], rhs[row]);
    FqElem inv = rows[row][col].inverse();
    for (std::size_t j = col; j < n; ++j) rows[row][j] *= inv;
    rhs[row] *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == row || rows[i][col].is_zero()) continue;
      FqElem f = rows[i][col];
      for (std::size_t j = col; j < n; ++j) rows[i][j] -= f * rows[row][j];
      rhs[i] -= f * rhs[row];
    }
    pivot_col.push_back(static_cast<int>(col));
    ++row;
  }

  LinearSolveResult out;
  out.rank = static_cast<int>(row);
  for (std::size_t i = row; i < m; ++i)
    if (!rhs[i].is_zero()) return out;  // inconsistent
  out.solvable = true;

  out.particular.assign(n, F.zero());
  for (std::size_t i = 0; i < row; ++i) out.particular[pivot_col[i]] = rhs[i];

  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_col) is_pivot[c] = true;
  for (std::size_t free_col = 0; free_col < n; ++free_col) {
    if (is_pivot[free_col]) continue;
    FqRow v(n, F.zero());
    v[free_col] = F.one();
    for (std::size_t i = 0; i < row; ++i) v[pivot_col[i]] = -rows[i][free_col];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

int matrix_rank(const Fq& F, FqMatrix rows) {
  FqRow rhs(rows.size(), F.zero());
  return solve_linear(F, std::move(rows), std::move(rhs)).rank;
}

std::vector<FqRow> kernel_basis(const Fq& F, const FqMatrix& rows) {
  FqRow rhs(rows.size(), F.zero());
  return solve_linear(F, rows, rhs).kernel;
}

}  // namespace carlitz
