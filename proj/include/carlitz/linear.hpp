#pragma once

#include <vector>

#include "carlitz/fq.hpp"

namespace carlitz {

// Exact dense linear algebra over F_q, used by the affine solver, the
// membership tests, and the cocycle machinery. Row-major matrices.
using FqRow = std::vector<FqElem>;
using FqMatrix = std::vector<FqRow>;

struct LinearSolveResult {
  bool solvable = false;
  FqRow particular;       // one solution of A x = b (empty when unsolvable)
  std::vector<FqRow> kernel;  // basis of the solution space of A x = 0
  int rank = 0;
};

// Solves A x = b. Rows may be ragged-free (all length = cols). The kernel
// basis is in reduced echelon form with deterministic free-column order.
LinearSolveResult solve_linear(const Fq& F, FqMatrix rows, FqRow rhs);

int matrix_rank(const Fq& F, FqMatrix rows);

std::vector<FqRow> kernel_basis(const Fq& F, const FqMatrix& rows);

}  // namespace carlitz
