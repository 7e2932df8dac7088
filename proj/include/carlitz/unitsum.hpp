#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "carlitz/poly.hpp"

namespace carlitz {

// Decomposition of a residue f mod M into a short sum of units of A/(M).
// Feasible for every (q, M, f) except q = 2 with T(T+1) | M and f(0) != f(1),
// where no unit sum of any length can reach f; the witness records the
// obstruction pair (f(0), f(1)).
struct UnitSumResult {
  bool feasible = false;
  std::vector<Poly> summands;                 // canonical residues, coprime to M
  std::optional<std::pair<FqElem, FqElem>> witness;  // (f(0), f(1)) when infeasible
};

UnitSumResult decompose_units(const Poly& f, const Poly& M);

// Feasibility predicate alone (no search).
bool unit_sum_feasible(const Poly& f, const Poly& M);

}  // namespace carlitz
