#pragma once

#include <cstdint>

namespace carlitz {

// Resource caps for the search/enumeration layers. Defaults are sized for
// desk-scale instances; each can be raised or lowered through environment
// variables so a sweep can be re-run with more headroom without a rebuild:
//
//   KUMMER_MAX_SOLVE_DIM   unknowns in one affine F_q-linear solve
//   KUMMER_MAX_ENUM        elements materialized by one enumeration
//   KUMMER_MAX_COHOM_ROWS  rows assembled for one cocycle condition matrix
struct Caps {
  std::int64_t max_solve_dim = 20000;
  std::int64_t max_enum = 200000;
  std::int64_t max_cohom_rows = 4000000;

  // Process-wide caps with environment overrides applied (read once).
  static const Caps& current();
};

}  // namespace carlitz
