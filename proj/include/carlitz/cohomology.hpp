#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carlitz/fq.hpp"
#include "carlitz/linear.hpp"
#include "carlitz/poly.hpp"

namespace carlitz {

// A finite group acting F_p-linearly on V = F_p^dim. Element 0 must be the
// identity; `mul[g][h]` is the product gh; `mats[g]` is the dim x dim matrix
// of g on column vectors. `names` is optional printable labels.
struct FiniteAction {
  const Fq* Fp = nullptr;
  int dim = 0;
  std::vector<std::vector<int>> mul;
  std::vector<FqMatrix> mats;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(mul.size()); }
  // Group axioms (identity, associativity, Latin-square rows/columns,
  // inverses) and the action being a homomorphism into invertible matrices.
  // Throws std::invalid_argument with a witness on the first violation.
  void validate() const;
  int inverse_of(int g) const;
};

struct CohomologyResult {
  std::int64_t dim_cocycles = 0;
  std::int64_t dim_coboundaries = 0;
  std::int64_t dim_h = 0;
};

// Degree-one cohomology by exact F_p linear algebra: crossed homomorphisms
// f(gh) = g.f(h) + f(g) modulo principal ones f(g) = g.v - v. The cocycle
// conditions are streamed through an echelon accumulator, so memory is
// bounded by (unknowns)^2 while the row count is cap-guarded.
CohomologyResult h1(const FiniteAction& A);

// Degree-two cohomology: 2-cochains f(g, h) with
//   g.f(h, k) - f(gh, k) + f(g, hk) - f(g, h) = 0
// modulo boundaries (du)(g, h) = g.u(h) - u(gh) + u(g).
CohomologyResult h2(const FiniteAction& A);

// The unit group (A/(M))^* acting on the M-torsion module of a rank-one
// module, presented on residue coordinates: phi_B on torsion points is
// multiplication by B on A/(M), an F_p-space of dimension deg(M)*[F_q:F_p].
FiniteAction unit_group_action(const Fq& F, const Poly& M);

// True when some scalar unit b in F_q^* acts on A/(M) with b - 1 invertible;
// conjugation-averaging against such a central element forces H^1 = 0.
bool has_fixed_point_free_scalar(const Fq& F, const Poly& M);

// Vanishing of H^1((A/M)^*, torsion) is claimed except when q = 2 and T or
// T+1 divides M; those instances are reported as exploratory instead.
bool h1_vanishing_expected(const Fq& F, const Poly& M);

}  // namespace carlitz
