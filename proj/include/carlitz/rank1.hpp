#pragma once

#include <optional>
#include <string>
#include <vector>

#include "carlitz/action.hpp"
#include "carlitz/kummer.hpp"
#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"
#include "carlitz/report.hpp"
#include "carlitz/tower.hpp"

namespace carlitz {

// Scaling datum u with u^(q-1) = 1/a that turns the module with coefficient a
// into the standard one: the module action is x -> u C(x / u) coefficientwise,
// so u times a standard torsion generator is a torsion generator of the
// twisted module.  When e = 1 the scaling is the rational function root_power
// itself; otherwise u is a root of X^e - root_power, which is irreducible
// because root_power is not an r-th power for any prime r dividing e and the
// needed roots of unity all lie in F_q.
struct TwistData {
  int e = 1;
  RatFunc root_power;  // u^e = root_power; canonical choice
  bool rational() const { return e == 1; }
  std::string str() const;
};

TwistData twist_to_carlitz(const RatFunc& a);

// Canonical exact d-th root of a rational function, when one exists: the
// constant part must be a d-th power in F_q and every irreducible factor
// must occur with multiplicity divisible by d.
std::optional<RatFunc> rational_root(const RatFunc& x, int d);

// Valuation of a nonzero rational function at a monic irreducible prime.
int valuation(const RatFunc& x, const Poly& l);

// A prime modulus is usable when the module has good reduction there and the
// scaling field is unramified there.  The two conditions are computed by
// independent routes (a direct valuation test and the twist-field data) and
// provably coincide for rank-one twists.
struct AdmissibilityFlags {
  bool good_reduction = false;  // v_l(a) divisible by q - 1
  bool unramified = false;      // e = 1, or e divides v_l(root_power)
  bool admissible() const { return good_reduction && unramified; }
};

AdmissibilityFlags admissible_prime(const RatFunc& a, const Poly& l);

// Division tower over a twisted module at a monic irreducible modulus;
// requires admissibility so the torsion layer is a field and the generic
// machinery applies.
KummerTower build_prime_tower(const RatFunc& a, const Poly& l, std::vector<RatFunc> gens,
                              const SolveOptions& opts = {});

// Compositum identity check: with u the twist scaling and lambda_C a standard
// torsion generator at l, the product u lambda_C must be a root of the
// twisted torsion-layer polynomial, and the whole twisted torsion table must
// be the u-scaling of the standard one.
struct TwistCheck {
  int twist_degree = 1;
  bool identity_holds = false;
  bool torsion_match = false;
};

TwistCheck twist_cross_check(const RatFunc& a, const Poly& l);

// Canonical basis of the annihilating functionals of the division layer:
// tuples v over the residue field A/(l) with sum_j v_j c_j = 0 for the shift
// tuple (c_j) of every torsion-fixing automorphism.  Requires an irreducible
// modulus so the tuples form a vector space.
std::vector<std::vector<Poly>> annihilating_functionals(const KummerTower& tw);

// Residue tuples whose Gamma-combination is divisible by the modulus already
// over the base field k (no torsion adjoined).  Always a subset of the right
// kernel computed over the torsion field.
std::vector<std::vector<Poly>> base_field_kernel(const KummerTower& tw);

// Full verification at a prime modulus: admissibility flags, the twist
// compositum identity, base-field/torsion-field kernel comparison, the
// functional description of the right kernel, and every generic division
// tower clause.  Inadmissible or reducible moduli report the obstruction and
// skip the dependent clauses.
Report verify_section3(const RatFunc& a, const Poly& l, const std::vector<RatFunc>& gens,
                       const VerifyOptions& opts = {});

}  // namespace carlitz
