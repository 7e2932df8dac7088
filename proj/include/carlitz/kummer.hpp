#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "carlitz/action.hpp"
#include "carlitz/report.hpp"
#include "carlitz/tower.hpp"

namespace carlitz {

// Monic minimal polynomial over k of a generator of the M-torsion module of
// `mod` (M monic). Computed by exact recursive division: the dense module
// polynomial of M, made monic, divided by the polynomials of all proper
// divisors of M. Degree is 1 for M = 1 and Phi(M) otherwise; the division
// is checked to be exact and the degree is asserted.
UPoly<RatFunc> cyclotomic_poly(const Rank1Module& mod, const Poly& M);

// An automorphism of the division-point field, written in coordinates:
//   lambda  |-> phi_B(lambda)                 (B a unit residue mod M)
//   alpha_j |-> alpha_j + phi_{c_j}(lambda)   (c_j a residue mod M)
// where lambda generates the M-torsion module and alpha_j divides the j-th
// generator of Gamma by M. Residues are stored canonically (deg < deg M).
struct GaloisAut {
  Poly B;
  std::vector<Poly> c;

  bool operator==(const GaloisAut& o) const { return B == o.B && c == o.c; }
  bool operator!=(const GaloisAut& o) const { return !(*this == o); }
  std::string str() const;
};

// Deterministic total order (B first, then the shifts, by polynomial index).
bool aut_less(const GaloisAut& a, const GaloisAut& b);

// One division step of the tower: alpha is a root of phi_E(X) - beta where
// E is the minimal monic divisor of M with phi_{M/E}(Y) = gen_value solvable
// below, and beta is the canonical such solution. deg(alpha's step) = q^deg E.
struct DivisionStep {
  RatFunc gen_value;  // the Gamma generator a_j
  Poly E;
  TowerElem beta;   // in the full tower (embedded)
  TowerElem alpha;  // in the full tower
};

// The field tower k < K = k(torsion of M) < K(alpha_1, ..., alpha_r) for a
// rank-one module, together with its Galois group in coordinates, the
// A-module structure on the torsion-side subgroup, the Kummer pairing, and
// the exponent/kernel invariants of the generator module Gamma.
//
// Gamma is the A-submodule of (k, +) generated by `gens` under the module
// action. When q = 2 and T(T+1) | M the A-module structure on the Galois
// side is not available; towers with generators then refuse to build, while
// generator-free towers still expose the cyclotomic layer.
class KummerTower {
 public:
  KummerTower(const Rank1Module& mod, const Poly& M, std::vector<RatFunc> gens,
              const SolveOptions& opts = {});

  const Rank1Module& module() const { return mod_; }
  const Poly& M() const { return M_; }
  const std::vector<RatFunc>& gens() const { return gens_; }
  int rank() const { return static_cast<int>(gens_.size()); }
  bool amodule_ok() const { return amodule_ok_; }

  std::shared_ptr<const TowerField> cyclo_field() const { return cyclo_; }
  std::shared_ptr<const TowerField> field() const { return full_; }
  const UPoly<RatFunc>& cyclotomic() const { return psi_; }
  const std::vector<DivisionStep>& steps() const { return steps_; }

  // The chosen torsion generator, in the full tower.
  const TowerElem& lambda() const { return lambda_; }
  // phi_c(lambda) for a residue (reduced mod M); table-backed.
  const TowerElem& torsion(const Poly& c) const;
  // Inverse of `torsion` on the torsion set; nullopt off the set.
  std::optional<Poly> torsion_log(const TowerElem& t) const;
  // Monic annihilator of a torsion point (a divisor of M).
  Poly torsion_order(const TowerElem& t) const;
  // Number of A-module generators of the torsion module, by enumeration.
  std::uint64_t torsion_generator_count() const;

  // --- Galois group, enumerated in coordinates ---
  GaloisAut identity() const;
  GaloisAut compose(const GaloisAut& s, const GaloisAut& t) const;  // s after t
  GaloisAut inverse(const GaloisAut& s) const;
  GaloisAut conjugate(const GaloisAut& s, const GaloisAut& t) const;  // s t s^-1
  // Image of an element of the full tower (also accepts prefix elements
  // whose coordinates only involve generators the automorphism determines).
  TowerElem apply(const GaloisAut& s, const TowerElem& x) const;
  bool is_automorphism(const GaloisAut& s) const;

  // All automorphisms, canonically ordered; the torsion-fixing subgroup
  // (B = 1); canonical coset representatives, one per unit residue B.
  const std::vector<GaloisAut>& galois_all() const;
  std::vector<GaloisAut> galois_h() const;
  GaloisAut lift_of_unit(const Poly& B) const;

  // --- A-module structure on H (torsion-fixing subgroup) ---
  // f acts by conjugation with lifts of the unit summands of f mod M; the
  // decomposition path is checked against the direct shift-multiplication.
  GaloisAut a_action(const Poly& f, const GaloisAut& psi) const;

  // --- Kummer pairing ---
  // <psi, a_j> = psi(alpha_j) - alpha_j as a torsion residue (exact c_j).
  Poly pairing(const GaloisAut& psi, int j) const;
  TowerElem pairing_value(const GaloisAut& psi, int j) const;

  // Right kernel of the pairing as tuples (c_1, ..., c_r) of residues mod M
  // with sum phi_{c_i}(a_i) divisible by M over the cyclotomic field; the
  // annihilator is the monic generator of the ideal killing every tuple.
  const std::vector<std::vector<Poly>>& right_kernel_tuples() const;
  Poly right_kernel_annihilator() const;

  // --- Exponent of (1/M)Gamma meet k over Gamma ---
  // e divides M; e_M = gcd(e, M) = e is reported separately for clarity.
  Poly exponent_e() const;
  Poly exponent_eM() const;

  // Bounded A-module membership tests over k (the search window on the
  // coefficient degrees is deg M + 4 + extra; positives are re-verified
  // exactly, negatives are window-bounded claims). `witness` receives the
  // coefficients f_i with sum phi_{f_i}(g_i) = x on success.
  bool gamma_member(const RatFunc& x, std::vector<Poly>* witness = nullptr,
                    int extra = 0) const;
  bool gammaM_member(const RatFunc& x, std::vector<Poly>* witness = nullptr,
                     int extra = 0) const;

  // Element sum phi_{c_i}(a_i) of a residue tuple, in k.
  RatFunc gamma_combination(const std::vector<Poly>& c) const;

  // Explicit complement search: a subgroup of the full Galois group mapping
  // one-to-one onto the unit group. nullopt when the search is inconclusive.
  std::optional<std::vector<GaloisAut>> find_semidirect_splitting() const;

 private:
  Rank1Module mod_;
  Poly M_;
  std::vector<RatFunc> gens_;
  SolveOptions opts_;
  bool amodule_ok_ = true;

  UPoly<RatFunc> psi_;
  std::shared_ptr<const TowerField> cyclo_;
  std::shared_ptr<const TowerField> full_;
  std::vector<DivisionStep> steps_;
  TowerElem lambda_;

  std::vector<Poly> residues_;                   // canonical residues mod M
  std::vector<TowerElem> torsion_table_;         // phi_{residues_[i]}(lambda)
  std::map<std::string, std::size_t> torsion_index_;

  mutable std::optional<std::vector<GaloisAut>> galois_cache_;
  mutable std::optional<std::vector<std::vector<Poly>>> right_kernel_cache_;
  mutable std::optional<Poly> exponent_cache_;

  Poly reduce(const Poly& f) const;  // canonical residue mod M
  std::vector<TowerElem> generator_images(const GaloisAut& s, int upto_steps) const;
  TowerElem apply_with_images(const std::vector<TowerElem>& img, const TowerElem& x) const;
  bool membership(const std::vector<RatFunc>& module_gens, const RatFunc& x,
                  std::vector<Poly>* witness, int extra) const;
};

struct VerifyOptions {
  bool timings = false;
  SolveOptions solve = {};
  int membership_extra = 0;
};

// Clause-by-clause verification of the Galois/A-module/pairing/exponent
// claims on one built tower instance.
Report verify_section2(const KummerTower& tw, const VerifyOptions& opts = {});

// Helpers shared with the prime-modulus layer and the CLI.
std::string instance_tag(const Rank1Module& mod, const Poly& M,
                         const std::vector<RatFunc>& gens);
std::vector<Poly> solve_congruence(const Poly& E, const Poly& t, const Poly& M);

}  // namespace carlitz
