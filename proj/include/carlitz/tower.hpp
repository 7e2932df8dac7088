#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "carlitz/action.hpp"
#include "carlitz/ratfunc.hpp"
#include "carlitz/skew.hpp"
#include "carlitz/upoly.hpp"

namespace carlitz {

class TowerField;

// Element of a finite extension tower over k = F_q(T), in nested coordinate
// form: a level-0 element is a rational function, a level-L element is the
// fixed-width coefficient vector of the L-th adjoined generator. Elements
// carry a raw pointer to their immutable TowerField; whoever builds the
// tower keeps it alive (shared_ptr), elements must not outlive it.
class TowerElem {
 public:
  TowerElem() = default;

  bool valid() const { return tw_ != nullptr; }
  const TowerField* tower() const { return tw_; }
  int level() const { return level_; }

  bool is_zero() const;
  bool is_one() const;

  TowerElem operator+(const TowerElem& o) const;
  TowerElem operator-(const TowerElem& o) const;
  TowerElem operator-() const;
  TowerElem operator*(const TowerElem& o) const;
  TowerElem inverse() const;
  TowerElem pow(long long e) const;
  TowerElem frobenius() const;  // q-th power
  TowerElem& operator+=(const TowerElem& o) { return *this = *this + o; }
  TowerElem& operator-=(const TowerElem& o) { return *this = *this - o; }
  TowerElem& operator*=(const TowerElem& o) { return *this = *this * o; }

  // Multiplication by a scalar from k, applied leafwise (no reduction work).
  TowerElem scaled(const RatFunc& s) const;

  // Zero / one / F_q scalar at this element's level, which for step
  // coefficients is below the full tower level; the generic polynomial
  // templates use these to stay level-consistent.
  TowerElem zero_same() const;
  TowerElem one_same() const;
  TowerElem scalar_same(FqElem s) const;

  bool operator==(const TowerElem& o) const;
  bool operator!=(const TowerElem& o) const { return !(*this == o); }

  // Coordinates over the k-basis of generator monomials; the first-adjoined
  // generator varies fastest, the top generator slowest.
  std::vector<RatFunc> flatten() const;

  std::string str() const;

  friend class TowerField;

 private:
  const TowerField* tw_ = nullptr;
  int level_ = 0;
  RatFunc leaf_;                 // level 0 payload
  std::vector<TowerElem> kids_;  // level > 0 payload, fixed width

  void reparent(const TowerField* tw);
  static void require_compatible(const TowerElem& a, const TowerElem& b);
};

// Deterministic total order on elements of one tower (coordinate
// lexicographic); used to pick canonical witnesses.
bool elem_less(const TowerElem& a, const TowerElem& b);

// Immutable description of a tower k = L_0 < L_1 < ... < L_n, each step
// adjoining a root of a monic polynomial with coefficients one level down.
class TowerField {
 public:
  struct Step {
    std::string label;
    std::vector<TowerElem> min_poly;  // monic, constant first, length degree+1
    int degree = 0;
  };

  static std::shared_ptr<const TowerField> base(const Fq& F);
  // New tower with one more step; min_poly coefficients are elements of
  // *this* tower (they get re-parented into the result).
  std::shared_ptr<const TowerField> extended(const std::string& label,
                                             std::vector<TowerElem> min_poly) const;

  const Fq& fq() const { return *F_; }
  int levels() const { return static_cast<int>(steps_.size()); }
  const Step& step(int i) const { return steps_.at(i); }
  std::int64_t degree() const;  // product of step degrees

  TowerElem zero() const;
  TowerElem one() const;
  TowerElem from_base(const RatFunc& x) const;
  TowerElem from_scalar(FqElem s) const { return from_base(RatFunc(Poly::constant(s))); }
  TowerElem gen(int step_index) const;
  TowerElem from_coords(const std::vector<RatFunc>& coords) const;
  // Copy an element of a prefix tower (same base field, first `level()` steps
  // identical by label and degree) into this tower at full level.
  TowerElem embed(const TowerElem& x) const;

  // k-basis of generator monomials in flatten order.
  std::vector<TowerElem> basis() const;
  std::vector<std::string> basis_labels() const;

 private:
  explicit TowerField(const Fq& F) : F_(&F) {}
  const Fq* F_ = nullptr;
  std::vector<Step> steps_;

  TowerElem make_level(int level) const;  // zero element at a given level
  friend class TowerElem;
};

inline const TowerElem& coerce_into(const TowerElem& c, const TowerElem&) { return c; }
inline TowerElem coerce_into(const RatFunc& c, const TowerElem& like) {
  return like.tower()->from_base(c);
}
inline TowerElem coerce_into(const Poly& c, const TowerElem& like) {
  return like.tower()->from_base(RatFunc(c));
}
inline TowerElem zero_like(const TowerElem& x) { return x.zero_same(); }
inline TowerElem one_like(const TowerElem& x) { return x.one_same(); }
inline TowerElem make_scalar(const TowerElem& like, FqElem s) { return like.scalar_same(s); }
inline TowerElem frob_q(const TowerElem& x) { return x.frobenius(); }
inline bool elem_is_zero(const TowerElem& x) { return x.is_zero(); }
const Fq& fq_of(const TowerElem& x);

// Additive polynomial with tower coefficients, from a rational one.
QPoly<TowerElem> to_tower(const QPoly<RatFunc>& P, const TowerField& tw);

struct SolveOptions {
  int extra_degree = 0;     // widen the numerator window
  int extra_pole = 0;       // deepen the denominator window
  std::int64_t max_dim = 0;  // 0: use Caps::current().max_solve_dim
};

// Full solution set of P(y) = w for an additive polynomial P over a tower.
// The solution set is empty or particular + span_{F_q}(kernel).
struct AffineSolveResult {
  bool solvable = false;
  TowerElem particular;
  std::vector<TowerElem> kernel;

  std::uint64_t count() const;  // number of solutions (q^dim or 0)
  // All solutions, canonically ordered; throws CapExceeded past the cap.
  std::vector<TowerElem> all() const;
};

// Finds every solution y in the ambient tower of P(y) = w by exact F_q-linear
// algebra over a bounded coefficient window (tower basis x T-degree window
// over a denominator assembled from the primes visible in P, w, and the
// tower steps). Every reported solution is re-verified by substitution.
AffineSolveResult solve_affine_q(const QPoly<TowerElem>& P, const TowerElem& w,
                                 const SolveOptions& opts = {});

/// Division-point data: the minimal monic E | M such that phi_{M/E}(Y) = z
// has a solution beta in the tower; the adjoined point is a root of
// phi_E(X) - beta (monic-normalized). Requires the full M-torsion inside
// the tower so that the minimal polynomial is guaranteed irreducible.
struct DivisionPoint {
  Poly E;
  TowerElem beta;
  UPoly<TowerElem> min_poly;
};

DivisionPoint min_poly_additive(const Rank1Module& mod, const Poly& M, const TowerElem& z,
                                const SolveOptions& opts = {});

std::int64_t field_degree(const TowerField& tw);

}  // namespace carlitz
