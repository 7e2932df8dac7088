#pragma once

#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"
#include "carlitz/skew.hpp"

namespace carlitz {

// Rank-one Drinfeld module phi over A = F_q[T]: phi_T(X) = T X + a X^q with
// a in k nonzero. The Carlitz module is a = 1. phi_m for general m in A is
// obtained by substituting the twisted operator a tau + T for T.
struct Rank1Module {
  RatFunc a;

  explicit Rank1Module(RatFunc a_) : a(std::move(a_)) {
    if (a.is_zero()) throw std::invalid_argument("rank-one module needs a != 0");
  }
  static Rank1Module carlitz(const Fq& F) { return Rank1Module(RatFunc::one(F)); }

  bool is_carlitz() const { return a.is_one(); }
  const Fq& field() const { return a.field(); }
};

// Coefficient of X^{q^i} in the Carlitz polynomial phi_M, an element of A of
// degree (deg M - i) q^i. Computed by expanding M(tau + T) in the twisted
// ring, never by a closed formula.
Poly carlitz_coeff(const Poly& M, int i);

// phi_m as an additive polynomial with coefficients in k.
QPoly<RatFunc> action_poly(const Rank1Module& mod, const Poly& m);

// The module action phi_m(x). Templated so the same polynomial acts on k
// and on tower elements.
RatFunc act(const Rank1Module& mod, const Poly& m, const RatFunc& x);

template <class V>
V act_in(const Rank1Module& mod, const Poly& m, const V& x) {
  return action_poly(mod, m).template eval_in<V>(x);
}

}  // namespace carlitz
