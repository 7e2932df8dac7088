#include "carlitz/action.hpp"

namespace carlitz {

namespace {

// M(a tau + T) expanded in the twisted ring by Horner's rule.
template <class C>
SkewPoly<C> substitute(const Poly& M, const C& a_coeff, const C& t_coeff) {
  SkewPoly<C> base(std::vector<C>{t_coeff, a_coeff});
  SkewPoly<C> r;
  for (int j = M.degree(); j >= 0; --j) {
    r = r * base + SkewPoly<C>::constant(make_scalar(t_coeff, M.coeff(j)));
  }
  return r;
}

}  // namespace

Poly carlitz_coeff(const Poly& M, int i) {
  if (M.is_zero()) throw std::invalid_argument("carlitz_coeff of zero");
  if (i < 0 || i > M.degree())
    throw std::out_of_range("carlitz coefficient index out of range [0, deg M]");
  const Fq& F = M.field();
  SkewPoly<Poly> phi = substitute(M, Poly::one(F), Poly::T(F));
  return phi.coeff(i, Poly::zero(F));
}

QPoly<RatFunc> action_poly(const Rank1Module& mod, const Poly& m) {
  const Fq& F = mod.field();
  if (&F != &m.field()) throw std::invalid_argument("module and operand field mismatch");
  if (m.is_zero()) return QPoly<RatFunc>();
  RatFunc t(Poly::T(F));
  return QPoly<RatFunc>::from_skew(substitute(m, mod.a, t));
}

RatFunc act(const Rank1Module& mod, const Poly& m, const RatFunc& x) {
  return action_poly(mod, m).eval(x);
}

}  // namespace carlitz
