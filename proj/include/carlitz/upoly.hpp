#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "carlitz/fq.hpp"
#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"

namespace carlitz {

// Shape helpers so the generic polynomial templates can work over F_q, k, or
// a tower level without a common base class. Each coefficient type supplies
// zero/one of its own shape, the q-power map, and scalars from F_q.
inline RatFunc zero_like(const RatFunc& x) { return RatFunc::zero(x.field()); }
inline RatFunc one_like(const RatFunc& x) { return RatFunc::one(x.field()); }
inline RatFunc make_scalar(const RatFunc& like, FqElem s) {
  (void)like;
  return RatFunc(Poly::constant(s));
}
inline RatFunc frob_q(const RatFunc& x) { return x.frobenius_q(); }
inline bool elem_is_zero(const RatFunc& x) { return x.is_zero(); }
inline const Fq& fq_of(const RatFunc& x) { return x.field(); }

inline Poly zero_like(const Poly& x) { return Poly::zero(x.field()); }
inline Poly one_like(const Poly& x) { return Poly::one(x.field()); }
inline Poly make_scalar(const Poly& like, FqElem s) {
  (void)like;
  return Poly::constant(s);
}
inline Poly frob_q(const Poly& x) { return x.frobenius_q(); }
inline bool elem_is_zero(const Poly& x) { return x.is_zero(); }
inline const Fq& fq_of(const Poly& x) { return x.field(); }

inline FqElem zero_like(const FqElem& x) { return x.F->zero(); }
inline FqElem one_like(const FqElem& x) { return x.F->one(); }
inline FqElem make_scalar(const FqElem& like, FqElem s) {
  (void)like;
  return s;
}
inline FqElem frob_q(const FqElem& x) { return x; }  // x^q = x in F_q
inline bool elem_is_zero(const FqElem& x) { return x.is_zero(); }
inline const Fq& fq_of(const FqElem& x) { return *x.F; }

// Dense univariate polynomial over a field-like coefficient type F,
// constant coefficient first, top coefficient nonzero.
template <class F>
class UPoly {
 public:
  UPoly() = default;
  explicit UPoly(std::vector<F> coeffs) : c_(std::move(coeffs)) { trim(); }
  static UPoly constant(F v) {
    UPoly r;
    if (!elem_is_zero(v)) r.c_.push_back(std::move(v));
    return r;
  }
  static UPoly x_power(const F& like, int k) {
    UPoly r;
    r.c_.assign(k, zero_like(like));
    r.c_.push_back(one_like(like));
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && elem_is_zero(c_[0] - one_like(c_[0])); }
  const std::vector<F>& coeffs() const { return c_; }
  F coeff(int i, const F& like) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : zero_like(like);
  }
  const F& lc() const {
    if (c_.empty()) throw std::invalid_argument("leading coefficient of zero");
    return c_.back();
  }
  bool is_monic() const { return !c_.empty() && elem_is_zero(lc() - one_like(lc())); }

  UPoly operator+(const UPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::vector<F> r;
    std::size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    const F& like = c_[0];
    for (std::size_t i = 0; i < n; ++i) {
      F v = i < c_.size() ? c_[i] : zero_like(like);
      if (i < o.c_.size()) v = v + o.c_[i];
      r.push_back(std::move(v));
    }
    return UPoly(std::move(r));
  }
  UPoly operator-() const {
    UPoly r = *this;
    for (auto& v : r.c_) v = zero_like(v) - v;
    return r;
  }
  UPoly operator-(const UPoly& o) const { return *this + (-o); }
  UPoly operator*(const UPoly& o) const {
    if (is_zero() || o.is_zero()) return UPoly();
    std::vector<F> r(c_.size() + o.c_.size() - 1, zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (elem_is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return UPoly(std::move(r));
  }
  UPoly scaled(const F& s) const {
    UPoly r = *this;
    for (auto& v : r.c_) v = v * s;
    r.trim();
    return r;
  }

  std::pair<UPoly, UPoly> divmod(const UPoly& d) const {
    if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
    if (degree() < d.degree()) return {UPoly(), *this};
    F inv_lc = d.lc().inverse();
    std::vector<F> rem = c_;
    const F& like = d.lc();
    std::vector<F> quo(degree() - d.degree() + 1, zero_like(like));
    for (int k = degree() - d.degree(); k >= 0; --k) {
      F c = rem[k + d.degree()] * inv_lc;
      if (!elem_is_zero(c)) {
        quo[k] = c;
        for (int i = 0; i <= d.degree(); ++i) rem[k + i] = rem[k + i] - c * d.c_[i];
      }
    }
    rem.resize(d.degree() > 0 ? d.degree() : 0, zero_like(like));
    return {UPoly(std::move(quo)), UPoly(std::move(rem))};
  }
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }

  UPoly monic() const {
    if (is_zero()) throw std::invalid_argument("monic normalization of zero");
    return scaled(lc().inverse());
  }

  UPoly derivative() const {
    if (degree() < 1) return UPoly();
    std::vector<F> r;
    r.reserve(degree());
    for (int i = 1; i <= degree(); ++i)
      r.push_back(c_[i] * make_scalar(c_[i], fq_of(c_[i]).from_int(i)));
    return UPoly(std::move(r));
  }

  template <class V>
  V eval(const V& x) const {
    V r = zero_like(x);
    for (int i = degree(); i >= 0; --i) r = r * x + coerce_to(c_[i], x);
    return r;
  }

  bool operator==(const UPoly& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!elem_is_zero(c_[i] - o.c_[i])) return false;
    return true;
  }
  bool operator!=(const UPoly& o) const { return !(*this == o); }

 private:
  std::vector<F> c_;
  void trim() {
    while (!c_.empty() && elem_is_zero(c_.back())) c_.pop_back();
  }
  static const F& coerce_to(const F& c, const F&) { return c; }
  template <class V>
  static V coerce_to(const F& c, const V& like) {
    return coerce_into(c, like);  // supplied by the target type's header
  }
};

template <class F>
UPoly<F> upoly_gcd(UPoly<F> a, UPoly<F> b) {
  if (a.is_zero() && b.is_zero()) throw std::invalid_argument("gcd of two zero polynomials");
  while (!b.is_zero()) {
    UPoly<F> r = a % b;
    a = b;
    b = r;
  }
  return a.monic();
}

}  // namespace carlitz
