#pragma once

#include <vector>

#include "carlitz/upoly.hpp"

namespace carlitz {

template <class C>
C frob_q_iter(C x, int times) {
  for (int i = 0; i < times; ++i) x = frob_q(x);
  return x;
}

// Twisted polynomial ring L{tau} with the commutation rule tau c = c^q tau.
// Coefficients run c[0] + c[1] tau + ... with the top coefficient nonzero.
template <class C>
class SkewPoly {
 public:
  SkewPoly() = default;
  explicit SkewPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  static SkewPoly constant(C v) {
    SkewPoly r;
    if (!elem_is_zero(v)) r.c_.push_back(std::move(v));
    return r;
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(int i, const C& like) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : zero_like(like);
  }

  SkewPoly operator+(const SkewPoly& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    std::vector<C> r;
    std::size_t n = std::max(c_.size(), o.c_.size());
    const C& like = c_[0];
    for (std::size_t i = 0; i < n; ++i) {
      C v = i < c_.size() ? c_[i] : zero_like(like);
      if (i < o.c_.size()) v = v + o.c_[i];
      r.push_back(std::move(v));
    }
    return SkewPoly(std::move(r));
  }

  // (sum a_i tau^i)(sum b_j tau^j) = sum_k (sum_{i+j=k} a_i b_j^{q^i}) tau^k
  SkewPoly operator*(const SkewPoly& o) const {
    if (is_zero() || o.is_zero()) return SkewPoly();
    std::vector<C> r(c_.size() + o.c_.size() - 1, zero_like(c_[0]));
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (elem_is_zero(c_[i])) continue;
      for (std::size_t j = 0; j < o.c_.size(); ++j)
        r[i + j] = r[i + j] + c_[i] * frob_q_iter(o.c_[j], static_cast<int>(i));
    }
    return SkewPoly(std::move(r));
  }

 private:
  std::vector<C> c_;
  void trim() {
    while (!c_.empty() && elem_is_zero(c_.back())) c_.pop_back();
  }
};

// Additive polynomial sum c_i X^{q^i}. Same coefficient data as a skew
// polynomial; this view knows how to evaluate and how to expand densely.
template <class C>
class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
  static QPoly from_skew(const SkewPoly<C>& s) { return QPoly(s.coeffs()); }

  int tau_degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<C>& coeffs() const { return c_; }
  C coeff(int i, const C& like) const {
    return i >= 0 && i < static_cast<int>(c_.size()) ? c_[i] : zero_like(like);
  }

  // Evaluation at x of any coefficient-compatible type V: coefficients are
  // coerced into V via coerce_into(c, like).
  template <class V>
  V eval_in(const V& x) const {
    V r = zero_like(x);
    V xp = x;  // x^{q^i}, advanced by Frobenius each round
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (i > 0) xp = frob_q(xp);
      if (!elem_is_zero(c_[i])) r = r + coerce_into(c_[i], x) * xp;
    }
    return r;
  }
  C eval(const C& x) const { return eval_in<C>(x); }

  // Dense expansion as an ordinary polynomial in X.
  UPoly<C> dense() const {
    if (is_zero()) return UPoly<C>();
    const Fq& F = fq_of(c_[0]);
    std::size_t top = 1;
    for (int i = 0; i < tau_degree(); ++i) top *= F.q();
    std::vector<C> dense_c(top + 1, zero_like(c_[0]));
    std::size_t pos = 1;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      dense_c[pos] = c_[i];
      pos *= F.q();
    }
    return UPoly<C>(std::move(dense_c));
  }

 private:
  std::vector<C> c_;
  void trim() {
    while (!c_.empty() && elem_is_zero(c_.back())) c_.pop_back();
  }
};

// Identity coercion; richer targets (tower elements) overload coerce_into.
inline const RatFunc& coerce_into(const RatFunc& c, const RatFunc&) { return c; }
inline const Poly& coerce_into(const Poly& c, const Poly&) { return c; }
inline RatFunc coerce_into(const Poly& c, const RatFunc&) { return RatFunc(c); }

}  // namespace carlitz
