#pragma once

#include <string>

#include "carlitz/poly.hpp"

namespace carlitz {

// Element of k = F_q(T) in lowest terms with monic denominator.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(Poly num);  // num / 1
  RatFunc(Poly num, Poly den);

  static RatFunc zero(const Fq& F) { return RatFunc(Poly::zero(F)); }
  static RatFunc one(const Fq& F) { return RatFunc(Poly::one(F)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const Fq& field() const { return den_.field(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }
  bool is_integral() const { return den_.is_one(); }

  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator-() const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
  RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
  RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }

  RatFunc inverse() const;
  RatFunc pow(long long e) const;
  RatFunc frobenius_q() const;  // q-th power

  bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const RatFunc& o) const { return !(*this == o); }

  // deg num - deg den; the zero function reports a large negative sentinel.
  int degree() const;
  // Multiplicity of the monic irreducible `prime` in num minus den.
  int valuation(const Poly& prime) const;

  std::string str() const;
  // "num", "num/den", or "(num)/(den)"; '/' splits the whole input once.
  static RatFunc parse(const Fq& F, const std::string& text);

 private:
  Poly num_, den_;
  void reduce();
};

}  // namespace carlitz
