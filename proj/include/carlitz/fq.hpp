#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "carlitz/errors.hpp"

namespace carlitz {

class Fq;

// Element of F_q, carried as a canonical index together with its field.
// The index encodes the coordinate vector over F_p in base p with the
// constant coordinate least significant, so index order is the canonical
// element order used everywhere (0 < 1 < ... < p-1 < w < w+1 < ...).
struct FqElem {
  const Fq* F = nullptr;
  std::uint16_t v = 0;

  FqElem() = default;
  FqElem(const Fq& field, int idx);

  bool is_zero() const { return v == 0; }
  bool is_one() const { return v == 1; }

  FqElem operator+(FqElem o) const;
  FqElem operator-(FqElem o) const;
  FqElem operator-() const;
  FqElem operator*(FqElem o) const;
  FqElem inverse() const;
  FqElem pow(long long e) const;
  FqElem& operator+=(FqElem o) { return *this = *this + o; }
  FqElem& operator-=(FqElem o) { return *this = *this - o; }
  FqElem& operator*=(FqElem o) { return *this = *this * o; }

  bool operator==(FqElem o) const;
  bool operator!=(FqElem o) const { return !(*this == o); }

  std::string str() const;
};

// Immutable finite-field context. Obtain through Fq::get; instances live for
// the whole process and are safe to share across threads.
//
// Supported sizes: prime q <= 127, and the extension fields 4, 8, 9, 16, 25,
// 27 with a fixed defining modulus (the least monic irreducible of the right
// degree in canonical order). The generator class of X is printed as "w".
class Fq {
 public:
  static const Fq& get(int q);

  int p() const { return p_; }
  int m() const { return m_; }
  int q() const { return q_; }

  FqElem zero() const { return FqElem(*this, 0); }
  FqElem one() const { return FqElem(*this, 1); }
  FqElem elem(int idx) const { return FqElem(*this, idx); }
  // Image of an integer under Z -> F_p \subseteq F_q.
  FqElem from_int(long long n) const;
  // The class of X in F_p[X]/(modulus); only defined for m > 1.
  FqElem gen() const;

  // Defining modulus coefficients over Z_p, constant first, length m+1.
  const std::vector<int>& modulus() const { return modulus_; }

  // Index-level arithmetic used by FqElem and the dense linear algebra.
  int add(int a, int b) const;
  int sub(int a, int b) const;
  int neg(int a) const;
  int mul(int a, int b) const { return mul_[a * q_ + b]; }
  int inv(int a) const;
  int pow(int a, long long e) const;

  std::vector<int> coords(int idx) const;  // base-p digits, length m
  std::string elem_str(int idx) const;

 private:
  explicit Fq(int q);

  int p_ = 0, m_ = 0, q_ = 0;
  std::vector<int> modulus_;
  std::vector<std::uint16_t> add_;  // q*q
  std::vector<std::uint16_t> mul_;  // q*q
  std::vector<std::uint16_t> inv_;  // q, inv_[0] unused
  std::vector<std::uint16_t> neg_;  // q
};

inline FqElem::FqElem(const Fq& field, int idx) : F(&field), v(static_cast<std::uint16_t>(idx)) {
  if (idx < 0 || idx >= field.q()) throw std::invalid_argument("field element index out of range");
}

inline void require_same_field(const FqElem& a, const FqElem& b) {
  if (a.F != b.F) throw std::invalid_argument("mixed finite fields in element arithmetic");
}

inline FqElem FqElem::operator+(FqElem o) const {
  require_same_field(*this, o);
  return FqElem(*F, F->add(v, o.v));
}
inline FqElem FqElem::operator-(FqElem o) const {
  require_same_field(*this, o);
  return FqElem(*F, F->sub(v, o.v));
}
inline FqElem FqElem::operator-() const { return FqElem(*F, F->neg(v)); }
inline FqElem FqElem::operator*(FqElem o) const {
  require_same_field(*this, o);
  return FqElem(*F, F->mul(v, o.v));
}
inline FqElem FqElem::inverse() const { return FqElem(*F, F->inv(v)); }
inline FqElem FqElem::pow(long long e) const { return FqElem(*F, F->pow(v, e)); }
inline bool FqElem::operator==(FqElem o) const {
  require_same_field(*this, o);
  return v == o.v;
}
inline std::string FqElem::str() const { return F->elem_str(v); }

}  // namespace carlitz
