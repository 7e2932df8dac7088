#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "carlitz/fq.hpp"

namespace carlitz {

// Element of A = F_q[T]. Coefficients run constant-first and the top
// coefficient is always nonzero (the zero polynomial stores no coefficients,
// degree -1). Values are immutable in spirit: every operation returns a new
// polynomial.
class Poly {
 public:
  Poly() = default;
  explicit Poly(const Fq& F) : F_(&F) {}
  Poly(const Fq& F, std::vector<FqElem> coeffs);

  static Poly zero(const Fq& F) { return Poly(F); }
  static Poly one(const Fq& F) { return constant(F.one()); }
  static Poly T(const Fq& F);
  static Poly constant(FqElem c);
  static Poly monomial(FqElem c, int k);
  // Polynomial whose coefficient vector is the base-q digit string of idx,
  // constant digit first. Index order equals the canonical poly order.
  static Poly from_index(const Fq& F, std::uint64_t idx);

  const Fq& field() const;
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  FqElem coeff(int i) const;
  FqElem lc() const;
  std::uint64_t index() const;  // inverse of from_index; guards overflow

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly operator*(FqElem s) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  // Quotient and remainder; divisor must be nonzero.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly operator/(const Poly& d) const { return divmod(d).first; }
  Poly operator%(const Poly& d) const { return divmod(d).second; }
  bool divides(const Poly& multiple) const;

  Poly monic() const;  // divide by the leading coefficient
  Poly derivative() const;
  Poly pow(long long e) const;
  FqElem eval(FqElem x) const;
  // T -> T^q coefficientwise Frobenius image, equals the q-th power as an
  // element of A but costs O(deg) instead of a full power.
  Poly frobenius_q() const;

  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string str() const;
  // Parses the term grammar "c*T^k + ...", integer coefficients for the prime
  // subfield, "w^j" or "[c0,c1,...]" coefficients in extension fields.
  static Poly parse(const Fq& F, const std::string& text);

 private:
  const Fq* F_ = nullptr;
  std::vector<FqElem> c_;
  void trim();
};

// Canonical order: by degree, then by coefficient indices from the top down.
// Matches the from_index enumeration order.
bool poly_less(const Poly& a, const Poly& b);

struct XgcdResult {
  Poly g;  // monic gcd (zero iff both inputs are zero -> error instead)
  Poly s, t;  // Bezout pair: s*a + t*b = g
};
XgcdResult xgcd(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
Poly lcm(const Poly& a, const Poly& b);

// Chinese remainder lift: unique r mod prod(moduli) with r = residues[i]
// mod moduli[i]; moduli must be pairwise coprime and nonconstant-free input
// is rejected. Throws std::invalid_argument on non-coprime moduli.
Poly crt(const std::vector<Poly>& residues, const std::vector<Poly>& moduli);

struct Factorization {
  FqElem unit;  // leading coefficient of the input
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, multiplicity
  Poly product() const;  // unit * prod factors^mult
};

// Deterministic factorization: squarefree split, distinct-degree split, then
// equal-degree split probing candidate elements in canonical order.
Factorization factor(const Poly& f);
bool is_irreducible(const Poly& f);

// Number of units of A/(M): prod over factors of q^(d n) - q^(d (n-1)).
// Throws on constant or zero M, and on overflow past 2^62.
std::uint64_t euler_phi(const Poly& M);

// Monic divisors of M in canonical order, including 1 and M.
std::vector<Poly> monic_divisors(const Poly& M);

// Multiplicity of the factor d in f (f nonzero).
int multiplicity(const Poly& f, const Poly& d);

// All q^bound polynomials of degree < bound in canonical order.
std::vector<Poly> residues_below(const Fq& F, int bound);

// Representatives of (A/M)^* in canonical order.
std::vector<Poly> unit_residues(const Poly& M);

}  // namespace carlitz
