#pragma once

#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"

namespace testsup {

using carlitz::Fq;
using carlitz::Poly;
using carlitz::RatFunc;

inline Poly P(int q, const std::string& s) { return Poly::parse(Fq::get(q), s); }
inline RatFunc RF(int q, const std::string& s) { return RatFunc::parse(Fq::get(q), s); }

// Deterministic generator for property tests.
inline std::mt19937& rng() {
  static std::mt19937 engine(0x5eed1234);
  return engine;
}

inline Poly random_poly(const Fq& F, int max_deg, bool nonzero = false) {
  std::uniform_int_distribution<int> ddeg(nonzero ? 0 : -1, max_deg);
  for (;;) {
    int d = ddeg(rng());
    if (d < 0) return Poly::zero(F);
    std::vector<carlitz::FqElem> c;
    std::uniform_int_distribution<int> delem(0, F.q() - 1);
    for (int i = 0; i < d; ++i) c.push_back(F.elem(delem(rng())));
    std::uniform_int_distribution<int> dlead(1, F.q() - 1);
    c.push_back(F.elem(dlead(rng())));
    Poly r(F, std::move(c));
    if (!nonzero || !r.is_zero()) return r;
  }
}

inline RatFunc random_ratfunc(const Fq& F, int max_deg) {
  Poly num = random_poly(F, max_deg);
  Poly den = random_poly(F, max_deg, true);
  return RatFunc(num, den);
}

// Every rational function with numerator degree <= nd and monic-scaled
// denominator degree <= dd (denominators monic; numerators arbitrary).
inline std::vector<RatFunc> all_ratfuncs(const Fq& F, int nd, int dd) {
  std::vector<RatFunc> out;
  std::uint64_t ncount = 1;
  for (int i = 0; i <= nd; ++i) ncount *= F.q();
  for (std::uint64_t ni = 0; ni < ncount; ++ni) {
    Poly num = Poly::from_index(F, ni);
    for (int d = 0; d <= dd; ++d) {
      std::uint64_t dcount = 1;
      for (int i = 0; i < d; ++i) dcount *= F.q();
      for (std::uint64_t di = 0; di < dcount; ++di) {
        Poly den = Poly::from_index(F, di) + Poly::monomial(F.one(), d);
        out.push_back(RatFunc(num, den));
      }
    }
  }
  return out;
}

}  // namespace testsup
