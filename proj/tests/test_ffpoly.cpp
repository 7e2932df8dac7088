#include "doctest.h"

#include <set>

#include "carlitz/fq.hpp"
#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"
#include "support.hpp"

using namespace carlitz;
using testsup::P;
using testsup::RF;

TEST_CASE("defining moduli are the canonical least irreducibles") {
  CHECK(Fq::get(4).modulus() == std::vector<int>{1, 1, 1});        // X^2+X+1
  CHECK(Fq::get(8).modulus() == std::vector<int>{1, 1, 0, 1});     // X^3+X+1
  CHECK(Fq::get(16).modulus() == std::vector<int>{1, 1, 0, 0, 1});  // X^4+X+1
  CHECK(Fq::get(9).modulus() == std::vector<int>{1, 0, 1});        // X^2+1
  CHECK(Fq::get(25).modulus() == std::vector<int>{2, 0, 1});       // X^2+2
  CHECK(Fq::get(27).modulus() == std::vector<int>{1, 2, 0, 1});    // X^3+2X+1
}

TEST_CASE("field axioms by exhaustion") {
  for (int q : {2, 3, 4, 5, 8, 9}) {
    const Fq& F = Fq::get(q);
    for (int a = 0; a < q; ++a) {
      FqElem ea = F.elem(a);
      CHECK(ea + F.zero() == ea);
      CHECK(ea * F.one() == ea);
      CHECK(ea + (-ea) == F.zero());
      if (a != 0) CHECK(ea * ea.inverse() == F.one());
      CHECK(ea.pow(q) == ea);  // Frobenius fixes F_q
      for (int b = 0; b < q; ++b) {
        FqElem eb = F.elem(b);
        CHECK(ea + eb == eb + ea);
        CHECK(ea * eb == eb * ea);
        for (int c = 0; c < q; ++c) {
          FqElem ec = F.elem(c);
          CHECK((ea + eb) + ec == ea + (eb + ec));
          CHECK((ea * eb) * ec == ea * (eb * ec));
          CHECK(ea * (eb + ec) == ea * eb + ea * ec);
        }
      }
    }
  }
}

TEST_CASE("mixed-field arithmetic is rejected") {
  CHECK_THROWS_AS(Fq::get(2).one() + Fq::get(3).one(), std::invalid_argument);
  CHECK_THROWS_AS(P(2, "T") * P(3, "T"), std::invalid_argument);
}

TEST_CASE("unsupported field sizes are rejected") {
  CHECK_THROWS_AS(Fq::get(1), std::invalid_argument);
  CHECK_THROWS_AS(Fq::get(6), std::invalid_argument);
  CHECK_THROWS_AS(Fq::get(32), std::invalid_argument);
  CHECK_THROWS_AS(Fq::get(131), std::invalid_argument);
}

TEST_CASE("polynomial parser and printer invert each other") {
  for (int q : {2, 3, 4, 9}) {
    const Fq& F = Fq::get(q);
    for (std::uint64_t idx = 0; idx < 200; ++idx) {
      Poly p = Poly::from_index(F, idx * 7 + 1);
      CHECK(Poly::parse(F, p.str()) == p);
    }
  }
  CHECK(P(3, "T^2-1") == P(3, "T^2+2"));
  CHECK(P(3, "2*T^3+T") == P(3, "T+2*T^3"));
  CHECK(P(3, "2T") == P(3, "2*T"));
  CHECK(P(4, "w*T+w^2").coeff(1) == Fq::get(4).gen());
  CHECK(P(4, "[1,1]*T") == P(4, "T") + P(4, "w*T"));
  CHECK(P(2, "0").is_zero());
  CHECK(P(5, "T^0") == Poly::one(Fq::get(5)));
}

TEST_CASE("parse errors carry a column") {
  try {
    P(3, "T^2 + %");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.column == 7);
  }
  CHECK_THROWS_AS(P(3, ""), ParseError);
  CHECK_THROWS_AS(P(3, "w*T"), ParseError);       // w needs an extension field
  CHECK_THROWS_AS(P(3, "T^"), ParseError);
  CHECK_THROWS_AS(P(4, "[1,1,1]*T"), ParseError);  // vector longer than field degree
}

TEST_CASE("division invariant a = q b + r with deg r < deg b") {
  for (int q : {2, 3, 4, 5}) {
    const Fq& F = Fq::get(q);
    for (int trial = 0; trial < 200; ++trial) {
      Poly a = testsup::random_poly(F, 8);
      Poly b = testsup::random_poly(F, 5, true);
      auto [quo, rem] = a.divmod(b);
      CHECK(quo * b + rem == a);
      CHECK(rem.degree() < b.degree());
    }
  }
  CHECK_THROWS_AS(P(2, "T").divmod(Poly::zero(Fq::get(2))), std::invalid_argument);
}

TEST_CASE("extended gcd returns a monic gcd and a Bezout pair") {
  for (int q : {2, 3, 4}) {
    const Fq& F = Fq::get(q);
    for (int trial = 0; trial < 200; ++trial) {
      Poly a = testsup::random_poly(F, 6);
      Poly b = testsup::random_poly(F, 6);
      if (a.is_zero() && b.is_zero()) continue;
      auto r = xgcd(a, b);
      CHECK(r.g.is_monic());
      CHECK(r.s * a + r.t * b == r.g);
      if (!a.is_zero()) CHECK(r.g.divides(a));
      if (!b.is_zero()) CHECK(r.g.divides(b));
    }
  }
  CHECK_THROWS_AS(xgcd(Poly::zero(Fq::get(2)), Poly::zero(Fq::get(2))), std::invalid_argument);
  CHECK(gcd(Poly::zero(Fq::get(3)), P(3, "2*T")) == P(3, "T"));
}

TEST_CASE("chinese remainder lift") {
  const Fq& F = Fq::get(3);
  Poly m1 = P(3, "T"), m2 = P(3, "T+1"), m3 = P(3, "T^2+1");
  Poly x = P(3, "T^3+2*T+1");
  Poly r = crt({x % m1, x % m2, x % m3}, {m1, m2, m3});
  CHECK(((r - x) % (m1 * m2 * m3)).is_zero());
  CHECK_THROWS_AS(crt({P(3, "1"), P(3, "2")}, {P(3, "T"), P(3, "T^2")}),
                  std::invalid_argument);
  (void)F;
}

TEST_CASE("factorization known answers") {
  auto f1 = factor(P(2, "T^2+T+1"));
  REQUIRE(f1.factors.size() == 1);
  CHECK(f1.factors[0].second == 1);

  // T^4 + T = T (T+1) (T^2+T+1) over F_2
  auto f2 = factor(P(2, "T^4+T"));
  REQUIRE(f2.factors.size() == 3);
  CHECK(f2.factors[0].first == P(2, "T"));
  CHECK(f2.factors[1].first == P(2, "T+1"));
  CHECK(f2.factors[2].first == P(2, "T^2+T+1"));

  // repeated factors, non-monic input
  auto f3 = factor(P(3, "2*T^4+4*T^3+2*T^2"));  // 2 T^2 (T+1)^2
  CHECK(f3.unit == Fq::get(3).from_int(2));
  REQUIRE(f3.factors.size() == 2);
  CHECK(f3.factors[0].first == P(3, "T"));
  CHECK(f3.factors[0].second == 2);
  CHECK(f3.factors[1].first == P(3, "T+1"));
  CHECK(f3.factors[1].second == 2);

  // derivative-zero branch: (T^2+1)^3 = T^6 + 3 T^4 ... over F_3 is g(T^3)
  auto f4 = factor(P(3, "T^2+1").pow(3));
  REQUIRE(f4.factors.size() == 1);
  CHECK(f4.factors[0].first == P(3, "T^2+1"));
  CHECK(f4.factors[0].second == 3);
}

TEST_CASE("factor-back round trip on random inputs") {
  for (int q : {2, 3, 4, 5, 9}) {
    const Fq& F = Fq::get(q);
    for (int trial = 0; trial < 120; ++trial) {
      Poly f = testsup::random_poly(F, 7, true);
      if (f.degree() < 1) continue;
      auto fac = factor(f);
      CHECK(fac.product() == f);
      for (auto& [g, e] : fac.factors) {
        CHECK(g.is_monic());
        CHECK(is_irreducible(g));
        CHECK(multiplicity(f, g) == e);
      }
      for (std::size_t i = 1; i < fac.factors.size(); ++i)
        CHECK(poly_less(fac.factors[i - 1].first, fac.factors[i].first));
    }
  }
}

TEST_CASE("irreducibility test agrees with factorization on small grids") {
  for (int q : {2, 3}) {
    const Fq& F = Fq::get(q);
    std::uint64_t qq = q;
    for (int d = 1; d <= 4; ++d) {
      std::uint64_t lo = 1;
      for (int i = 0; i < d; ++i) lo *= qq;
      for (std::uint64_t idx = lo; idx < 2 * lo; ++idx) {
        Poly f = Poly::from_index(F, idx);  // monic of degree d
        bool via_factor = factor(f).factors.size() == 1 && factor(f).factors[0].second == 1;
        CHECK(is_irreducible(f) == via_factor);
      }
    }
  }
}

TEST_CASE("euler phi matches the unit count oracle") {
  for (int q : {2, 3, 4, 5}) {
    const Fq& F = Fq::get(q);
    std::uint64_t qq = q;
    for (int d = 1; d * (q > 3 ? 2 : 1) <= 6 && qq <= 729; ++d) {
      std::uint64_t lo = 1;
      for (int i = 0; i < d; ++i) lo *= qq;
      if (lo > 729) break;
      for (std::uint64_t idx = lo; idx < 2 * lo; ++idx) {
        Poly M = Poly::from_index(F, idx);
        std::uint64_t units = 0;
        for (const Poly& r : residues_below(F, d))
          if (!r.is_zero() && gcd(r, M).is_one()) ++units;
        CHECK(euler_phi(M) == units);
      }
    }
  }
  CHECK(euler_phi(P(3, "T")) == 2);
  CHECK(euler_phi(P(3, "T^2")) == 6);
  CHECK(euler_phi(P(3, "T^2+T")) == 4);
  CHECK(euler_phi(P(2, "T^2+T")) == 1);
  CHECK_THROWS_AS(euler_phi(P(3, "2")), std::invalid_argument);
}

TEST_CASE("monic divisors are sorted and complete") {
  Poly M = P(2, "T^3+T^2");  // T^2 (T+1)
  auto divs = monic_divisors(M);
  REQUIRE(divs.size() == 6);
  CHECK(divs.front().is_one());
  CHECK(divs.back() == M);
  for (std::size_t i = 1; i < divs.size(); ++i) CHECK(poly_less(divs[i - 1], divs[i]));
  for (const Poly& d : divs) CHECK(d.divides(M));
}

TEST_CASE("canonical index enumeration matches the order") {
  const Fq& F = Fq::get(3);
  auto rs = residues_below(F, 2);
  REQUIRE(rs.size() == 9);
  CHECK(rs[0].is_zero());
  CHECK(rs[1].is_one());
  CHECK(rs[3] == P(3, "T"));
  CHECK(rs[4] == P(3, "T+1"));
  for (std::size_t i = 1; i < rs.size(); ++i) CHECK(poly_less(rs[i - 1], rs[i]));
  for (std::size_t i = 0; i < rs.size(); ++i) CHECK(rs[i].index() == i);
}

TEST_CASE("unit residues are exactly the invertible classes") {
  Poly M = P(3, "T^2");
  auto us = unit_residues(M);
  CHECK(us.size() == euler_phi(M));
  for (auto& u : us) CHECK(gcd(u, M).is_one());
}

TEST_CASE("rational functions normalize to lowest terms with monic denominator") {
  RatFunc r(P(3, "2*T^2+2*T"), P(3, "2*T^2"));  // (2T(T+1)) / (2T^2) = (T+1)/T
  CHECK(r.num() == P(3, "T+1"));
  CHECK(r.den() == P(3, "T"));
  CHECK(r + (-r) == RatFunc::zero(Fq::get(3)));
  CHECK(r * r.inverse() == RatFunc::one(Fq::get(3)));
  CHECK_THROWS_AS(RatFunc::zero(Fq::get(3)).inverse(), ZeroDivisor);
  CHECK_THROWS_AS(RatFunc(P(3, "1"), Poly::zero(Fq::get(3))), std::invalid_argument);

  CHECK(RF(3, "(T^2+1)/(T+1)").str() == "(T^2+1)/(T+1)");
  CHECK(RF(3, RF(3, "T^2/T").str()) == RF(3, "T"));
  CHECK(RF(2, "1/T").valuation(P(2, "T")) == -1);
  CHECK(RF(2, "T^3/(T+1)").valuation(P(2, "T")) == 3);
  CHECK(RF(3, "(T^2+1)/T").degree() == 1);
}

TEST_CASE("rational field laws on random samples") {
  for (int q : {2, 3, 4}) {
    const Fq& F = Fq::get(q);
    for (int trial = 0; trial < 80; ++trial) {
      RatFunc a = testsup::random_ratfunc(F, 3);
      RatFunc b = testsup::random_ratfunc(F, 3);
      RatFunc c = testsup::random_ratfunc(F, 3);
      CHECK((a + b) * c == a * c + b * c);
      CHECK(a - a == RatFunc::zero(F));
      if (!a.is_zero()) CHECK(a / a == RatFunc::one(F));
      CHECK(a.frobenius_q() == a.pow(F.q()));
    }
  }
}
