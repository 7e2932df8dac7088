#include "doctest.h"

#include "carlitz/action.hpp"
#include "carlitz/fq.hpp"
#include "carlitz/poly.hpp"
#include "carlitz/ratfunc.hpp"
#include "support.hpp"

using namespace carlitz;
using testsup::P;
using testsup::RF;

TEST_CASE("action coefficients: hand values") {
  // phi_T = T + tau, so coefficient 0 is T and coefficient 1 is 1.
  CHECK(carlitz_coeff(P(3, "T"), 0) == P(3, "T"));
  CHECK(carlitz_coeff(P(3, "T"), 1) == P(3, "1"));

  // phi_{T^2} = phi_T o phi_T = T^2 + (T^3 + T) tau + tau^2 over F_3.
  CHECK(carlitz_coeff(P(3, "T^2"), 0) == P(3, "T^2"));
  CHECK(carlitz_coeff(P(3, "T^2"), 1) == P(3, "T^3+T"));
  CHECK(carlitz_coeff(P(3, "T^2"), 2) == P(3, "1"));

  CHECK_THROWS_AS(carlitz_coeff(P(3, "T^2"), 3), std::out_of_range);
  CHECK_THROWS_AS(carlitz_coeff(P(3, "T^2"), -1), std::out_of_range);
  CHECK_THROWS_AS(carlitz_coeff(Poly::zero(Fq::get(3)), 0), std::invalid_argument);
}

TEST_CASE("action coefficient degree law") {
  // Coefficient i of phi_M has degree (d - i) q^i where d = deg M; the ends
  // are pinned: coefficient 0 is M itself, coefficient d is the leading
  // coefficient of M.
  for (int q : {2, 3, 4}) {
    const Fq& F = Fq::get(q);
    std::uint64_t qq = q;
    for (int d = 1; d <= 3; ++d) {
      std::uint64_t lo = 1;
      for (int i = 0; i < d; ++i) lo *= qq;
      for (std::uint64_t idx = lo; idx < 2 * lo && idx < lo + 40; ++idx) {
        Poly M = Poly::from_index(F, idx);
        std::int64_t qi = 1;
        for (int i = 0; i <= d; ++i) {
          CHECK(carlitz_coeff(M, i).degree() == (d - i) * qi);
          qi *= q;
        }
        CHECK(carlitz_coeff(M, d) == Poly::constant(M.lc()));
        CHECK(carlitz_coeff(M, 0) == M);
      }
    }
  }
}

TEST_CASE("action is A-linear and multiplicative") {
  for (int q : {2, 3}) {
    const Fq& F = Fq::get(q);
    Rank1Module C = Rank1Module::carlitz(F);
    for (int trial = 0; trial < 40; ++trial) {
      Poly M = testsup::random_poly(F, 2, true);
      Poly N = testsup::random_poly(F, 2, true);
      RatFunc x = testsup::random_ratfunc(F, 2);
      RatFunc y = testsup::random_ratfunc(F, 2);
      CHECK(act(C, M * N, x) == act(C, M, act(C, N, x)));
      CHECK(act(C, M + N, x) == act(C, M, x) + act(C, N, x));
      CHECK(act(C, M, x + y) == act(C, M, x) + act(C, M, y));
    }
  }
}

TEST_CASE("action frozen value in the rational field") {
  const Fq& F2 = Fq::get(2);
  Rank1Module C = Rank1Module::carlitz(F2);
  // phi_T(1/(T+1)) = T/(T+1) + 1/(T+1)^2 = (T^2+T+1)/(T+1)^2
  RatFunc x = RF(2, "1/(T+1)");
  CHECK(act(C, P(2, "T"), x) == RF(2, "(T^2+T+1)/(T^2+1)"));
}

TEST_CASE("twisted module phi_T = T + a tau") {
  const Fq& F3 = Fq::get(3);
  Rank1Module Ca(RF(3, "T"));
  CHECK_FALSE(Ca.is_carlitz());
  RatFunc z = RatFunc::zero(F3);

  auto apT = action_poly(Ca, P(3, "T"));
  CHECK(apT.coeff(0, z) == RF(3, "T"));
  CHECK(apT.coeff(1, z) == RF(3, "T"));

  // phi_{T^2} = (T + a tau)^2 = T^2 + (a T + a T^q) tau + a^{1+q} tau^2,
  // which at a = T, q = 3 is T^2 + (T^4 + T^2) tau + T^4 tau^2.
  auto apT2 = action_poly(Ca, P(3, "T^2"));
  CHECK(apT2.coeff(0, z) == RF(3, "T^2"));
  CHECK(apT2.coeff(1, z) == RF(3, "T^4+T^2"));
  CHECK(apT2.coeff(2, z) == RF(3, "T^4"));

  // The action stays A-multiplicative for any a.
  RatFunc x = RF(3, "1/T");
  CHECK(act(Ca, P(3, "T^2+T"), x) == act(Ca, P(3, "T"), act(Ca, P(3, "T+1"), x)));
  CHECK_THROWS_AS(Rank1Module(RatFunc::zero(F3)), std::invalid_argument);
}

TEST_CASE("action polynomial evaluates like its dense expansion") {
  const Fq& F3 = Fq::get(3);
  Rank1Module C = Rank1Module::carlitz(F3);
  Poly M = P(3, "T^2+1");
  auto qp = action_poly(C, M);
  auto dense = qp.dense();
  CHECK(dense.degree() == 9);  // q^{deg M}
  for (int trial = 0; trial < 25; ++trial) {
    RatFunc x = testsup::random_ratfunc(F3, 2);
    CHECK(act(C, M, x) == dense.eval(x));
  }
}

TEST_CASE("scalar action is plain multiplication") {
  const Fq& F5 = Fq::get(5);
  Rank1Module C = Rank1Module::carlitz(F5);
  RatFunc x = RF(5, "(T+2)/(T^2+3)");
  CHECK(act(C, P(5, "3"), x) == RatFunc(Poly::constant(F5.from_int(3))) * x);
}
