#include "carlitz/unitsum.hpp"

#include <stdexcept>

namespace carlitz {

namespace {

// Nonzero residues r_1..r_n mod the prime P with r_1 + ... + r_n = target,
// chosen canonically (least usable residue first). n is 2 or 3; callers
// guarantee a choice exists (residue field size 2 only with matching parity).
std::vector<Poly> split_at_prime(const Poly& P, const Poly& target_in, int n) {
  const Fq& F = P.field();
  Poly target = target_in % P;
  auto reduced = [&](const Poly& x) { return x % P; };
  std::vector<Poly> residues = residues_below(F, P.degree());

  if (n == 2) {
    for (const Poly& r1 : residues) {
      if (r1.is_zero()) continue;
      Poly r2 = reduced(target - r1);
      if (!r2.is_zero()) return {r1, r2};
    }
    throw std::logic_error("no 2-term unit split at prime " + P.str());
  }
  // n == 3
  for (const Poly& r1 : residues) {
    if (r1.is_zero()) continue;
    Poly t = reduced(target - r1);
    for (const Poly& r2 : residues) {
      if (r2.is_zero()) continue;
      Poly r3 = reduced(t - r2);
      if (!r3.is_zero()) return {r1, r2, r3};
    }
  }
  throw std::logic_error("no 3-term unit split at prime " + P.str());
}

}  // namespace

bool unit_sum_feasible(const Poly& f, const Poly& M) {
  if (M.degree() < 1) throw std::invalid_argument("unit sum needs nonconstant modulus");
  const Fq& F = M.field();
  if (F.q() != 2) return true;
  Poly t = Poly::T(F);
  Poly t1 = t + Poly::one(F);
  if (!t.divides(M) || !t1.divides(M)) return true;
  return f.eval(F.zero()) == f.eval(F.one());
}

UnitSumResult decompose_units(const Poly& f, const Poly& M) {
  if (M.degree() < 1) throw std::invalid_argument("unit sum needs nonconstant modulus");
  const Fq& F = M.field();
  UnitSumResult out;
  Poly fr = f % M;

  if (!fr.is_zero() && gcd(fr, M).is_one()) {
    out.feasible = true;
    out.summands = {fr};
    return out;
  }

  if (fr.is_zero()) {
    // f = (f - 1) + 1 with both terms prime to M
    out.feasible = true;
    out.summands = {Poly::constant(-F.one()), Poly::one(F)};
    return out;
  }

  if (!unit_sum_feasible(f, M)) {
    out.feasible = false;
    out.witness = {f.eval(F.zero()), f.eval(F.one())};
    return out;
  }

  auto fac = factor(M);
  std::vector<Poly> primes;
  for (auto& [g, e] : fac.factors) primes.push_back(g);

  int n = 2;
  if (F.q() == 2) {
    // Unit residues mod a degree-one prime are all 1, so the summand count
    // must match the parity of f at that place.
    Poly t = Poly::T(F);
    Poly t1 = t + Poly::one(F);
    int parity = -1;
    if (t.divides(M)) parity = fr.eval(F.zero()).v;
    else if (t1.divides(M)) parity = fr.eval(F.one()).v;
    if (parity == 1) n = 3;
  }

  std::vector<std::vector<Poly>> per_prime;  // per_prime[i][j]: residue mod primes[i]
  for (const Poly& P : primes) per_prime.push_back(split_at_prime(P, fr, n));

  out.feasible = true;
  Poly running = Poly::zero(F);
  for (int j = 0; j + 1 < n; ++j) {
    std::vector<Poly> residues;
    for (std::size_t i = 0; i < primes.size(); ++i) residues.push_back(per_prime[i][j]);
    Poly u = crt(residues, primes) % M;
    out.summands.push_back(u);
    running += u;
  }
  out.summands.push_back((fr - running) % M);

  // Defensive soundness: sum correct, every summand a unit.
  Poly total = Poly::zero(F);
  for (const Poly& u : out.summands) {
    if (!gcd(u, M).is_one()) throw std::logic_error("unit sum produced a non-unit summand");
    total += u;
  }
  if (!((total - fr) % M).is_zero()) throw std::logic_error("unit sum does not add up");
  return out;
}

}  // namespace carlitz
