#include "carlitz/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "carlitz/caps.hpp"

namespace carlitz {

Poly::Poly(const Fq& F, std::vector<FqElem> coeffs) : F_(&F), c_(std::move(coeffs)) {
  for (auto& x : c_)
    if (x.F != F_) throw std::invalid_argument("coefficient from a different field");
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::T(const Fq& F) { return monomial(F.one(), 1); }

Poly Poly::constant(FqElem c) {
  Poly r(*c.F);
  if (!c.is_zero()) r.c_.push_back(c);
  return r;
}

Poly Poly::monomial(FqElem c, int k) {
  if (k < 0) throw std::invalid_argument("negative monomial degree");
  Poly r(*c.F);
  if (!c.is_zero()) {
    r.c_.assign(k, c.F->zero());
    r.c_.push_back(c);
  }
  return r;
}

Poly Poly::from_index(const Fq& F, std::uint64_t idx) {
  Poly r(F);
  while (idx > 0) {
    r.c_.push_back(F.elem(static_cast<int>(idx % F.q())));
    idx /= F.q();
  }
  return r;
}

const Fq& Poly::field() const {
  if (!F_) throw std::logic_error("polynomial without a field context");
  return *F_;
}

FqElem Poly::coeff(int i) const {
  if (i < 0) throw std::invalid_argument("coefficient index out of range");
  if (i >= static_cast<int>(c_.size())) return field().zero();
  return c_[i];
}

FqElem Poly::lc() const {
  if (c_.empty()) throw std::invalid_argument("leading coefficient of zero");
  return c_.back();
}

std::uint64_t Poly::index() const {
  std::uint64_t idx = 0;
  for (int i = degree(); i >= 0; --i) {
    std::uint64_t next = idx * field().q() + c_[i].v;
    if (next < idx) throw std::overflow_error("polynomial index overflow");
    idx = next;
  }
  return idx;
}

namespace {
const Fq* common_field(const Poly& a, const Poly& b) {
  const Fq& fa = a.field();
  const Fq& fb = b.field();
  if (&fa != &fb) throw std::invalid_argument("mixed fields in polynomial arithmetic");
  return &fa;
}
}  // namespace

Poly Poly::operator+(const Poly& o) const {
  const Fq* F = common_field(*this, o);
  std::vector<FqElem> r(std::max(c_.size(), o.c_.size()), F->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
  for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return Poly(*F, std::move(r));
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

Poly Poly::operator*(const Poly& o) const {
  const Fq* F = common_field(*this, o);
  if (is_zero() || o.is_zero()) return Poly(*F);
  std::vector<FqElem> r(c_.size() + o.c_.size() - 1, F->zero());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  }
  return Poly(*F, std::move(r));
}

Poly Poly::operator*(FqElem s) const {
  Poly r = *this;
  for (auto& x : r.c_) x *= s;
  r.trim();
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& d) const {
  common_field(*this, d);
  if (d.is_zero()) throw std::invalid_argument("division by zero polynomial");
  const Fq& F = field();
  Poly q(F), r = *this;
  int dd = d.degree();
  FqElem inv_lc = d.lc().inverse();
  if (r.degree() >= dd) q.c_.assign(r.degree() - dd + 1, F.zero());
  while (r.degree() >= dd) {
    int k = r.degree() - dd;
    FqElem c = r.lc() * inv_lc;
    q.c_[k] = c;
    // r -= c * T^k * d, done in place
    for (int i = 0; i <= dd; ++i) r.c_[k + i] -= c * d.c_[i];
    r.trim();
  }
  q.trim();
  return {q, r};
}

bool Poly::divides(const Poly& multiple) const { return (multiple % *this).is_zero(); }

Poly Poly::monic() const {
  if (is_zero()) throw std::invalid_argument("monic normalization of zero");
  return *this * lc().inverse();
}

Poly Poly::derivative() const {
  const Fq& F = field();
  Poly r(F);
  if (degree() < 1) return r;
  r.c_.assign(degree(), F.zero());
  for (int i = 1; i <= degree(); ++i) r.c_[i - 1] = c_[i] * F.from_int(i);
  r.trim();
  return r;
}

Poly Poly::pow(long long e) const {
  if (e < 0) throw std::invalid_argument("negative polynomial power");
  Poly r = Poly::one(field()), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

FqElem Poly::eval(FqElem x) const {
  FqElem r = field().zero();
  for (int i = degree(); i >= 0; --i) r = r * x + c_[i];
  return r;
}

Poly Poly::frobenius_q() const {
  const Fq& F = field();
  Poly r(F);
  if (is_zero()) return r;
  r.c_.assign(static_cast<std::size_t>(degree()) * F.q() + 1, F.zero());
  for (int i = 0; i <= degree(); ++i) r.c_[static_cast<std::size_t>(i) * F.q()] = c_[i];
  r.trim();
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (c_.size() != o.c_.size()) return false;
  if (!c_.empty()) common_field(*this, o);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (c_[i] != o.c_[i]) return false;
  return true;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (int i = a.degree(); i >= 0; --i)
    if (a.coeff(i).v != b.coeff(i).v) return a.coeff(i).v < b.coeff(i).v;
  return false;
}

// ---------------------------------------------------------------------------
// printing

std::string Poly::str() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    if (c_[i].is_zero()) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << c_[i].str();
      continue;
    }
    if (!c_[i].is_one()) os << c_[i].str() << "*";
    os << (i == 1 ? "T" : "T^" + std::to_string(i));
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Cursor {
  const std::string& s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool done() {
    skip_ws();
    return i >= s.size();
  }
  char peek() {
    skip_ws();
    return i < s.size() ? s[i] : '\0';
  }
  char take() {
    skip_ws();
    if (i >= s.size()) throw ParseError("unexpected end of input", i + 1);
    return s[i++];
  }
  std::size_t col() { return i + 1; }

  long long integer() {
    skip_ws();
    std::size_t start = i;
    bool neg = false;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) {
      neg = s[i] == '-';
      ++i;
    }
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
      throw ParseError("expected integer", start + 1);
    long long v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      v = v * 10 + (s[i] - '0');
      if (v > (1LL << 40)) throw ParseError("integer literal too large", start + 1);
      ++i;
    }
    return neg ? -v : v;
  }
};

int parse_exponent(Cursor& cur) {
  if (cur.peek() == '^') {
    cur.take();
    long long e = cur.integer();
    if (e < 0) throw ParseError("negative exponent", cur.col());
    if (e > 1000) throw ParseError("exponent too large", cur.col());
    return static_cast<int>(e);
  }
  return 1;
}

FqElem parse_coeff(const Fq& F, Cursor& cur) {
  char c = cur.peek();
  if (c == 'w') {
    cur.take();
    if (F.m() == 1)
      throw ParseError("generator w needs an extension field", cur.col());
    return F.gen().pow(parse_exponent(cur));
  }
  if (c == '[') {
    cur.take();
    std::vector<long long> coords;
    for (;;) {
      coords.push_back(cur.integer());
      char nxt = cur.take();
      if (nxt == ']') break;
      if (nxt != ',') throw ParseError("expected ',' or ']'", cur.col());
    }
    if (static_cast<int>(coords.size()) > F.m())
      throw ParseError("coordinate vector longer than field degree", cur.col());
    int idx = 0;
    for (int i = static_cast<int>(coords.size()) - 1; i >= 0; --i) {
      long long r = coords[i] % F.p();
      if (r < 0) r += F.p();
      idx = idx * F.p() + static_cast<int>(r);
    }
    return F.elem(idx);
  }
  return F.from_int(cur.integer());
}

Poly parse_term(const Fq& F, Cursor& cur) {
  char c = cur.peek();
  FqElem coeff = F.one();
  bool saw_coeff = false;
  if (c != 'T') {
    coeff = parse_coeff(F, cur);
    saw_coeff = true;
    if (cur.peek() == '*') {
      cur.take();
      if (cur.peek() != 'T') throw ParseError("expected T after '*'", cur.col());
    }
  }
  if (cur.peek() == 'T') {
    cur.take();
    return Poly::monomial(coeff, parse_exponent(cur));
  }
  if (!saw_coeff) throw ParseError("expected term", cur.col());
  return Poly::constant(coeff);
}

}  // namespace

Poly Poly::parse(const Fq& F, const std::string& text) {
  Cursor cur{text};
  if (cur.done()) throw ParseError("empty polynomial", 1);
  Poly result(F);
  int sign = 1;
  if (cur.peek() == '-') {
    cur.take();
    sign = -1;
  }
  for (;;) {
    Poly term = parse_term(F, cur);
    result = sign > 0 ? result + term : result - term;
    if (cur.done()) break;
    char op = cur.take();
    if (op == '+')
      sign = 1;
    else if (op == '-')
      sign = -1;
    else
      throw ParseError(std::string("unexpected character '") + op + "'", cur.col());
  }
  return result;
}

// ---------------------------------------------------------------------------
// gcd family

XgcdResult xgcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  const Fq& F = a.is_zero() ? b.field() : a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(F), s1 = Poly::zero(F);
  Poly t0 = Poly::zero(F), t1 = Poly::one(F);
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = r1;
    r1 = r;
    Poly s2 = s0 - q * s1, t2 = t0 - q * t1;
    s0 = s1;
    s1 = s2;
    t0 = t1;
    t1 = t2;
  }
  FqElem u = r0.lc().inverse();
  return {r0 * u, s0 * u, t0 * u};
}

Poly gcd(const Poly& a, const Poly& b) {
  if (a.is_zero() && b.is_zero())
    throw std::invalid_argument("gcd of two zero polynomials");
  Poly r0 = a, r1 = b;
  while (!r1.is_zero()) {
    Poly r = r0 % r1;
    r0 = r1;
    r1 = r;
  }
  return r0.monic();
}

Poly lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly::zero(a.field());
  return ((a * b) / gcd(a, b)).monic();
}

Poly crt(const std::vector<Poly>& residues, const std::vector<Poly>& moduli) {
  if (residues.size() != moduli.size() || residues.empty())
    throw std::invalid_argument("mismatched CRT input lengths");
  Poly r = residues[0] % moduli[0];
  Poly m = moduli[0];
  for (std::size_t i = 1; i < moduli.size(); ++i) {
    auto bez = xgcd(m, moduli[i]);
    if (!bez.g.is_one()) throw std::invalid_argument("CRT moduli not coprime");
    // r + m * s * (r_i - r) hits r_i mod moduli[i] and keeps r mod m
    Poly next_mod = m * moduli[i];
    r = (r + m * bez.s * (residues[i] - r)) % next_mod;
    m = next_mod;
  }
  return r;
}

// ---------------------------------------------------------------------------
// factorization

namespace {

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly r = Poly::one(base.field()) % mod, b = base % mod;
  while (e > 0) {
    if (e & 1) r = (r * b) % mod;
    b = (b * b) % mod;
    e >>= 1;
  }
  return r;
}

std::uint64_t checked_pow_u64(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  for (int i = 0; i < e; ++i) {
    if (r > (std::uint64_t(1) << 62) / b) throw std::overflow_error("q^d overflow");
    r *= b;
  }
  return r;
}

// p-th root of a polynomial of the form g(T^p) (all exponents divisible by p).
Poly pth_root(const Poly& f) {
  const Fq& F = f.field();
  int p = F.p();
  std::vector<FqElem> c;
  for (int i = 0; i * p <= f.degree(); ++i)
    c.push_back(f.coeff(i * p).pow(F.q() / p));  // x -> x^(q/p) inverts x -> x^p
  return Poly(F, std::move(c));
}

// Squarefree decomposition in characteristic p.
std::vector<std::pair<Poly, int>> squarefree_split(const Poly& f) {
  const Fq& F = f.field();
  std::vector<std::pair<Poly, int>> out;
  if (f.degree() < 1) return out;
  Poly fp = f.derivative();
  if (fp.is_zero()) {
    for (auto& [g, e] : squarefree_split(pth_root(f))) out.emplace_back(g, e * F.p());
    return out;
  }
  Poly c = gcd(f, fp);
  Poly w = f / c;
  int i = 1;
  while (!w.is_one()) {
    Poly y = gcd(w, c);
    Poly z = w / y;
    if (z.degree() > 0) out.emplace_back(z, i);
    w = y;
    c = c / y;
    ++i;
  }
  if (!c.is_one()) {
    for (auto& [g, e] : squarefree_split(pth_root(c))) out.emplace_back(g, e * F.p());
  }
  return out;
}

// Distinct-degree split of a squarefree monic polynomial.
std::vector<std::pair<Poly, int>> distinct_degree_split(Poly h) {
  const Fq& F = h.field();
  std::vector<std::pair<Poly, int>> out;
  Poly w = Poly::T(F) % h;
  int d = 0;
  while (h.degree() >= 2 * (d + 1)) {
    ++d;
    w = powmod(w, F.q(), h);
    Poly g = gcd(w - Poly::T(F), h);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      h = h / g;
      w = w % h;
    }
  }
  if (!h.is_one()) out.emplace_back(h, h.degree());
  return out;
}

// Equal-degree split, deterministic: probe candidate elements in canonical
// order until a splitter appears, then recurse on both halves.
void equal_degree_split(const Poly& g, int d, std::vector<Poly>& out) {
  const Fq& F = g.field();
  if (g.degree() == d) {
    out.push_back(g);
    return;
  }
  for (std::uint64_t idx = F.q();; ++idx) {
    Poly u = Poly::from_index(F, idx);
    if (u.degree() >= g.degree()) u = u % g;
    Poly t(F);
    if (F.p() == 2) {
      // F_2-trace of u in the candidate factor fields
      int bits = F.m() * d;
      Poly acc = u % g, term = u % g;
      for (int i = 1; i < bits; ++i) {
        term = (term * term) % g;
        acc = acc + term;
      }
      t = acc;
    } else {
      std::uint64_t e = (checked_pow_u64(F.q(), d) - 1) / 2;
      t = powmod(u, e, g) - Poly::one(F);
    }
    if (t.is_zero()) continue;
    Poly h = gcd(t, g);
    if (h.degree() > 0 && h.degree() < g.degree()) {
      equal_degree_split(h, d, out);
      equal_degree_split(g / h, d, out);
      return;
    }
  }
}

}  // namespace

Factorization factor(const Poly& f) {
  if (f.is_zero()) throw std::invalid_argument("factorization of zero");
  Factorization out;
  out.unit = f.lc();
  if (f.degree() < 1) return out;
  for (auto& [sq, mult] : squarefree_split(f.monic())) {
    for (auto& [dd, d] : distinct_degree_split(sq)) {
      std::vector<Poly> irr;
      equal_degree_split(dd, d, irr);
      for (auto& g : irr) out.factors.emplace_back(g, mult);
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& a, const auto& b) { return poly_less(a.first, b.first); });
  return out;
}

Poly Factorization::product() const {
  Poly r = Poly::constant(unit);
  for (auto& [g, e] : factors) r *= g.pow(e);
  return r;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  const Fq& F = f.field();
  Poly g = f.monic();
  int n = g.degree();
  // Frobenius chain b_k = T^(q^k) mod g
  std::vector<Poly> frob(n + 1, Poly::zero(F));
  frob[0] = Poly::T(F) % g;
  for (int k = 1; k <= n; ++k) frob[k] = powmod(frob[k - 1], F.q(), g);
  if (!(frob[n] - Poly::T(F) % g).is_zero()) return false;
  for (int r = 2; r <= n; ++r) {
    if (n % r != 0) continue;
    bool prime = true;
    for (int d = 2; d * d <= r; ++d)
      if (r % d == 0) prime = false;
    if (!prime) continue;
    Poly diff = frob[n / r] - Poly::T(F) % g;
    if (diff.is_zero() || gcd(diff, g).degree() > 0) return false;
  }
  return true;
}

std::uint64_t euler_phi(const Poly& M) {
  if (M.degree() < 1) throw std::invalid_argument("euler_phi needs nonconstant modulus");
  const Fq& F = M.field();
  unsigned __int128 phi = 1;
  for (auto& [g, e] : factor(M).factors) {
    unsigned __int128 qd = 1;
    for (int i = 0; i < g.degree(); ++i) qd *= F.q();
    unsigned __int128 term = 1;
    for (int i = 0; i < e - 1; ++i) term *= qd;
    term *= qd - 1;
    phi *= term;
    if (phi > (static_cast<unsigned __int128>(1) << 62))
      throw std::overflow_error("euler_phi overflow");
  }
  return static_cast<std::uint64_t>(phi);
}

std::vector<Poly> monic_divisors(const Poly& M) {
  if (M.is_zero()) throw std::invalid_argument("divisors of zero");
  auto fac = factor(M);
  std::vector<Poly> out{Poly::one(M.field())};
  for (auto& [g, e] : fac.factors) {
    std::vector<Poly> next;
    Poly pw = Poly::one(M.field());
    for (int i = 0; i <= e; ++i) {
      for (auto& d : out) next.push_back(d * pw);
      if (i < e) pw *= g;
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end(), poly_less);
  return out;
}

int multiplicity(const Poly& f, const Poly& d) {
  if (f.is_zero()) throw std::invalid_argument("multiplicity in zero");
  if (d.degree() < 1) throw std::invalid_argument("multiplicity of constant factor");
  int count = 0;
  Poly r = f;
  for (;;) {
    auto [q, rem] = r.divmod(d);
    if (!rem.is_zero()) return count;
    ++count;
    r = q;
  }
}

std::vector<Poly> residues_below(const Fq& F, int bound) {
  if (bound < 0) throw std::invalid_argument("negative residue bound");
  std::uint64_t count = 1;
  for (int i = 0; i < bound; ++i) {
    count *= F.q();
    if (count > static_cast<std::uint64_t>(Caps::current().max_enum))
      throw CapExceeded("residue enumeration exceeds KUMMER_MAX_ENUM");
  }
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) out.push_back(Poly::from_index(F, idx));
  return out;
}

std::vector<Poly> unit_residues(const Poly& M) {
  if (M.degree() < 1) throw std::invalid_argument("unit residues need nonconstant modulus");
  std::vector<Poly> out;
  for (auto& r : residues_below(M.field(), M.degree()))
    if (!r.is_zero() && gcd(r, M).is_one()) out.push_back(r);
  return out;
}

}  // namespace carlitz
