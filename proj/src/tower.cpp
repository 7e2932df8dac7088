#include "carlitz/tower.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "carlitz/caps.hpp"
#include "carlitz/linear.hpp"

namespace carlitz {

// ---------------------------------------------------------------------------
// TowerElem basics

const Fq& fq_of(const TowerElem& x) { return x.tower()->fq(); }

void TowerElem::require_compatible(const TowerElem& a, const TowerElem& b) {
  if (!a.tw_ || !b.tw_) throw std::invalid_argument("uninitialized tower element");
  if (a.tw_ != b.tw_) throw std::invalid_argument("mixed towers in element arithmetic");
  if (a.level_ != b.level_) throw std::invalid_argument("mixed levels in element arithmetic");
}

bool TowerElem::is_zero() const {
  if (!tw_) throw std::invalid_argument("uninitialized tower element");
  if (level_ == 0) return leaf_.is_zero();
  for (const auto& kid : kids_)
    if (!kid.is_zero()) return false;
  return true;
}

bool TowerElem::is_one() const {
  if (level_ == 0) return leaf_.is_one();
  if (!kids_[0].is_one()) return false;
  for (std::size_t i = 1; i < kids_.size(); ++i)
    if (!kids_[i].is_zero()) return false;
  return true;
}

TowerElem TowerElem::operator+(const TowerElem& o) const {
  require_compatible(*this, o);
  TowerElem r = *this;
  if (level_ == 0) {
    r.leaf_ += o.leaf_;
    return r;
  }
  for (std::size_t i = 0; i < kids_.size(); ++i) r.kids_[i] += o.kids_[i];
  return r;
}

TowerElem TowerElem::operator-() const {
  TowerElem r = *this;
  if (level_ == 0) {
    r.leaf_ = -r.leaf_;
    return r;
  }
  for (auto& kid : r.kids_) kid = -kid;
  return r;
}

TowerElem TowerElem::operator-(const TowerElem& o) const { return *this + (-o); }

TowerElem TowerElem::operator*(const TowerElem& o) const {
  require_compatible(*this, o);
  if (level_ == 0) {
    TowerElem r = *this;
    r.leaf_ *= o.leaf_;
    return r;
  }
  const TowerField::Step& st = tw_->step(level_ - 1);
  const int d = st.degree;
  // convolution of the coefficient vectors, then reduction mod min_poly
  std::vector<TowerElem> conv(2 * d - 1, tw_->make_level(level_ - 1));
  for (int i = 0; i < d; ++i) {
    if (kids_[i].is_zero()) continue;
    for (int j = 0; j < d; ++j) conv[i + j] += kids_[i] * o.kids_[j];
  }
  for (int kdeg = 2 * d - 2; kdeg >= d; --kdeg) {
    TowerElem lead = conv[kdeg];
    if (lead.is_zero()) continue;
    for (int i = 0; i < d; ++i) conv[kdeg - d + i] -= lead * st.min_poly[i];
  }
  TowerElem r = tw_->make_level(level_);
  for (int i = 0; i < d; ++i) r.kids_[i] = conv[i];
  return r;
}

TowerElem TowerElem::scaled(const RatFunc& s) const {
  TowerElem r = *this;
  if (level_ == 0) {
    r.leaf_ *= s;
    return r;
  }
  for (auto& kid : r.kids_) kid = kid.scaled(s);
  return r;
}

TowerElem TowerElem::zero_same() const {
  if (!tw_) throw std::invalid_argument("uninitialized tower element");
  return tw_->make_level(level_);
}

TowerElem TowerElem::one_same() const {
  if (!tw_) throw std::invalid_argument("uninitialized tower element");
  return scalar_same(tw_->fq().one());
}

TowerElem TowerElem::scalar_same(FqElem s) const {
  TowerElem r = zero_same();
  TowerElem* cur = &r;
  while (cur->level_ > 0) cur = &cur->kids_[0];
  cur->leaf_ = RatFunc(Poly::constant(s));
  return r;
}

TowerElem TowerElem::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  TowerElem r = one_same();
  TowerElem base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

TowerElem TowerElem::frobenius() const { return pow(tw_->fq().q()); }

TowerElem TowerElem::inverse() const {
  if (!tw_) throw std::invalid_argument("uninitialized tower element");
  if (level_ == 0) {
    TowerElem r = *this;
    r.leaf_ = leaf_.inverse();
    return r;
  }
  if (is_zero()) throw ZeroDivisor("inverse of zero tower element", "0");
  const TowerField::Step& st = tw_->step(level_ - 1);
  // Extended Euclid in (level-1 field)[X] against the step minimal polynomial.
  UPoly<TowerElem> a(kids_);
  UPoly<TowerElem> m(st.min_poly);
  UPoly<TowerElem> r0 = m, r1 = a;
  UPoly<TowerElem> s0, s1 = UPoly<TowerElem>::constant(tw_->make_level(level_ - 1).pow(0));
  while (!r1.is_zero() && r1.degree() > 0) {
    auto [q, r] = r0.divmod(r1);
    UPoly<TowerElem> s2 = s0 - q * s1;
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s2;
  }
  if (r1.is_zero()) {
    // nontrivial gcd: the step modulus is reducible, witnessed by r0
    std::ostringstream os;
    os << "[";
    for (int i = 0; i <= r0.degree(); ++i) {
      if (i) os << ", ";
      os << r0.coeffs()[i].str();
    }
    os << "]";
    throw ZeroDivisor("tower step modulus is reducible", os.str());
  }
  UPoly<TowerElem> inv = s1.scaled(r1.coeffs()[0].inverse());
  if (inv.degree() >= st.degree) throw std::logic_error("inverse overflowed the step degree");
  TowerElem out = tw_->make_level(level_);
  for (int i = 0; i <= inv.degree(); ++i) out.kids_[i] = inv.coeffs()[i];
  return out;
}

bool TowerElem::operator==(const TowerElem& o) const {
  require_compatible(*this, o);
  if (level_ == 0) return leaf_ == o.leaf_;
  for (std::size_t i = 0; i < kids_.size(); ++i)
    if (!(kids_[i] == o.kids_[i])) return false;
  return true;
}

std::vector<RatFunc> TowerElem::flatten() const {
  if (level_ == 0) return {leaf_};
  std::vector<RatFunc> out;
  for (const auto& kid : kids_) {
    auto sub = kid.flatten();
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

std::string TowerElem::str() const {
  if (level_ == 0) return leaf_.str();
  const TowerField::Step& st = tw_->step(level_ - 1);
  std::ostringstream os;
  bool first = true;
  for (int i = st.degree - 1; i >= 0; --i) {
    if (kids_[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    if (i == 0) {
      os << kids_[i].str();
      continue;
    }
    std::string g = i == 1 ? st.label : st.label + "^" + std::to_string(i);
    if (kids_[i].is_one())
      os << g;
    else
      os << "(" << kids_[i].str() << ")*" << g;
  }
  if (first) return "0";
  return os.str();
}

void TowerElem::reparent(const TowerField* tw) {
  tw_ = tw;
  for (auto& kid : kids_) kid.reparent(tw);
}

namespace {

bool ratfunc_less(const RatFunc& a, const RatFunc& b) {
  if (a.den() != b.den()) return poly_less(a.den(), b.den());
  return poly_less(a.num(), b.num());
}

}  // namespace

bool elem_less(const TowerElem& a, const TowerElem& b) {
  auto fa = a.flatten(), fb = b.flatten();
  if (fa.size() != fb.size()) throw std::invalid_argument("mixed towers in comparison");
  for (std::size_t i = 0; i < fa.size(); ++i) {
    if (fa[i] != fb[i]) return ratfunc_less(fa[i], fb[i]);
  }
  return false;
}

// ---------------------------------------------------------------------------
// TowerField

std::shared_ptr<const TowerField> TowerField::base(const Fq& F) {
  return std::shared_ptr<const TowerField>(new TowerField(F));
}

std::shared_ptr<const TowerField> TowerField::extended(const std::string& label,
                                                       std::vector<TowerElem> min_poly) const {
  if (min_poly.size() < 2) throw std::invalid_argument("tower step needs degree >= 1");
  for (const auto& c : min_poly) {
    if (c.tower() != this || c.level() != levels())
      throw std::invalid_argument("step coefficients must live in the tower being extended");
  }
  if (!min_poly.back().is_one()) throw std::invalid_argument("tower step must be monic");

  auto next = std::shared_ptr<TowerField>(new TowerField(*F_));
  next->steps_ = steps_;
  Step st;
  st.label = label;
  st.degree = static_cast<int>(min_poly.size()) - 1;
  st.min_poly = std::move(min_poly);
  next->steps_.push_back(std::move(st));
  for (auto& step : next->steps_)
    for (auto& c : step.min_poly) c.reparent(next.get());
  return next;
}

std::int64_t TowerField::degree() const {
  std::int64_t d = 1;
  for (const auto& st : steps_) {
    d *= st.degree;
    if (d > (std::int64_t(1) << 40)) throw std::overflow_error("tower degree overflow");
  }
  return d;
}

TowerElem TowerField::make_level(int level) const {
  TowerElem e;
  e.tw_ = this;
  e.level_ = level;
  if (level == 0) {
    e.leaf_ = RatFunc::zero(*F_);
  } else {
    e.kids_.assign(steps_.at(level - 1).degree, make_level(level - 1));
  }
  return e;
}

TowerElem TowerField::zero() const { return make_level(levels()); }

TowerElem TowerField::one() const { return from_base(RatFunc::one(*F_)); }

TowerElem TowerField::from_base(const RatFunc& x) const {
  TowerElem e = zero();
  TowerElem* cur = &e;
  while (cur->level_ > 0) cur = &cur->kids_[0];
  cur->leaf_ = x;
  return e;
}

TowerElem TowerField::gen(int step_index) const {
  if (step_index < 0 || step_index >= levels()) throw std::out_of_range("tower step index");
  const Step& st = steps_[step_index];
  if (st.degree == 1) {
    // linear step: the generator is already a lower-level value
    TowerElem root = -st.min_poly[0];
    return embed(root);
  }
  TowerElem e = zero();
  TowerElem* cur = &e;
  while (cur->level_ > step_index + 1) cur = &cur->kids_[0];
  TowerElem one_below = cur->kids_[0];  // zero at step_index level
  {
    TowerElem* leaf = &one_below;
    while (leaf->level_ > 0) leaf = &leaf->kids_[0];
    leaf->leaf_ = RatFunc::one(*F_);
  }
  cur->kids_[1] = one_below;
  return e;
}

TowerElem TowerField::from_coords(const std::vector<RatFunc>& coords) const {
  if (static_cast<std::int64_t>(coords.size()) != degree())
    throw std::invalid_argument("coordinate vector length mismatch");
  TowerElem e = zero();
  std::size_t pos = 0;
  // fill in flatten order
  struct Filler {
    const std::vector<RatFunc>& coords;
    std::size_t& pos;
    void run(TowerElem& t) {
      if (t.level() == 0) {
        t.leaf_ = coords[pos++];
        return;
      }
      for (auto& kid : t.kids_) run(kid);
    }
  } filler{coords, pos};
  filler.run(e);
  return e;
}

TowerElem TowerField::embed(const TowerElem& x) const {
  if (!x.valid()) throw std::invalid_argument("uninitialized tower element");
  const TowerField* src = x.tower();
  if (&src->fq() != F_) throw std::invalid_argument("mixed base fields in embedding");
  TowerElem cur = x;
  if (src != this) {
    if (x.level() != src->levels())
      throw std::invalid_argument("embedding expects a full-level element");
    if (src->levels() > levels()) throw std::invalid_argument("embedding into a shorter tower");
    for (int i = 0; i < src->levels(); ++i) {
      const Step& a = src->step(i);
      const Step& b = steps_[i];
      bool same = a.label == b.label && a.degree == b.degree &&
                  a.min_poly.size() == b.min_poly.size();
      for (std::size_t j = 0; same && j < a.min_poly.size(); ++j)
        same = a.min_poly[j].flatten() == b.min_poly[j].flatten();
      if (!same)
        throw std::invalid_argument("embedding into a tower with a different prefix");
    }
    cur.reparent(this);
  }
  while (cur.level_ < levels()) {
    TowerElem up;
    up.tw_ = this;
    up.level_ = cur.level_ + 1;
    up.kids_.assign(steps_[cur.level_].degree, make_level(cur.level_));
    up.kids_[0] = cur;
    cur = std::move(up);
  }
  return cur;
}

std::vector<TowerElem> TowerField::basis() const {
  std::vector<TowerElem> out{one()};
  for (int i = 0; i < levels(); ++i) {
    const int d = steps_[i].degree;
    if (d == 1) continue;
    TowerElem g = gen(i);
    std::vector<TowerElem> next;
    next.reserve(out.size() * d);
    TowerElem pw = one();
    for (int e = 0; e < d; ++e) {
      for (const auto& b : out) next.push_back(pw * b);
      if (e + 1 < d) pw = pw * g;
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::string> TowerField::basis_labels() const {
  std::vector<std::string> out{"1"};
  for (int i = 0; i < levels(); ++i) {
    const int d = steps_[i].degree;
    if (d == 1) continue;
    std::vector<std::string> next;
    next.reserve(out.size() * d);
    for (int e = 0; e < d; ++e) {
      std::string g = e == 0 ? "" : (e == 1 ? steps_[i].label : steps_[i].label + "^" + std::to_string(e));
      for (const auto& b : out) {
        if (g.empty())
          next.push_back(b);
        else
          next.push_back(b == "1" ? g : b + "*" + g);
      }
    }
    out = std::move(next);
  }
  return out;
}

std::int64_t field_degree(const TowerField& tw) { return tw.degree(); }

QPoly<TowerElem> to_tower(const QPoly<RatFunc>& P, const TowerField& tw) {
  std::vector<TowerElem> coeffs;
  coeffs.reserve(P.coeffs().size());
  for (const auto& c : P.coeffs()) coeffs.push_back(tw.from_base(c));
  return QPoly<TowerElem>(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// affine solver

namespace {

struct Window {
  Poly den;        // common coordinate denominator, product of prime powers
  int num_degree;  // numerator T-degree budget beyond deg(den)
};

// Record the primes and depth/degree data of one rational constant.
struct RationalScan {
  std::map<std::uint64_t, std::pair<Poly, int>> primes;  // index -> (prime, max mult seen)
  int max_pole = 0;   // deepest denominator multiplicity in its group
  int max_deg = 0;    // largest degree() = deg num - deg den seen

  void add(const RatFunc& r) {
    if (r.is_zero()) return;
    max_deg = std::max(max_deg, r.degree());
    auto scan_part = [&](const Poly& part, bool is_den) {
      if (part.degree() < 1) return;
      for (auto& [g, e] : factor(part).factors) {
        auto key = g.index();
        auto it = primes.find(key);
        if (it == primes.end())
          primes.emplace(key, std::make_pair(g, e));
        else
          it->second.second = std::max(it->second.second, e);
        if (is_den) max_pole = std::max(max_pole, e);
      }
    };
    scan_part(r.num(), false);
    scan_part(r.den(), true);
  }
};

Window compute_window(const QPoly<TowerElem>& P, const TowerElem& w, const SolveOptions& opts) {
  const TowerField& tw = *w.tower();
  const Fq& F = tw.fq();
  RationalScan coeff_scan, rhs_scan, step_scan;
  for (const auto& c : P.coeffs())
    for (const auto& leaf : c.flatten()) coeff_scan.add(leaf);
  for (const auto& leaf : w.flatten()) rhs_scan.add(leaf);
  for (int i = 0; i < tw.levels(); ++i)
    for (const auto& c : tw.step(i).min_poly)
      for (const auto& leaf : c.flatten()) step_scan.add(leaf);

  // union the prime sets; depth per prime = summed group pole depths plus the
  // largest numerator multiplicity (cancellation ties) plus slack
  std::map<std::uint64_t, std::pair<Poly, int>> merged;
  int pole_budget = coeff_scan.max_pole + rhs_scan.max_pole + step_scan.max_pole + 2 +
                    opts.extra_pole;
  for (const auto* scan : {&coeff_scan, &rhs_scan, &step_scan}) {
    for (const auto& [key, pm] : scan->primes) {
      auto it = merged.find(key);
      int depth = pm.second + pole_budget;
      if (it == merged.end())
        merged.emplace(key, std::make_pair(pm.first, depth));
      else
        it->second.second = std::max(it->second.second, depth);
    }
  }
  Window win;
  win.den = Poly::one(F);
  for (const auto& [key, pd] : merged) win.den *= pd.first.pow(pd.second);
  win.num_degree = std::max(0, coeff_scan.max_deg) + std::max(0, rhs_scan.max_deg) +
                   std::max(0, step_scan.max_deg) + 2 + opts.extra_degree;
  return win;
}

}  // namespace

std::uint64_t AffineSolveResult::count() const {
  if (!solvable) return 0;
  const Fq& F = particular.tower()->fq();
  std::uint64_t c = 1;
  for (std::size_t i = 0; i < kernel.size(); ++i) {
    if (c > (std::uint64_t(1) << 60) / F.q()) throw std::overflow_error("solution count overflow");
    c *= F.q();
  }
  return c;
}

std::vector<TowerElem> AffineSolveResult::all() const {
  if (!solvable) return {};
  std::uint64_t n = count();
  if (n > static_cast<std::uint64_t>(Caps::current().max_enum))
    throw CapExceeded("solution enumeration exceeds KUMMER_MAX_ENUM");
  const Fq& F = particular.tower()->fq();
  std::vector<TowerElem> out;
  out.reserve(n);
  for (std::uint64_t idx = 0; idx < n; ++idx) {
    TowerElem e = particular;
    std::uint64_t t = idx;
    for (const auto& kv : kernel) {
      int digit = static_cast<int>(t % F.q());
      t /= F.q();
      if (digit != 0) e += kv.scaled(RatFunc(Poly::constant(F.elem(digit))));
    }
    out.push_back(std::move(e));
  }
  std::sort(out.begin(), out.end(), elem_less);
  return out;
}

AffineSolveResult solve_affine_q(const QPoly<TowerElem>& P, const TowerElem& w,
                                 const SolveOptions& opts) {
  if (P.is_zero()) throw std::invalid_argument("zero additive polynomial");
  if (!w.valid()) throw std::invalid_argument("uninitialized right-hand side");
  const TowerField& tw = *w.tower();
  const Fq& F = tw.fq();
  for (const auto& c : P.coeffs())
    if (c.tower() != &tw || c.level() != w.level())
      throw std::invalid_argument("solver operands from different towers");

  Window win = compute_window(P, w, opts);
  const std::int64_t tower_deg = tw.degree();
  const int width = win.num_degree + win.den.degree() + 1;
  const std::int64_t unknowns = tower_deg * width;
  std::int64_t cap = opts.max_dim > 0 ? opts.max_dim : Caps::current().max_solve_dim;
  if (unknowns > cap)
    throw CapExceeded("affine solve needs " + std::to_string(unknowns) +
                      " unknowns, cap " + std::to_string(cap));

  const int e = P.tau_degree();
  std::vector<TowerElem> basis = tw.basis();

  // m[i][j] = c_i * basis_j^{q^i}; columns are then k-scalar combinations
  std::vector<std::vector<TowerElem>> m(e + 1);
  {
    std::vector<TowerElem> frob = basis;
    for (int i = 0; i <= e; ++i) {
      if (i > 0)
        for (auto& b : frob) b = b.frobenius();
      TowerElem ci = P.coeff(i, w);
      if (ci.is_zero()) continue;
      m[i].reserve(basis.size());
      for (const auto& b : frob) m[i].push_back(ci * b);
    }
  }

  RatFunc den_rf{Poly::one(F), win.den};
  // s[i][t] = (T^t / den)^{q^i}
  std::vector<std::vector<RatFunc>> s(e + 1, std::vector<RatFunc>());
  for (int i = 0; i <= e; ++i) {
    if (m[i].empty()) continue;
    s[i].reserve(width);
    long long qi = 1;
    for (int a = 0; a < i; ++a) qi *= F.q();
    Poly den_pow = win.den.pow(qi);
    for (int t = 0; t < width; ++t)
      s[i].emplace_back(Poly::monomial(F.one(), static_cast<int>(t * qi)), den_pow);
  }

  // assemble the columns as flattened rational vectors
  std::vector<std::vector<RatFunc>> cols;
  cols.reserve(unknowns);
  for (std::size_t j = 0; j < basis.size(); ++j) {
    for (int t = 0; t < width; ++t) {
      TowerElem acc = tw.zero();
      for (int i = 0; i <= e; ++i) {
        if (m[i].empty()) continue;
        acc += m[i][j].scaled(s[i][t]);
      }
      cols.push_back(acc.flatten());
    }
  }
  std::vector<RatFunc> rhs = w.flatten();

  // clear denominators globally
  Poly gd = Poly::one(F);
  for (const auto& col : cols)
    for (const auto& r : col)
      if (!r.is_zero()) gd = lcm(gd, r.den());
  for (const auto& r : rhs)
    if (!r.is_zero()) gd = lcm(gd, r.den());

  int max_deg = 0;
  auto scale_entry = [&](const RatFunc& r) {
    Poly p = r.num() * (gd / r.den());
    max_deg = std::max(max_deg, p.degree());
    return p;
  };
  std::vector<std::vector<Poly>> col_polys;
  col_polys.reserve(cols.size());
  for (const auto& col : cols) {
    std::vector<Poly> cp;
    cp.reserve(col.size());
    for (const auto& r : col) cp.push_back(r.is_zero() ? Poly::zero(F) : scale_entry(r));
    col_polys.push_back(std::move(cp));
  }
  std::vector<Poly> rhs_polys;
  for (const auto& r : rhs) rhs_polys.push_back(r.is_zero() ? Poly::zero(F) : scale_entry(r));

  const std::size_t n_rows = static_cast<std::size_t>(tower_deg) * (max_deg + 1);
  FqMatrix mat(n_rows, FqRow(cols.size(), F.zero()));
  for (std::size_t cidx = 0; cidx < col_polys.size(); ++cidx) {
    for (std::size_t coord = 0; coord < col_polys[cidx].size(); ++coord) {
      const Poly& p = col_polys[cidx][coord];
      for (int dg = 0; dg <= p.degree(); ++dg)
        mat[coord * (max_deg + 1) + dg][cidx] = p.coeff(dg);
    }
  }
  FqRow rhs_vec(n_rows, F.zero());
  for (std::size_t coord = 0; coord < rhs_polys.size(); ++coord) {
    const Poly& p = rhs_polys[coord];
    for (int dg = 0; dg <= p.degree(); ++dg) rhs_vec[coord * (max_deg + 1) + dg] = p.coeff(dg);
  }

  LinearSolveResult lin = solve_linear(F, std::move(mat), std::move(rhs_vec));

  auto rebuild = [&](const FqRow& u) {
    std::vector<RatFunc> coords;
    coords.reserve(tower_deg);
    for (std::int64_t j = 0; j < tower_deg; ++j) {
      std::vector<FqElem> digits(width, F.zero());
      for (int t = 0; t < width; ++t) digits[t] = u[j * width + t];
      coords.emplace_back(Poly(F, std::move(digits)), win.den);
    }
    return tw.from_coords(coords);
  };

  AffineSolveResult out;
  if (!lin.solvable) return out;
  out.solvable = true;
  out.particular = rebuild(lin.particular);
  if (!(P.eval_in<TowerElem>(out.particular) == w))
    throw std::logic_error("affine solver produced a non-solution");
  TowerElem zero = tw.zero();
  for (const auto& kv : lin.kernel) {
    TowerElem v = rebuild(kv);
    if (v.is_zero()) continue;
    if (!P.eval_in<TowerElem>(v).is_zero())
      throw std::logic_error("affine solver produced a bad kernel vector");
    out.kernel.push_back(std::move(v));
  }
  // canonical particular: least solution in element order when enumerable
  std::uint64_t n = out.count();
  if (n > 1 && n <= 4096) {
    auto sols = out.all();
    out.particular = sols.front();
  }
  return out;
}

// ---------------------------------------------------------------------------
// minimal polynomial of a division point

DivisionPoint min_poly_additive(const Rank1Module& mod, const Poly& M, const TowerElem& z,
                                const SolveOptions& opts) {
  if (M.degree() < 1) throw std::invalid_argument("division needs nonconstant M");
  if (!z.valid()) throw std::invalid_argument("uninitialized division target");
  const TowerField& tw = *z.tower();
  const Fq& F = tw.fq();
  if (&F != &M.field()) throw std::invalid_argument("field mismatch in division");

  // precondition: the tower already holds the full M-torsion
  auto torsion = solve_affine_q(to_tower(action_poly(mod, M), tw), tw.zero(), opts);
  if (static_cast<int>(torsion.kernel.size()) != M.degree() * 1)
    throw std::domain_error("tower lacks the full torsion module for M = " + M.str());

  for (const Poly& E : monic_divisors(M)) {
    Poly cofactor = M / E;
    auto r = solve_affine_q(to_tower(action_poly(mod, cofactor), tw), z, opts);
    if (!r.solvable) continue;
    auto sols = r.all();
    TowerElem beta = sols.front();
    UPoly<TowerElem> dense = to_tower(action_poly(mod, E), tw).dense();
    dense = dense - UPoly<TowerElem>::constant(beta);
    DivisionPoint out{E, beta, dense.monic()};
    return out;
  }
  throw std::logic_error("division search fell through (E = M always solves)");
}

}  // namespace carlitz
