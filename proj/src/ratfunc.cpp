#include "carlitz/ratfunc.hpp"

namespace carlitz {

RatFunc::RatFunc(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

RatFunc::RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::invalid_argument("zero denominator");
  reduce();
}

void RatFunc::reduce() {
  if (num_.is_zero()) {
    den_ = Poly::one(den_.field());
    return;
  }
  if (den_.is_one()) return;
  Poly g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
  FqElem u = den_.lc();
  if (!u.is_one()) {
    FqElem inv = u.inverse();
    num_ = num_ * inv;
    den_ = den_ * inv;
  }
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const {
  return RatFunc(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator*(const RatFunc& o) const {
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const {
  if (num_.is_zero()) throw ZeroDivisor("inverse of zero rational function", "0");
  return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long long e) const {
  if (e < 0) return inverse().pow(-e);
  RatFunc r = RatFunc::one(field()), base = *this;
  while (e > 0) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

RatFunc RatFunc::frobenius_q() const {
  // num and den have coefficients in F_q, so the q-th power is T -> T^q
  RatFunc r = *this;
  r.num_ = r.num_.frobenius_q();
  r.den_ = r.den_.frobenius_q();
  return r;
}

int RatFunc::degree() const {
  if (num_.is_zero()) return -(1 << 28);
  return num_.degree() - den_.degree();
}

int RatFunc::valuation(const Poly& prime) const {
  if (num_.is_zero()) throw std::invalid_argument("valuation of zero");
  return multiplicity(num_, prime) - multiplicity(den_, prime);
}

std::string RatFunc::str() const {
  if (den_.is_one()) return num_.str();
  return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatFunc RatFunc::parse(const Fq& F, const std::string& text) {
  auto strip = [](std::string s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return std::string();
    s = s.substr(a, b - a + 1);
    if (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
      // strip one matched outer pair only
      int depth = 0;
      bool outer = true;
      for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (depth == 0) {
          outer = false;
          break;
        }
      }
      if (outer) s = s.substr(1, s.size() - 2);
    }
    return s;
  };
  std::size_t slash = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (text[i] == '/' && depth == 0) {
      if (slash != std::string::npos) throw ParseError("multiple '/' in rational function", i + 1);
      slash = i;
    }
  }
  if (slash == std::string::npos) return RatFunc(Poly::parse(F, strip(text)));
  Poly num = Poly::parse(F, strip(text.substr(0, slash)));
  Poly den = Poly::parse(F, strip(text.substr(slash + 1)));
  if (den.is_zero()) throw ParseError("zero denominator", slash + 2);
  return RatFunc(num, den);
}

}  // namespace carlitz
