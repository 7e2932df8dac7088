#include "carlitz/fq.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <sstream>

namespace carlitz {
namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Dense polynomials over Z_p, constant coefficient first. Only used here to
// pick and verify the defining modulus of an extension field.
using ZpPoly = std::vector<int>;

ZpPoly zp_mod(const ZpPoly& a, const ZpPoly& b, int p) {
  ZpPoly r = a;
  int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(r.size()) - 1 >= db) {
    int dr = static_cast<int>(r.size()) - 1;
    if (r[dr] == 0) {
      r.pop_back();
      continue;
    }
    // b is monic in every use below
    int c = r[dr];
    for (int i = 0; i <= db; ++i) {
      int& t = r[dr - db + i];
      t = ((t - c * b[i]) % p + p) % p;
    }
    r.pop_back();
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

bool zp_irreducible(const ZpPoly& f, int p) {
  int d = static_cast<int>(f.size()) - 1;
  // Trial division by every monic polynomial of degree 1..d/2.
  for (int e = 1; 2 * e <= d; ++e) {
    long long count = 1;
    for (int i = 0; i < e; ++i) count *= p;
    for (long long idx = 0; idx < count; ++idx) {
      ZpPoly g(e + 1, 0);
      long long t = idx;
      for (int i = 0; i < e; ++i) {
        g[i] = static_cast<int>(t % p);
        t /= p;
      }
      g[e] = 1;
      if (zp_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

// Least monic irreducible of degree m over Z_p in canonical index order.
ZpPoly least_irreducible(int p, int m) {
  long long count = 1;
  for (int i = 0; i < m; ++i) count *= p;
  for (long long idx = 0; idx < count; ++idx) {
    ZpPoly f(m + 1, 0);
    long long t = idx;
    for (int i = 0; i < m; ++i) {
      f[i] = static_cast<int>(t % p);
      t /= p;
    }
    f[m] = 1;
    if (zp_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible modulus found");
}

}  // namespace

Fq::Fq(int q) : q_(q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  if (is_prime(q)) {
    if (q > 127) throw std::invalid_argument("prime field size capped at 127");
    p_ = q;
    m_ = 1;
    modulus_ = {0, 1};  // formal X - 0 placeholder, unused for m = 1
  } else {
    switch (q) {
      case 4: p_ = 2; m_ = 2; break;
      case 8: p_ = 2; m_ = 3; break;
      case 16: p_ = 2; m_ = 4; break;
      case 9: p_ = 3; m_ = 2; break;
      case 27: p_ = 3; m_ = 3; break;
      case 25: p_ = 5; m_ = 2; break;
      default:
        throw std::invalid_argument("unsupported field size " + std::to_string(q) +
                                    " (primes <= 127 and 4, 8, 9, 16, 25, 27)");
    }
    modulus_ = least_irreducible(p_, m_);
  }

  add_.resize(static_cast<std::size_t>(q_) * q_);
  mul_.resize(static_cast<std::size_t>(q_) * q_);
  neg_.resize(q_);
  inv_.resize(q_);

  auto digits = [this](int idx) {
    std::vector<int> c(m_, 0);
    for (int i = 0; i < m_; ++i) {
      c[i] = idx % p_;
      idx /= p_;
    }
    return c;
  };
  auto index = [this](const std::vector<int>& c) {
    int idx = 0;
    for (int i = m_ - 1; i >= 0; --i) idx = idx * p_ + c[i];
    return idx;
  };

  for (int a = 0; a < q_; ++a) {
    auto ca = digits(a);
    std::vector<int> nc(m_);
    for (int i = 0; i < m_; ++i) nc[i] = (p_ - ca[i]) % p_;
    neg_[a] = static_cast<std::uint16_t>(index(nc));
    for (int b = 0; b < q_; ++b) {
      auto cb = digits(b);
      std::vector<int> s(m_);
      for (int i = 0; i < m_; ++i) s[i] = (ca[i] + cb[i]) % p_;
      add_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(index(s));

      // Product in Z_p[X] reduced by the defining modulus.
      std::vector<int> prod(2 * m_ - 1, 0);
      for (int i = 0; i < m_; ++i)
        for (int j = 0; j < m_; ++j) prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p_;
      if (m_ > 1) {
        for (int d = 2 * m_ - 2; d >= m_; --d) {
          int c = prod[d];
          if (c == 0) continue;
          prod[d] = 0;
          for (int i = 0; i < m_; ++i)
            prod[d - m_ + i] = ((prod[d - m_ + i] - c * modulus_[i]) % p_ + p_) % p_;
        }
      } else {
        prod[0] %= p_;
      }
      std::vector<int> pm(prod.begin(), prod.begin() + m_);
      mul_[static_cast<std::size_t>(a) * q_ + b] = static_cast<std::uint16_t>(index(pm));
    }
  }

  inv_[0] = 0;
  for (int a = 1; a < q_; ++a) {
    for (int b = 1; b < q_; ++b) {
      if (mul_[static_cast<std::size_t>(a) * q_ + b] == 1) {
        inv_[a] = static_cast<std::uint16_t>(b);
        break;
      }
    }
    if (inv_[a] == 0) throw std::logic_error("element without inverse; modulus reducible");
  }
}

const Fq& Fq::get(int q) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<const Fq>> registry;
  std::lock_guard<std::mutex> lock(mu);
  auto it = registry.find(q);
  if (it == registry.end()) it = registry.emplace(q, std::unique_ptr<const Fq>(new Fq(q))).first;
  return *it->second;
}

FqElem Fq::from_int(long long n) const {
  long long r = n % p_;
  if (r < 0) r += p_;
  return FqElem(*this, static_cast<int>(r));
}

FqElem Fq::gen() const {
  if (m_ == 1) throw std::invalid_argument("prime field has no extension generator");
  return FqElem(*this, p_);
}

int Fq::add(int a, int b) const { return add_[static_cast<std::size_t>(a) * q_ + b]; }
int Fq::sub(int a, int b) const { return add_[static_cast<std::size_t>(a) * q_ + neg_[b]]; }
int Fq::neg(int a) const { return neg_[a]; }

int Fq::inv(int a) const {
  if (a == 0) throw ZeroDivisor("inverse of zero field element", "0");
  return inv_[a];
}

int Fq::pow(int a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  int r = 1, base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

std::vector<int> Fq::coords(int idx) const {
  std::vector<int> c(m_, 0);
  for (int i = 0; i < m_; ++i) {
    c[i] = idx % p_;
    idx /= p_;
  }
  return c;
}

std::string Fq::elem_str(int idx) const {
  if (m_ == 1) return std::to_string(idx);
  auto c = coords(idx);
  int nonzero = 0, pos = -1;
  for (int i = 0; i < m_; ++i)
    if (c[i] != 0) {
      ++nonzero;
      pos = i;
    }
  if (nonzero == 0) return "0";
  if (nonzero == 1 && pos == 0) return std::to_string(c[0]);
  if (nonzero == 1 && c[pos] == 1) return pos == 1 ? "w" : "w^" + std::to_string(pos);
  std::ostringstream os;
  os << '[';
  for (int i = 0; i < m_; ++i) {
    if (i) os << ',';
    os << c[i];
  }
  os << ']';
  return os.str();
}

}  // namespace carlitz
