#include "carlitz/cohomology.hpp"

#include <map>
#include <stdexcept>
#include <string>

#include "carlitz/caps.hpp"
#include "carlitz/errors.hpp"

namespace carlitz {
namespace {

// Streaming row reducer: keeps only the echelon basis of the rows seen so
// far, so huge constraint systems never materialize.
class EchelonAccum {
 public:
  EchelonAccum(const Fq& F, int cols) : F_(F), cols_(cols) {}

  void add_row(FqRow row) {
    if (static_cast<int>(row.size()) != cols_)
      throw std::logic_error("echelon row width mismatch");
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
      int pc = pivot_col_[i];
      if (!row[pc].is_zero()) {
        FqElem c = row[pc];
        for (int j = pc; j < cols_; ++j) row[j] = row[j] - c * pivots_[i][j];
      }
    }
    int lead = -1;
    for (int j = 0; j < cols_; ++j)
      if (!row[j].is_zero()) {
        lead = j;
        break;
      }
    if (lead < 0) return;
    FqElem inv = row[lead].inverse();
    for (int j = lead; j < cols_; ++j) row[j] = row[j] * inv;
    // Keep pivot rows sorted by pivot column so reduction stays triangular.
    std::size_t at = 0;
    while (at < pivots_.size() && pivot_col_[at] < lead) ++at;
    pivots_.insert(pivots_.begin() + at, std::move(row));
    pivot_col_.insert(pivot_col_.begin() + at, lead);
  }

  int rank() const { return static_cast<int>(pivots_.size()); }

 private:
  const Fq& F_;
  int cols_;
  std::vector<FqRow> pivots_;
  std::vector<int> pivot_col_;
};

FqMatrix mat_mul(const Fq& F, const FqMatrix& a, const FqMatrix& b) {
  std::size_t n = a.size(), m = b[0].size(), k = b.size();
  FqMatrix r(n, FqRow(m, F.zero()));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t t = 0; t < k; ++t) {
      if (a[i][t].is_zero()) continue;
      for (std::size_t j = 0; j < m; ++j) r[i][j] = r[i][j] + a[i][t] * b[t][j];
    }
  return r;
}

bool mat_equal(const FqMatrix& a, const FqMatrix& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b[i].size()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (!(a[i][j] == b[i][j])) return false;
  }
  return true;
}

}  // namespace

void FiniteAction::validate() const {
  if (Fp == nullptr) throw std::invalid_argument("action without a field");
  if (Fp->m() != 1) throw std::invalid_argument("the module field must be prime");
  int n = size();
  if (n == 0) throw std::invalid_argument("empty group");
  if (static_cast<int>(mats.size()) != n)
    throw std::invalid_argument("one matrix per group element required");
  std::int64_t cost = static_cast<std::int64_t>(n) * n * n +
                      static_cast<std::int64_t>(n) * n * dim * dim * dim;
  if (cost > Caps::current().max_cohom_rows)
    throw CapExceeded("group validation cost " + std::to_string(cost) + " over cap");
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(mul[g].size()) != n)
      throw std::invalid_argument("ragged multiplication table");
    if (mul[0][g] != g || mul[g][0] != g)
      throw std::invalid_argument("element 0 is not the identity");
    std::vector<char> seen_row(n, 0), seen_col(n, 0);
    for (int h = 0; h < n; ++h) {
      int gh = mul[g][h], hg = mul[h][g];
      if (gh < 0 || gh >= n || hg < 0 || hg >= n)
        throw std::invalid_argument("product outside the group");
      seen_row[gh] = 1;
      seen_col[hg] = 1;
    }
    for (int h = 0; h < n; ++h)
      if (!seen_row[h] || !seen_col[h])
        throw std::invalid_argument("multiplication table is not a Latin square");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k)
        if (mul[mul[g][h]][k] != mul[g][mul[h][k]])
          throw std::invalid_argument("multiplication table is not associative");
  for (int g = 0; g < n; ++g) inverse_of(g);  // throws when absent
  for (int g = 0; g < n; ++g) {
    if (static_cast<int>(mats[g].size()) != dim)
      throw std::invalid_argument("matrix size mismatch");
    for (const auto& row : mats[g])
      if (static_cast<int>(row.size()) != dim)
        throw std::invalid_argument("matrix size mismatch");
  }
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      if (!mat_equal(mat_mul(*Fp, mats[g], mats[h]), mats[mul[g][h]]))
        throw std::invalid_argument("action is not a homomorphism at pair (" +
                                    std::to_string(g) + ", " + std::to_string(h) + ")");
  // Invertibility of each matrix follows from mats[g] mats[g^-1] = mats[0] = I
  // once the identity matrix is checked.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (!(mats[0][i][j] == (i == j ? Fp->one() : Fp->zero())))
        throw std::invalid_argument("identity element must act as the identity matrix");
}

int FiniteAction::inverse_of(int g) const {
  for (int h = 0; h < size(); ++h)
    if (mul[g][h] == 0 && mul[h][g] == 0) return h;
  throw std::invalid_argument("element without inverse: " + std::to_string(g));
}

CohomologyResult h1(const FiniteAction& A) {
  A.validate();
  const Fq& F = *A.Fp;
  int n = A.size(), d = A.dim;
  std::int64_t cols = static_cast<std::int64_t>(n) * d;
  std::int64_t rows = static_cast<std::int64_t>(n) * n * d;
  if (rows > Caps::current().max_cohom_rows)
    throw CapExceeded("cocycle rows " + std::to_string(rows) + " over cap");

  // Unknowns: f(g) in V for every g, flattened as cols = n*d.
  EchelonAccum acc(F, static_cast<int>(cols));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) {
      int gh = A.mul[g][h];
      for (int i = 0; i < d; ++i) {
        FqRow row(cols, F.zero());
        for (int j = 0; j < d; ++j) {
          row[static_cast<std::size_t>(gh) * d + j] = row[gh * d + j] + (i == j ? F.one() : F.zero());
          row[static_cast<std::size_t>(h) * d + j] = row[h * d + j] - A.mats[g][i][j];
          row[static_cast<std::size_t>(g) * d + j] =
              row[g * d + j] - (i == j ? F.one() : F.zero());
        }
        acc.add_row(std::move(row));
      }
    }
  std::int64_t dimZ = cols - acc.rank();

  // Coboundary map V -> C^1, v |-> (g.v - v)_g.
  FqMatrix cb(static_cast<std::size_t>(n) * d, FqRow(d, F.zero()));
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        cb[static_cast<std::size_t>(g) * d + i][j] =
            A.mats[g][i][j] - (i == j ? F.one() : F.zero());
  std::int64_t dimB = matrix_rank(F, cb);

  return {dimZ, dimB, dimZ - dimB};
}

CohomologyResult h2(const FiniteAction& A) {
  A.validate();
  const Fq& F = *A.Fp;
  int n = A.size(), d = A.dim;
  std::int64_t cols = static_cast<std::int64_t>(n) * n * d;
  std::int64_t rows = static_cast<std::int64_t>(n) * n * n * d;
  if (rows > Caps::current().max_cohom_rows)
    throw CapExceeded("cocycle rows " + std::to_string(rows) + " over cap");
  if (cols > Caps::current().max_solve_dim)
    throw CapExceeded("cochain unknowns " + std::to_string(cols) + " over cap");

  auto slot = [&](int g, int h) { return (static_cast<std::size_t>(g) * n + h) * d; };

  EchelonAccum acc(F, static_cast<int>(cols));
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h)
      for (int k = 0; k < n; ++k) {
        int gh = A.mul[g][h], hk = A.mul[h][k];
        for (int i = 0; i < d; ++i) {
          FqRow row(cols, F.zero());
          for (int j = 0; j < d; ++j) {
            row[slot(h, k) + j] = row[slot(h, k) + j] + A.mats[g][i][j];
            FqElem e = i == j ? F.one() : F.zero();
            row[slot(gh, k) + j] = row[slot(gh, k) + j] - e;
            row[slot(g, hk) + j] = row[slot(g, hk) + j] + e;
            row[slot(g, h) + j] = row[slot(g, h) + j] - e;
          }
          acc.add_row(std::move(row));
        }
      }
  std::int64_t dimZ = cols - acc.rank();

  // Boundary of 1-cochains u: (du)(g,h) = g.u(h) - u(gh) + u(g); rank of the
  // (n*d) -> (n*n*d) map equals the rank of its transpose, accumulated row
  // by row over the domain basis.
  EchelonAccum img(F, static_cast<int>(cols));
  for (int g = 0; g < n; ++g)
    for (int i = 0; i < d; ++i) {
      // u = indicator cochain: u(g) = e_i, u elsewhere 0.
      FqRow row(cols, F.zero());
      for (int s = 0; s < n; ++s)
        for (int t = 0; t < n; ++t) {
          std::size_t base = slot(s, t);
          if (t == g)
            for (int j = 0; j < d; ++j) row[base + j] = row[base + j] + A.mats[s][j][i];
          if (A.mul[s][t] == g) row[base + i] = row[base + i] - F.one();
          if (s == g) row[base + i] = row[base + i] + F.one();
        }
      img.add_row(std::move(row));
    }
  std::int64_t dimB = img.rank();

  return {dimZ, dimB, dimZ - dimB};
}

FiniteAction unit_group_action(const Fq& F, const Poly& M) {
  if (M.degree() < 1 || !M.is_monic())
    throw std::invalid_argument("modulus must be monic of degree at least 1");
  std::uint64_t n = euler_phi(M);
  if (n > static_cast<std::uint64_t>(Caps::current().max_enum))
    throw CapExceeded("unit group order " + std::to_string(n) + " over cap");

  const Fq& Fp = Fq::get(F.p());
  int d = M.degree(), m = F.m();
  FiniteAction A;
  A.Fp = &Fp;
  A.dim = d * m;

  std::vector<Poly> units = unit_residues(M);
  std::map<std::uint64_t, int> pos;
  for (std::size_t i = 0; i < units.size(); ++i)
    pos[units[i].index()] = static_cast<int>(i);

  A.mul.assign(units.size(), std::vector<int>(units.size(), 0));
  for (std::size_t i = 0; i < units.size(); ++i)
    for (std::size_t j = 0; j < units.size(); ++j) {
      Poly prod = (units[i] * units[j]) % M;
      auto it = pos.find(prod.index());
      if (it == pos.end()) throw std::logic_error("unit product left the unit group");
      A.mul[i][j] = it->second;
    }

  // F_p-basis of A/(M): w^s T^t with w the F_q generator over F_p,
  // 0 <= s < m, 0 <= t < d; basis index = t*m + s.
  auto to_coords = [&](const Poly& r) {
    FqRow v(static_cast<std::size_t>(A.dim), Fp.zero());
    for (int t = 0; t <= r.degree(); ++t) {
      std::vector<int> digits = F.coords(r.coeff(t).v);
      for (int s = 0; s < m; ++s) v[static_cast<std::size_t>(t) * m + s] = Fp.elem(digits[s]);
    }
    return v;
  };
  FqElem w = m > 1 ? F.gen() : F.one();
  A.mats.reserve(units.size());
  A.names.reserve(units.size());
  for (const Poly& u : units) {
    FqMatrix mat(static_cast<std::size_t>(A.dim), FqRow(A.dim, Fp.zero()));
    for (int t = 0; t < d; ++t)
      for (int s = 0; s < m; ++s) {
        FqElem scalar = m > 1 ? w.pow(s) : F.one();
        Poly basis_el = Poly::monomial(scalar, t);
        FqRow col = to_coords((u * basis_el) % M);
        for (int i = 0; i < A.dim; ++i) mat[i][static_cast<std::size_t>(t) * m + s] = col[i];
      }
    A.mats.push_back(std::move(mat));
    A.names.push_back(u.str());
  }
  return A;
}

bool has_fixed_point_free_scalar(const Fq& F, const Poly& M) {
  if (M.degree() < 1) throw std::invalid_argument("modulus must be nonconstant");
  // b in F_q^* acts as multiplication by b; b - 1 is invertible on the
  // F_q-space A/(M) exactly when b != 1.
  return F.q() > 2;
}

bool h1_vanishing_expected(const Fq& F, const Poly& M) {
  if (F.q() != 2) return true;
  Poly t = Poly::T(F);
  Poly t1 = t + Poly::one(F);
  return !t.divides(M) && !t1.divides(M);
}

}  // namespace carlitz
