#include "arithinv/matrix.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace arithinv {

namespace {

// Dense integer workspace for the Z and F_p eliminations.
struct ZGrid {
  int rows = 0, cols = 0;
  std::vector<mpz_class> a;

  ZGrid(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}

  mpz_class& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const mpz_class& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  static ZGrid identity(int n) {
    ZGrid g(n, n);
    for (int i = 0; i < n; ++i) g.at(i, i) = 1;
    return g;
  }

  void swap_rows(int i, int j) {
    if (i == j) return;
    for (int c = 0; c < cols; ++c) std::swap(at(i, c), at(j, c));
  }
  void swap_cols(int i, int j) {
    if (i == j) return;
    for (int r = 0; r < rows; ++r) std::swap(at(r, i), at(r, j));
  }
  void negate_row(int i) {
    for (int c = 0; c < cols; ++c) at(i, c) = -at(i, c);
  }
  // row_i -= q * row_j
  void submul_row(int i, int j, const mpz_class& q) {
    if (q == 0) return;
    for (int c = 0; c < cols; ++c) at(i, c) -= q * at(j, c);
  }
  // col_i -= q * col_j
  void submul_col(int i, int j, const mpz_class& q) {
    if (q == 0) return;
    for (int r = 0; r < rows; ++r) at(r, i) -= q * at(r, j);
  }
};

ZGrid integer_grid(const ExactMatrix& m) {
  ZGrid g(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) {
      const mpq_class& v = m(r, c);
      assert(v.get_den() == 1);
      g.at(r, c) = v.get_num();
    }
  return g;
}

// Rows scaled to integers by the lcm of their denominators; row space kept.
ZGrid cleared_grid(const ExactMatrix& m) {
  ZGrid g(m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r) {
    mpz_class l = 1;
    for (int c = 0; c < m.cols(); ++c)
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den().get_mpz_t());
    for (int c = 0; c < m.cols(); ++c) {
      mpq_class v = m(r, c) * l;
      assert(v.get_den() == 1);
      g.at(r, c) = v.get_num();
    }
  }
  return g;
}

ExactMatrix from_grid(const RingDescriptor& ring, const ZGrid& g) {
  ExactMatrix m(ring, g.rows, g.cols);
  for (int r = 0; r < g.rows; ++r)
    for (int c = 0; c < g.cols; ++c) m.set(r, c, mpq_class(g.at(r, c)));
  return m;
}

void reduce_grid_mod(ZGrid& g, const mpz_class& p) {
  for (auto& v : g.a) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
}

mpz_class mod_inverse(const mpz_class& a, const mpz_class& p) {
  mpz_class inv;
  int ok = mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  if (!ok) fail(ErrorCode::invalid_argument, "no inverse mod " + p.get_str());
  return inv;
}

// Gauss-Jordan mod p; returns pivot columns, grid ends in RREF.
std::vector<int> rref_grid_mod_p(ZGrid& g, const mpz_class& p) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < g.cols && r < g.rows; ++c) {
    int pr = -1;
    for (int i = r; i < g.rows; ++i)
      if (g.at(i, c) % p != 0) { pr = i; break; }
    if (pr < 0) continue;
    g.swap_rows(r, pr);
    mpz_class inv = mod_inverse(g.at(r, c), p);
    for (int k = c; k < g.cols; ++k) g.at(r, k) = (g.at(r, k) * inv) % p;
    for (int i = 0; i < g.rows; ++i) {
      if (i == r) continue;
      mpz_class f = g.at(i, c) % p;
      if (f == 0) continue;
      for (int k = c; k < g.cols; ++k) {
        g.at(i, k) -= f * g.at(r, k);
        mpz_fdiv_r(g.at(i, k).get_mpz_t(), g.at(i, k).get_mpz_t(), p.get_mpz_t());
      }
    }
    pivots.push_back(c);
    ++r;
  }
  reduce_grid_mod(g, p);
  return pivots;
}

// Fraction-free (Bareiss) forward elimination; leaves an echelon grid and
// returns the pivot columns. sign, when given, accumulates row-swap parity.
std::vector<int> bareiss_forward(ZGrid& g, int* sign = nullptr) {
  std::vector<int> pivots;
  mpz_class prev = 1;
  int r = 0;
  if (sign) *sign = 1;
  for (int c = 0; c < g.cols && r < g.rows; ++c) {
    int pr = -1;
    for (int i = r; i < g.rows; ++i)
      if (g.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r) {
      g.swap_rows(r, pr);
      if (sign) *sign = -*sign;
    }
    const mpz_class pivot = g.at(r, c);
    for (int i = r + 1; i < g.rows; ++i) {
      const mpz_class lead = g.at(i, c);
      for (int k = c; k < g.cols; ++k) {
        mpz_class t = pivot * g.at(i, k) - lead * g.at(r, k);
        mpz_divexact(g.at(i, k).get_mpz_t(), t.get_mpz_t(), prev.get_mpz_t());
      }
      g.at(i, c) = 0;
    }
    prev = pivot;
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

// Rank-only elimination with row-content stripping to keep entries small.
int rank_grid_stripped(ZGrid& g) {
  auto strip = [&](int i, int from) {
    mpz_class content = 0;
    for (int k = from; k < g.cols; ++k)
      mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), g.at(i, k).get_mpz_t());
    if (content > 1)
      for (int k = from; k < g.cols; ++k)
        mpz_divexact(g.at(i, k).get_mpz_t(), g.at(i, k).get_mpz_t(), content.get_mpz_t());
  };
  int r = 0;
  for (int c = 0; c < g.cols && r < g.rows; ++c) {
    int pr = -1;
    for (int i = r; i < g.rows; ++i)
      if (g.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    g.swap_rows(r, pr);
    const mpz_class pivot = g.at(r, c);
    for (int i = r + 1; i < g.rows; ++i) {
      const mpz_class lead = g.at(i, c);
      if (lead == 0) continue;
      for (int k = c; k < g.cols; ++k) g.at(i, k) = pivot * g.at(i, k) - lead * g.at(r, k);
      g.at(i, c) = 0;
      strip(i, c + 1);
    }
    ++r;
  }
  return r;
}

void xgcd(const mpz_class& a, const mpz_class& b, mpz_class& g, mpz_class& s, mpz_class& t) {
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
}

// Row-style HNF on the grid, tracking the same row operations in u.
void hnf_grids(ZGrid& h, ZGrid& u) {
  int r = 0;
  for (int c = 0; c < h.cols && r < h.rows; ++c) {
    int pr = -1;
    for (int i = r; i < h.rows; ++i)
      if (h.at(i, c) != 0) { pr = i; break; }
    if (pr < 0) continue;
    if (pr != r) { h.swap_rows(r, pr); u.swap_rows(r, pr); }
    for (int i = r + 1; i < h.rows; ++i) {
      if (h.at(i, c) == 0) continue;
      mpz_class g, s, t;
      xgcd(h.at(r, c), h.at(i, c), g, s, t);
      mpz_class aa = h.at(r, c) / g, bb = h.at(i, c) / g;
      // [[s, t], [-bb, aa]] has determinant 1
      for (int k = 0; k < h.cols; ++k) {
        mpz_class hr = s * h.at(r, k) + t * h.at(i, k);
        mpz_class hi = -bb * h.at(r, k) + aa * h.at(i, k);
        h.at(r, k) = hr;
        h.at(i, k) = hi;
      }
      for (int k = 0; k < u.cols; ++k) {
        mpz_class ur = s * u.at(r, k) + t * u.at(i, k);
        mpz_class ui = -bb * u.at(r, k) + aa * u.at(i, k);
        u.at(r, k) = ur;
        u.at(i, k) = ui;
      }
    }
    if (h.at(r, c) < 0) { h.negate_row(r); u.negate_row(r); }
    for (int i = 0; i < r; ++i) {
      mpz_class q;
      mpz_fdiv_q(q.get_mpz_t(), h.at(i, c).get_mpz_t(), h.at(r, c).get_mpz_t());
      if (q != 0) { h.submul_row(i, r, q); u.submul_row(i, r, q); }
    }
    ++r;
  }
}

bool grid_row_is_zero(const ZGrid& g, int r) {
  for (int c = 0; c < g.cols; ++c)
    if (g.at(r, c) != 0) return false;
  return true;
}

}  // namespace

ExactMatrix::ExactMatrix(RingDescriptor ring, int rows, int cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols),
      entries_(static_cast<size_t>(rows) * cols) {
  if (rows < 0 || cols < 0) fail(ErrorCode::invalid_argument, "negative matrix dimension");
}

ExactMatrix ExactMatrix::identity(const RingDescriptor& ring, int n) {
  ExactMatrix m(ring, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::transpose() const {
  ExactMatrix t(ring_, cols_, rows_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) t.entries_[static_cast<size_t>(c) * rows_ + r] = (*this)(r, c);
  return t;
}

bool ExactMatrix::is_zero() const {
  for (const auto& v : entries_)
    if (v != 0) return false;
  return true;
}

bool ExactMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if ((*this)(r, c) != (r == c ? 1 : 0)) return false;
  return true;
}

ExactMatrix ExactMatrix::operator*(const ExactMatrix& o) const {
  require_same_ring(ring_, o.ring_, "matrix product");
  if (cols_ != o.rows_) fail(ErrorCode::dimension_mismatch, "matrix product shapes");
  ExactMatrix out(ring_, rows_, o.cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < o.cols_; ++c) {
      mpq_class acc = 0;
      for (int k = 0; k < cols_; ++k) {
        const mpq_class& a = (*this)(r, k);
        if (a == 0) continue;
        acc += a * o(k, c);
      }
      out.set(r, c, acc);
    }
  return out;
}

ExactMatrix ExactMatrix::operator+(const ExactMatrix& o) const {
  require_same_ring(ring_, o.ring_, "matrix add");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::dimension_mismatch, "matrix add shapes");
  ExactMatrix out(ring_, rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = normalize_value(ring_, entries_[i] + o.entries_[i]);
  return out;
}

ExactMatrix ExactMatrix::operator-(const ExactMatrix& o) const {
  require_same_ring(ring_, o.ring_, "matrix sub");
  if (rows_ != o.rows_ || cols_ != o.cols_) fail(ErrorCode::dimension_mismatch, "matrix sub shapes");
  ExactMatrix out(ring_, rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = normalize_value(ring_, entries_[i] - o.entries_[i]);
  return out;
}

ExactMatrix ExactMatrix::operator-() const {
  ExactMatrix out(ring_, rows_, cols_);
  for (size_t i = 0; i < entries_.size(); ++i)
    out.entries_[i] = normalize_value(ring_, -entries_[i]);
  return out;
}

bool ExactMatrix::operator==(const ExactMatrix& o) const {
  return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

int ExactMatrix::compare(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.rows_ != b.rows_) return a.rows_ < b.rows_ ? -1 : 1;
  if (a.cols_ != b.cols_) return a.cols_ < b.cols_ ? -1 : 1;
  for (size_t i = 0; i < a.entries_.size(); ++i) {
    int c = cmp(a.entries_[i], b.entries_[i]);
    if (c != 0) return c;
  }
  return 0;
}

ExactMatrix ExactMatrix::to_ring(const RingDescriptor& target) const {
  ExactMatrix out(target, rows_, cols_);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) out.set(r, c, (*this)(r, c));
  return out;
}

ExactMatrix ExactMatrix::column(int c) const {
  ExactMatrix out(ring_, rows_, 1);
  for (int r = 0; r < rows_; ++r) out.set(r, 0, (*this)(r, c));
  return out;
}

ExactMatrix ExactMatrix::hcat(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "hcat");
  if (a.rows_ != b.rows_) fail(ErrorCode::dimension_mismatch, "hcat row counts");
  ExactMatrix out(a.ring_, a.rows_, a.cols_ + b.cols_);
  for (int r = 0; r < a.rows_; ++r) {
    for (int c = 0; c < a.cols_; ++c) out.set(r, c, a(r, c));
    for (int c = 0; c < b.cols_; ++c) out.set(r, a.cols_ + c, b(r, c));
  }
  return out;
}

ExactMatrix ExactMatrix::vcat(const ExactMatrix& a, const ExactMatrix& b) {
  require_same_ring(a.ring_, b.ring_, "vcat");
  if (a.cols_ != b.cols_) fail(ErrorCode::dimension_mismatch, "vcat column counts");
  ExactMatrix out(a.ring_, a.rows_ + b.rows_, a.cols_);
  for (int r = 0; r < a.rows_; ++r)
    for (int c = 0; c < a.cols_; ++c) out.set(r, c, a(r, c));
  for (int r = 0; r < b.rows_; ++r)
    for (int c = 0; c < b.cols_; ++c) out.set(a.rows_ + r, c, b(r, c));
  return out;
}

RrefResult rref(const ExactMatrix& m) {
  if (!m.ring().is_field()) fail(ErrorCode::non_field_ring, "rref needs Q or F_p");

  if (m.ring().kind() == RingKind::prime_field) {
    ZGrid g = integer_grid(m);
    std::vector<int> pivots = rref_grid_mod_p(g, m.ring().modulus());
    return {from_grid(m.ring(), g), std::move(pivots)};
  }

  // Rationals: fraction-free forward pass, rational back substitution.
  ZGrid g = cleared_grid(m);
  std::vector<int> pivots = bareiss_forward(g);
  const int rank = static_cast<int>(pivots.size());
  ExactMatrix out(m.ring(), m.rows(), m.cols());
  for (int i = 0; i < rank; ++i) {
    mpq_class lead(g.at(i, pivots[i]));
    for (int c = pivots[i]; c < g.cols; ++c)
      out.set(i, c, mpq_class(g.at(i, c)) / lead);
  }
  for (int i = rank - 1; i >= 0; --i)
    for (int j = 0; j < i; ++j) {
      mpq_class f = out(j, pivots[i]);
      if (f == 0) continue;
      for (int c = pivots[i]; c < m.cols(); ++c)
        out.set(j, c, out(j, c) - f * out(i, c));
    }
  return {std::move(out), std::move(pivots)};
}

int rank(const ExactMatrix& m) {
  if (m.ring().kind() == RingKind::prime_field) {
    ZGrid g = integer_grid(m);
    return static_cast<int>(rref_grid_mod_p(g, m.ring().modulus()).size());
  }
  ZGrid g = m.ring().kind() == RingKind::integers ? integer_grid(m) : cleared_grid(m);
  return rank_grid_stripped(g);
}

ExactMatrix nullspace(const ExactMatrix& m) {
  if (!m.ring().is_field()) fail(ErrorCode::non_field_ring, "nullspace needs Q or F_p");
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : rr.pivots) is_pivot[c] = true;
  const int k = m.cols() - static_cast<int>(rr.pivots.size());
  ExactMatrix basis(m.ring(), m.cols(), k);
  int out = 0;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    basis.set(c, out, 1);
    for (size_t i = 0; i < rr.pivots.size(); ++i)
      basis.set(rr.pivots[i], out, -rr.reduced(static_cast<int>(i), c));
    ++out;
  }
  return basis;
}

HnfResult hnf(const ExactMatrix& m) {
  if (m.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "hnf needs a Z matrix");
  ZGrid h = integer_grid(m);
  ZGrid u = ZGrid::identity(m.rows());
  hnf_grids(h, u);
  return {from_grid(m.ring(), h), from_grid(m.ring(), u)};
}

ExactMatrix integer_kernel(const ExactMatrix& m) {
  if (m.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "integer_kernel needs a Z matrix");
  ZGrid h = integer_grid(m.transpose());
  ZGrid u = ZGrid::identity(m.cols());
  hnf_grids(h, u);
  std::vector<int> zero_rows;
  for (int r = 0; r < h.rows; ++r)
    if (grid_row_is_zero(h, r)) zero_rows.push_back(r);
  ExactMatrix basis(m.ring(), m.cols(), static_cast<int>(zero_rows.size()));
  for (size_t j = 0; j < zero_rows.size(); ++j)
    for (int c = 0; c < m.cols(); ++c)
      basis.set(c, static_cast<int>(j), mpq_class(u.at(zero_rows[j], c)));
  return basis;
}

SmithDecomposition snf(const ExactMatrix& m) {
  if (m.ring().kind() != RingKind::integers)
    fail(ErrorCode::ring_mismatch, "snf needs a Z matrix");
  ZGrid d = integer_grid(m);
  ZGrid u = ZGrid::identity(m.rows());
  ZGrid v = ZGrid::identity(m.cols());
  const int nmin = std::min(d.rows, d.cols);

  for (int s = 0; s < nmin; ++s) {
    // pivot: smallest nonzero |entry| of the trailing submatrix
    auto locate = [&](int& pi, int& pj) -> bool {
      bool found = false;
      mpz_class best;
      for (int i = s; i < d.rows; ++i)
        for (int j = s; j < d.cols; ++j) {
          if (d.at(i, j) == 0) continue;
          mpz_class a = abs(d.at(i, j));
          if (!found || a < best) { found = true; best = a; pi = i; pj = j; }
        }
      return found;
    };

    int pi, pj;
    if (!locate(pi, pj)) break;  // trailing submatrix is zero
    while (true) {
      d.swap_rows(s, pi); u.swap_rows(s, pi);
      d.swap_cols(s, pj); v.swap_cols(s, pj);

      bool clean = true;
      for (int i = s + 1; i < d.rows; ++i) {
        if (d.at(i, s) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d.at(i, s).get_mpz_t(), d.at(s, s).get_mpz_t());
        d.submul_row(i, s, q);
        u.submul_row(i, s, q);
        if (d.at(i, s) != 0) clean = false;
      }
      for (int j = s + 1; j < d.cols; ++j) {
        if (d.at(s, j) == 0) continue;
        mpz_class q;
        mpz_tdiv_q(q.get_mpz_t(), d.at(s, j).get_mpz_t(), d.at(s, s).get_mpz_t());
        d.submul_col(j, s, q);
        v.submul_col(j, s, q);
        if (d.at(s, j) != 0) clean = false;
      }
      if (!clean) { locate(pi, pj); continue; }

      // pivot row/col clear; pull in any entry the pivot does not divide
      int bi = -1;
      for (int i = s + 1; i < d.rows && bi < 0; ++i)
        for (int j = s + 1; j < d.cols; ++j)
          if (d.at(i, j) % d.at(s, s) != 0) { bi = i; break; }
      if (bi < 0) break;
      d.submul_row(s, bi, mpz_class(-1));
      u.submul_row(s, bi, mpz_class(-1));
      locate(pi, pj);
    }
    if (d.at(s, s) < 0) { d.negate_row(s); u.negate_row(s); }
  }

  SmithDecomposition out{from_grid(m.ring(), u), from_grid(m.ring(), d), from_grid(m.ring(), v), {}};
  for (int i = 0; i < nmin; ++i) out.elementary_divisors.push_back(d.at(i, i));
  for (size_t i = 0; i + 1 < out.elementary_divisors.size(); ++i) {
    const mpz_class& a = out.elementary_divisors[i];
    const mpz_class& b = out.elementary_divisors[i + 1];
    if (a == 0 ? b != 0 : b % a != 0)
      fail(ErrorCode::verification_failed, "snf divisibility chain broken");
  }
  return out;
}

mpq_class determinant(const ExactMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::dimension_mismatch, "determinant of non-square matrix");
  if (m.rows() == 0) return 1;
  if (m.ring().kind() == RingKind::prime_field) {
    ZGrid g = integer_grid(m);
    const mpz_class& p = m.ring().modulus();
    mpz_class det = 1;
    int r = 0;
    for (int c = 0; c < g.cols && r < g.rows; ++c) {
      int pr = -1;
      for (int i = r; i < g.rows; ++i)
        if (g.at(i, c) % p != 0) { pr = i; break; }
      if (pr < 0) return 0;
      if (pr != r) { g.swap_rows(r, pr); det = -det; }
      det = (det * g.at(r, c)) % p;
      mpz_class inv = mod_inverse(g.at(r, c), p);
      for (int i = r + 1; i < g.rows; ++i) {
        mpz_class f = (g.at(i, c) * inv) % p;
        if (f == 0) continue;
        for (int k = c; k < g.cols; ++k) g.at(i, k) = (g.at(i, k) - f * g.at(r, k)) % p;
      }
      ++r;
    }
    mpz_fdiv_r(det.get_mpz_t(), det.get_mpz_t(), p.get_mpz_t());
    return mpq_class(det);
  }

  // Z and Q share the Bareiss route; for Q the row multipliers divide out.
  mpq_class scale = 1;
  ZGrid g(m.rows(), m.cols());
  if (m.ring().kind() == RingKind::integers) {
    g = integer_grid(m);
  } else {
    for (int r = 0; r < m.rows(); ++r) {
      mpz_class l = 1;
      for (int c = 0; c < m.cols(); ++c)
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(r, c).get_den().get_mpz_t());
      scale *= mpq_class(l);
      for (int c = 0; c < m.cols(); ++c) {
        mpq_class v = m(r, c) * l;
        g.at(r, c) = v.get_num();
      }
    }
  }
  int sign = 1;
  std::vector<int> pivots = bareiss_forward(g, &sign);
  if (static_cast<int>(pivots.size()) < m.rows()) return 0;
  mpq_class det(g.at(m.rows() - 1, pivots.back()));
  if (sign < 0) det = -det;
  return det / scale;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (!m.is_square()) fail(ErrorCode::dimension_mismatch, "inverse of non-square matrix");
  if (m.ring().kind() == RingKind::integers) {
    ExactMatrix inv_q = inverse(m.to_ring(RingDescriptor::rationals()));
    ExactMatrix out(m.ring(), m.rows(), m.cols());
    for (int r = 0; r < m.rows(); ++r)
      for (int c = 0; c < m.cols(); ++c) {
        if (!value_is_integral(inv_q(r, c)))
          fail(ErrorCode::not_invertible_over_ring, "matrix is not unimodular over Z");
        out.set(r, c, inv_q(r, c));
      }
    return out;
  }
  RrefResult rr = rref(ExactMatrix::hcat(m, ExactMatrix::identity(m.ring(), m.rows())));
  if (static_cast<int>(rr.pivots.size()) != m.rows() || rr.pivots.back() >= m.rows())
    fail(ErrorCode::not_invertible_over_ring, "singular matrix");
  ExactMatrix out(m.ring(), m.rows(), m.cols());
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c) out.set(r, c, rr.reduced(r, m.cols() + c));
  return out;
}

ExactMatrix solve_in_column_basis(const ExactMatrix& basis, const ExactMatrix& vectors) {
  require_same_ring(basis.ring(), vectors.ring(), "solve_in_column_basis");
  if (basis.rows() != vectors.rows())
    fail(ErrorCode::dimension_mismatch, "solve_in_column_basis row counts");
  RingDescriptor field = basis.ring().kind() == RingKind::integers
                             ? RingDescriptor::rationals()
                             : basis.ring();
  ExactMatrix aug = ExactMatrix::hcat(basis.to_ring(field), vectors.to_ring(field));
  RrefResult rr = rref(aug);
  const int k = basis.cols();
  for (size_t i = 0; i < rr.pivots.size(); ++i) {
    if (rr.pivots[i] >= k)
      fail(ErrorCode::verification_failed,
           static_cast<int>(i) < k ? "basis columns are dependent"
                                   : "vector outside the basis span");
  }
  if (static_cast<int>(rr.pivots.size()) != k)
    fail(ErrorCode::verification_failed, "basis columns are dependent");
  ExactMatrix coords(field, k, vectors.cols());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < vectors.cols(); ++j) coords.set(i, j, rr.reduced(i, k + j));
  return coords;
}

ExactMatrix column_space_basis(const ExactMatrix& vectors) {
  ExactMatrix t = vectors.transpose();
  ExactMatrix reduced = vectors.ring().kind() == RingKind::integers ? hnf(t).h : rref(t).reduced;
  int nonzero = 0;
  for (int r = 0; r < reduced.rows(); ++r) {
    bool z = true;
    for (int c = 0; c < reduced.cols(); ++c)
      if (reduced(r, c) != 0) { z = false; break; }
    if (!z) ++nonzero;
  }
  ExactMatrix out(vectors.ring(), vectors.rows(), nonzero);
  for (int r = 0; r < nonzero; ++r)
    for (int c = 0; c < reduced.cols(); ++c) out.set(c, r, reduced(r, c));
  return out;
}

}  // namespace arithinv
