#pragma once

#include <vector>

#include "arithinv/ring.hpp"

namespace arithinv {

/// Dense matrix with exact entries over one coefficient ring.
/// Entries are stored as canonical rationals (denominator 1 over Z and F_p,
/// representative in [0, p) over F_p). Values are immutable in practice:
/// every operation returns a fresh matrix.
class ExactMatrix {
 public:
  ExactMatrix(RingDescriptor ring, int rows, int cols);
  static ExactMatrix identity(const RingDescriptor& ring, int n);

  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const RingDescriptor& ring() const noexcept { return ring_; }

  const mpq_class& operator()(int r, int c) const { return entries_[r * cols_ + c]; }
  void set(int r, int c, const mpq_class& v) { entries_[r * cols_ + c] = normalize_value(ring_, v); }
  Scalar entry(int r, int c) const { return Scalar(ring_, (*this)(r, c)); }

  ExactMatrix transpose() const;
  bool is_zero() const;
  bool is_identity() const;
  bool is_square() const noexcept { return rows_ == cols_; }

  ExactMatrix operator*(const ExactMatrix& o) const;
  ExactMatrix operator+(const ExactMatrix& o) const;
  ExactMatrix operator-(const ExactMatrix& o) const;
  ExactMatrix operator-() const;
  bool operator==(const ExactMatrix& o) const;
  bool operator!=(const ExactMatrix& o) const { return !(*this == o); }

  /// Deterministic total order: dims, ring, then entrywise. Used for closure
  /// bookkeeping and tie-breaks.
  static int compare(const ExactMatrix& a, const ExactMatrix& b);

  /// Reinterprets entries in `target`: Z->Q and Z->F_p reductions, Q->Z when
  /// all denominators are 1.
  ExactMatrix to_ring(const RingDescriptor& target) const;

  ExactMatrix column(int c) const;
  /// Glue blocks side by side / on top of each other.
  static ExactMatrix hcat(const ExactMatrix& a, const ExactMatrix& b);
  static ExactMatrix vcat(const ExactMatrix& a, const ExactMatrix& b);

 private:
  RingDescriptor ring_;
  int rows_, cols_;
  std::vector<mpq_class> entries_;
};

struct MatrixLess {
  bool operator()(const ExactMatrix& a, const ExactMatrix& b) const {
    return ExactMatrix::compare(a, b) < 0;
  }
};

struct RrefResult {
  ExactMatrix reduced;
  std::vector<int> pivots;
};

/// Reduced row echelon form over Q or F_p. Over Q the forward pass is
/// fraction-free (Bareiss) on a denominator-cleared copy.
RrefResult rref(const ExactMatrix& m);

/// Rank over the fraction field (Z matrices are treated as Q).
int rank(const ExactMatrix& m);

/// Columns form a basis of {v : m v = 0}; fields only.
ExactMatrix nullspace(const ExactMatrix& m);

struct HnfResult {
  ExactMatrix h;  // row-style Hermite normal form
  ExactMatrix u;  // unimodular, u * input = h
};

/// Row-style HNF over Z: pivots positive, entries above a pivot reduced into
/// [0, pivot).
HnfResult hnf(const ExactMatrix& m);

/// Columns form a Z-basis of ker(m); the lattice is saturated.
ExactMatrix integer_kernel(const ExactMatrix& m);

struct SmithDecomposition {
  ExactMatrix u, d, v;  // u * input * v = d, u and v unimodular
  std::vector<mpz_class> elementary_divisors;
};

SmithDecomposition snf(const ExactMatrix& m);

mpq_class determinant(const ExactMatrix& m);

/// Inverse over a field, or over Z when the matrix is unimodular.
ExactMatrix inverse(const ExactMatrix& m);

/// Coordinates of the columns of `vectors` with respect to the columns of
/// `basis` (which must be independent); solved over the fraction field.
ExactMatrix solve_in_column_basis(const ExactMatrix& basis, const ExactMatrix& vectors);

/// Canonical basis (as columns) of the column space / column lattice:
/// rref rows over fields, HNF rows over Z (span preserved exactly).
ExactMatrix column_space_basis(const ExactMatrix& vectors);

}  // namespace arithinv
