#pragma once

#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace frobcat {

/* Dense exact linear algebra over a prime field F_p (p a small prime).
 * Everything downstream (module categories, Ext, stable quotients) reduces
 * to rref / kernel / solve / quotient here, so elimination must be
 * deterministic: leftmost pivot column, topmost available row, full
 * Gauss-Jordan reduction.  No floating point anywhere. */

bool is_small_prime(int p);

struct RrefResult;

class FpMatrix {
public:
  FpMatrix() : p_(2), rows_(0), cols_(0) {}
  FpMatrix(int p, int rows, int cols);
  static FpMatrix identity(int p, int n);
  static FpMatrix from_rows(int p, const std::vector<std::vector<int>>& rows_in,
                            int cols_hint = -1);

  int p() const { return p_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  uint8_t at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
  void set(int i, int j, int v);

  FpMatrix mul(const FpMatrix& rhs) const;
  FpMatrix add(const FpMatrix& rhs) const;
  FpMatrix sub(const FpMatrix& rhs) const;
  FpMatrix scale(int c) const;
  FpMatrix neg() const { return scale(p_ - 1); }
  FpMatrix transpose() const;

  std::vector<uint8_t> mul_vec(const std::vector<uint8_t>& v) const;

  FpMatrix hstack(const FpMatrix& rhs) const;
  FpMatrix vstack(const FpMatrix& rhs) const;
  FpMatrix submatrix(int r0, int c0, int nrows, int ncols) const;
  FpMatrix select_columns(const std::vector<int>& idx) const;
  FpMatrix select_rows(const std::vector<int>& idx) const;

  /// Kronecker product; block (i,j) of the result is at(i,j) * rhs.
  FpMatrix kron(const FpMatrix& rhs) const;

  std::vector<uint8_t> row(int i) const;
  std::vector<uint8_t> col(int j) const;

  bool is_zero() const;
  bool operator==(const FpMatrix& rhs) const;
  bool operator!=(const FpMatrix& rhs) const { return !(*this == rhs); }

  int rank() const;
  std::optional<FpMatrix> inverse() const;

  /// Row-major flattening, used to treat Hom-spaces as coordinate spaces.
  std::vector<uint8_t> flatten() const { return a_; }
  static FpMatrix reshape(int p, int rows, int cols, const std::vector<uint8_t>& data);

  std::string to_string() const;
  uint64_t fingerprint() const;

private:
  int p_, rows_, cols_;
  std::vector<uint8_t> a_;
  friend struct RrefResult;
  friend RrefResult rref(const FpMatrix&);
};

int fp_inv(int a, int p);

struct RrefResult {
  FpMatrix reduced;
  std::vector<int> pivots;  // pivot column of each nonzero row, strictly increasing
  int rank = 0;
};

RrefResult rref(const FpMatrix& m);

/* Subspace of F_p^n, stored as the unique reduced-echelon basis so that two
 * subspaces are equal iff their representations are byte-equal. */
class Subspace {
public:
  Subspace() : p_(2), ambient_(0) {}
  Subspace(int p, int ambient) : p_(p), ambient_(ambient), basis_(p, 0, ambient) {}
  static Subspace from_rows(const FpMatrix& rows);
  static Subspace full(int p, int ambient);

  int p() const { return p_; }
  int ambient_dim() const { return ambient_; }
  int dim() const { return basis_.rows(); }
  const FpMatrix& basis() const { return basis_; }

  bool contains_vector(const std::vector<uint8_t>& v) const;
  bool contains(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
  Subspace intersect(const Subspace& other) const;
  bool operator==(const Subspace& rhs) const;

private:
  int p_, ambient_;
  FpMatrix basis_;  // rows form the canonical rref basis
};

/// Kernel {v : m v = 0}; generated per free column, then canonicalized.
Subspace kernel_basis(const FpMatrix& m);

/// Column span of m.
Subspace column_space(const FpMatrix& m);

/// One solution of m x = rhs with all free variables zero, if consistent.
std::optional<std::vector<uint8_t>> solve(const FpMatrix& m, const std::vector<uint8_t>& rhs);

/// Columnwise solve of a X = b.
std::optional<FpMatrix> solve_matrix(const FpMatrix& a, const FpMatrix& b);

/// Solve x a = b (composition constraints from the other side).
std::optional<FpMatrix> solve_left(const FpMatrix& a, const FpMatrix& b);

struct QuotientMap {
  FpMatrix projection;  // q x n, kernel = relations
  FpMatrix section;     // n x q, projection * section = id
  int quotient_dim = 0;
};

/// Canonical quotient F_p^n -> F_p^n / relations via rref pivot elimination.
QuotientMap quotient_map(int ambient_dim, const Subspace& relations, int p);

}  // namespace frobcat
