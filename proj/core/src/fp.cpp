#include "frobcat/fp.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace frobcat {

bool is_small_prime(int p) {
  if (p < 2 || p > 97) return false;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

int fp_inv(int a, int p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) throw std::invalid_argument("fp_inv: zero has no inverse");
  // p is prime, so a^(p-2) works; p <= 97 keeps everything in int range.
  int r = 1, b = a, e = p - 2;
  while (e) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

FpMatrix::FpMatrix(int p, int rows, int cols) : p_(p), rows_(rows), cols_(cols) {
  if (!is_small_prime(p)) throw std::invalid_argument("FpMatrix: p must be a prime in [2,97]");
  if (rows < 0 || cols < 0) throw std::invalid_argument("FpMatrix: negative dimension");
  a_.assign(static_cast<size_t>(rows) * cols, 0);
}

FpMatrix FpMatrix::identity(int p, int n) {
  FpMatrix m(p, n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(int p, const std::vector<std::vector<int>>& rows_in, int cols_hint) {
  int r = static_cast<int>(rows_in.size());
  int c = cols_hint >= 0 ? cols_hint : (r ? static_cast<int>(rows_in[0].size()) : 0);
  FpMatrix m(p, r, c);
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows_in[i].size()) != c)
      throw std::invalid_argument("FpMatrix::from_rows: ragged rows");
    for (int j = 0; j < c; ++j) m.set(i, j, rows_in[i][j]);
  }
  return m;
}

void FpMatrix::set(int i, int j, int v) {
  v %= p_;
  if (v < 0) v += p_;
  a_[static_cast<size_t>(i) * cols_ + j] = static_cast<uint8_t>(v);
}

FpMatrix FpMatrix::mul(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.rows_) throw std::invalid_argument("FpMatrix::mul: shape/field mismatch");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int k = 0; k < cols_; ++k) {
      int x = at(i, k);
      if (!x) continue;
      for (int j = 0; j < rhs.cols_; ++j) {
        int v = (out.at(i, j) + x * rhs.at(k, j)) % p_;
        out.a_[static_cast<size_t>(i) * out.cols_ + j] = static_cast<uint8_t>(v);
      }
    }
  return out;
}

FpMatrix FpMatrix::add(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_ || cols_ != rhs.cols_)
    throw std::invalid_argument("FpMatrix::add: shape/field mismatch");
  FpMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = static_cast<uint8_t>((a_[i] + rhs.a_[i]) % p_);
  return out;
}

FpMatrix FpMatrix::sub(const FpMatrix& rhs) const { return add(rhs.neg()); }

FpMatrix FpMatrix::scale(int c) const {
  c %= p_;
  if (c < 0) c += p_;
  FpMatrix out(p_, rows_, cols_);
  for (size_t i = 0; i < a_.size(); ++i) out.a_[i] = static_cast<uint8_t>(a_[i] * c % p_);
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(p_, cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(j, i, at(i, j));
  return out;
}

std::vector<uint8_t> FpMatrix::mul_vec(const std::vector<uint8_t>& v) const {
  if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("FpMatrix::mul_vec: length mismatch");
  std::vector<uint8_t> out(rows_, 0);
  for (int i = 0; i < rows_; ++i) {
    int acc = 0;
    for (int j = 0; j < cols_; ++j) acc = (acc + at(i, j) * v[j]) % p_;
    out[i] = static_cast<uint8_t>(acc);
  }
  return out;
}

FpMatrix FpMatrix::hstack(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || rows_ != rhs.rows_) throw std::invalid_argument("FpMatrix::hstack: mismatch");
  FpMatrix out(p_, rows_, cols_ + rhs.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
    for (int j = 0; j < rhs.cols_; ++j) out.set(i, cols_ + j, rhs.at(i, j));
  }
  return out;
}

FpMatrix FpMatrix::vstack(const FpMatrix& rhs) const {
  if (p_ != rhs.p_ || cols_ != rhs.cols_) throw std::invalid_argument("FpMatrix::vstack: mismatch");
  FpMatrix out(p_, rows_ + rhs.rows_, cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(i, j));
  for (int i = 0; i < rhs.rows_; ++i)
    for (int j = 0; j < cols_; ++j) out.set(rows_ + i, j, rhs.at(i, j));
  return out;
}

FpMatrix FpMatrix::submatrix(int r0, int c0, int nrows, int ncols) const {
  if (r0 < 0 || c0 < 0 || r0 + nrows > rows_ || c0 + ncols > cols_)
    throw std::invalid_argument("FpMatrix::submatrix: out of range");
  FpMatrix out(p_, nrows, ncols);
  for (int i = 0; i < nrows; ++i)
    for (int j = 0; j < ncols; ++j) out.set(i, j, at(r0 + i, c0 + j));
  return out;
}

FpMatrix FpMatrix::select_columns(const std::vector<int>& idx) const {
  FpMatrix out(p_, rows_, static_cast<int>(idx.size()));
  for (int j = 0; j < static_cast<int>(idx.size()); ++j)
    for (int i = 0; i < rows_; ++i) out.set(i, j, at(i, idx[j]));
  return out;
}

FpMatrix FpMatrix::select_rows(const std::vector<int>& idx) const {
  FpMatrix out(p_, static_cast<int>(idx.size()), cols_);
  for (int i = 0; i < static_cast<int>(idx.size()); ++i)
    for (int j = 0; j < cols_; ++j) out.set(i, j, at(idx[i], j));
  return out;
}

FpMatrix FpMatrix::kron(const FpMatrix& rhs) const {
  if (p_ != rhs.p_) throw std::invalid_argument("FpMatrix::kron: field mismatch");
  FpMatrix out(p_, rows_ * rhs.rows_, cols_ * rhs.cols_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) {
      int x = at(i, j);
      if (!x) continue;
      for (int a = 0; a < rhs.rows_; ++a)
        for (int b = 0; b < rhs.cols_; ++b)
          out.set(i * rhs.rows_ + a, j * rhs.cols_ + b, x * rhs.at(a, b));
    }
  return out;
}

std::vector<uint8_t> FpMatrix::row(int i) const {
  return std::vector<uint8_t>(a_.begin() + static_cast<size_t>(i) * cols_,
                              a_.begin() + static_cast<size_t>(i + 1) * cols_);
}

std::vector<uint8_t> FpMatrix::col(int j) const {
  std::vector<uint8_t> out(rows_);
  for (int i = 0; i < rows_; ++i) out[i] = at(i, j);
  return out;
}

bool FpMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](uint8_t x) { return x == 0; });
}

bool FpMatrix::operator==(const FpMatrix& rhs) const {
  return p_ == rhs.p_ && rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_;
}

FpMatrix FpMatrix::reshape(int p, int rows, int cols, const std::vector<uint8_t>& data) {
  if (static_cast<size_t>(rows) * cols != data.size())
    throw std::invalid_argument("FpMatrix::reshape: size mismatch");
  FpMatrix out(p, rows, cols);
  out.a_ = data;
  for (auto& x : out.a_) x = static_cast<uint8_t>(x % p);
  return out;
}

std::string FpMatrix::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < rows_; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < cols_; ++j) os << (j ? " " : "") << static_cast<int>(at(i, j));
  }
  os << "]";
  return os.str();
}

uint64_t FpMatrix::fingerprint() const {
  // FNV-1a over shape + entries; stable across runs, used for memo keys only.
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  mix(static_cast<uint64_t>(p_));
  mix(static_cast<uint64_t>(rows_));
  mix(static_cast<uint64_t>(cols_));
  for (uint8_t x : a_) mix(x);
  return h;
}

int FpMatrix::rank() const { return rref(*this).rank; }

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  RrefResult r = rref(hstack(identity(p_, rows_)));
  if (r.rank != rows_) return std::nullopt;
  for (int i = 0; i < rows_; ++i)
    if (i >= static_cast<int>(r.pivots.size()) || r.pivots[i] != i) return std::nullopt;
  return r.reduced.submatrix(0, cols_, rows_, rows_);
}

RrefResult rref(const FpMatrix& m) {
  RrefResult res;
  res.reduced = m;
  FpMatrix& a = res.reduced;
  const int p = m.p();
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int pivot = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a.at(i, c)) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != r)
      for (int j = 0; j < a.cols(); ++j) {
        int t = a.at(r, j);
        a.set(r, j, a.at(pivot, j));
        a.set(pivot, j, t);
      }
    int inv = fp_inv(a.at(r, c), p);
    for (int j = 0; j < a.cols(); ++j) a.set(r, j, a.at(r, j) * inv);
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r) continue;
      int f = a.at(i, c);
      if (!f) continue;
      for (int j = 0; j < a.cols(); ++j) a.set(i, j, a.at(i, j) + (p - f) * a.at(r, j));
    }
    res.pivots.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

Subspace Subspace::from_rows(const FpMatrix& rows) {
  RrefResult r = rref(rows);
  Subspace s(rows.p(), rows.cols());
  s.basis_ = r.reduced.submatrix(0, 0, r.rank, rows.cols());
  return s;
}

Subspace Subspace::full(int p, int ambient) { return from_rows(FpMatrix::identity(p, ambient)); }

bool Subspace::contains_vector(const std::vector<uint8_t>& v) const {
  if (static_cast<int>(v.size()) != ambient_) throw std::invalid_argument("Subspace: ambient mismatch");
  // Reduce v against the rref basis; containment iff it reduces to zero.
  std::vector<int> w(v.begin(), v.end());
  for (int i = 0; i < basis_.rows(); ++i) {
    int piv = -1;
    for (int j = 0; j < ambient_; ++j)
      if (basis_.at(i, j)) {
        piv = j;
        break;
      }
    if (piv < 0) continue;
    int f = w[piv] % p_;
    if (!f) continue;
    for (int j = 0; j < ambient_; ++j) w[j] = ((w[j] - f * basis_.at(i, j)) % p_ + p_) % p_;
  }
  return std::all_of(w.begin(), w.end(), [this](int x) { return x % p_ == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_) return false;
  for (int i = 0; i < other.basis_.rows(); ++i)
    if (!contains_vector(other.basis_.row(i))) return false;
  return true;
}

Subspace Subspace::sum(const Subspace& other) const {
  if (ambient_ != other.ambient_ || p_ != other.p_)
    throw std::invalid_argument("Subspace::sum: mismatch");
  if (basis_.rows() == 0) return other;
  if (other.basis_.rows() == 0) return *this;
  return from_rows(basis_.vstack(other.basis_));
}

Subspace Subspace::intersect(const Subspace& other) const {
  if (ambient_ != other.ambient_ || p_ != other.p_)
    throw std::invalid_argument("Subspace::intersect: mismatch");
  // Zassenhaus-style: kernel of [B1^T | B2^T] glued ... keep it simple:
  // x in both spans iff x = a B1 = b B2; solve [B1^T, -B2^T] (u;v) = 0.
  int d1 = basis_.rows(), d2 = other.basis_.rows();
  if (d1 == 0 || d2 == 0) return Subspace(p_, ambient_);
  FpMatrix sys = basis_.transpose().hstack(other.basis_.transpose().neg());
  Subspace ker = kernel_basis(sys);
  FpMatrix rows(p_, ker.dim(), ambient_);
  for (int i = 0; i < ker.dim(); ++i) {
    std::vector<uint8_t> coeff = ker.basis().row(i);
    std::vector<uint8_t> u(coeff.begin(), coeff.begin() + d1);
    std::vector<uint8_t> x = basis_.transpose().mul_vec(u);
    for (int j = 0; j < ambient_; ++j) rows.set(i, j, x[j]);
  }
  return from_rows(rows);
}

bool Subspace::operator==(const Subspace& rhs) const {
  return p_ == rhs.p_ && ambient_ == rhs.ambient_ && basis_ == rhs.basis_;
}

Subspace kernel_basis(const FpMatrix& m) {
  RrefResult r = rref(m);
  const int p = m.p();
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<int>> rows;
  for (int f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    std::vector<int> v(m.cols(), 0);
    v[f] = 1;
    for (int i = 0; i < static_cast<int>(r.pivots.size()); ++i)
      v[r.pivots[i]] = (p - r.reduced.at(i, f)) % p;
    rows.push_back(std::move(v));
  }
  return Subspace::from_rows(FpMatrix::from_rows(p, rows, m.cols()));
}

Subspace column_space(const FpMatrix& m) { return Subspace::from_rows(m.transpose()); }

std::optional<std::vector<uint8_t>> solve(const FpMatrix& m, const std::vector<uint8_t>& rhs) {
  if (static_cast<int>(rhs.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
  FpMatrix b(m.p(), m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i) b.set(i, 0, rhs[i]);
  auto x = solve_matrix(m, b);
  if (!x) return std::nullopt;
  return x->col(0);
}

std::optional<FpMatrix> solve_matrix(const FpMatrix& a, const FpMatrix& b) {
  if (a.p() != b.p() || a.rows() != b.rows()) throw std::invalid_argument("solve_matrix: mismatch");
  RrefResult r = rref(a.hstack(b));
  // Consistent iff no pivot lands in the rhs block.
  for (int c : r.pivots)
    if (c >= a.cols()) return std::nullopt;
  FpMatrix x(a.p(), a.cols(), b.cols());
  for (int i = 0; i < static_cast<int>(r.pivots.size()); ++i)
    for (int j = 0; j < b.cols(); ++j) x.set(r.pivots[i], j, r.reduced.at(i, a.cols() + j));
  return x;
}

std::optional<FpMatrix> solve_left(const FpMatrix& a, const FpMatrix& b) {
  if (a.p() != b.p() || a.cols() != b.cols()) throw std::invalid_argument("solve_left: mismatch");
  auto xt = solve_matrix(a.transpose(), b.transpose());
  if (!xt) return std::nullopt;
  return xt->transpose();
}

QuotientMap quotient_map(int ambient_dim, const Subspace& relations, int p) {
  if (relations.ambient_dim() != ambient_dim)
    throw std::invalid_argument("quotient_map: ambient mismatch");
  QuotientMap qm;
  const FpMatrix& rel = relations.basis();
  std::vector<bool> is_pivot(ambient_dim, false);
  std::vector<int> pivot_col(rel.rows(), -1);
  for (int i = 0; i < rel.rows(); ++i)
    for (int j = 0; j < ambient_dim; ++j)
      if (rel.at(i, j)) {
        pivot_col[i] = j;
        is_pivot[j] = true;
        break;
      }
  std::vector<int> free_cols;
  for (int j = 0; j < ambient_dim; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  int q = static_cast<int>(free_cols.size());
  qm.quotient_dim = q;
  qm.projection = FpMatrix(p, q, ambient_dim);
  qm.section = FpMatrix(p, ambient_dim, q);
  for (int k = 0; k < q; ++k) {
    qm.projection.set(k, free_cols[k], 1);
    qm.section.set(free_cols[k], k, 1);
  }
  // Kill the pivot coordinates: subtract the relation supported there.
  for (int i = 0; i < rel.rows(); ++i)
    for (int k = 0; k < q; ++k)
      qm.projection.set(k, pivot_col[i], -static_cast<int>(rel.at(i, free_cols[k])));
  return qm;
}

}  // namespace frobcat
