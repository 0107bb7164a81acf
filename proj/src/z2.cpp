#include "wellkit/z2.hpp"

#include <bit>
#include <stdexcept>

namespace wellkit {

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.size_ != size_) throw std::invalid_argument("BitVector size mismatch");
  for (size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
  return *this;
}

bool BitVector::any() const {
  for (uint64_t w : w_)
    if (w) return true;
  return false;
}

int BitVector::count() const {
  int c = 0;
  for (uint64_t w : w_) c += std::popcount(w);
  return c;
}

int BitVector::lowest() const {
  for (size_t i = 0; i < w_.size(); ++i)
    if (w_[i]) return (int)(i * 64 + std::countr_zero(w_[i]));
  return -1;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.size_ != b.size_) throw std::invalid_argument("BitVector size mismatch");
  uint64_t acc = 0;
  for (size_t i = 0; i < a.w_.size(); ++i) acc ^= a.w_[i] & b.w_[i];
  return std::popcount(acc) & 1;
}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitVector BitMatrix::column(int c) const {
  BitVector v(rows_);
  for (int r = 0; r < rows_; ++r) v.set(r, get(r, c));
  return v;
}

BitVector BitMatrix::apply(const BitVector& x) const {
  if (x.size() != cols_) throw std::invalid_argument("apply: dimension mismatch");
  BitVector y(rows_);
  for (int r = 0; r < rows_; ++r) y.set(r, dot(data_[r], x));
  return y;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("multiply: dimension mismatch");
  BitMatrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k)
      if (a.get(i, k)) out.row(i) ^= b.row(k);
  return out;
}

Subspace zero_space(int ambient) { return Subspace{ambient, {}}; }

Subspace full_space(int ambient) {
  Subspace s{ambient, {}};
  for (int i = 0; i < ambient; ++i) s.basis.push_back(BitVector::unit(ambient, i));
  return s;
}

BitVector reduce_by(const Subspace& s, BitVector v) {
  for (const BitVector& b : s.basis) {
    int p = b.lowest();
    if (p >= 0 && v.get(p)) v ^= b;
  }
  return v;
}

bool subspace_insert(Subspace& s, BitVector v) {
  if (v.size() != s.ambient_dim) throw std::invalid_argument("subspace_insert: ambient mismatch");
  v = reduce_by(s, v);
  if (!v.any()) return false;
  int p = v.lowest();
  // clear the new pivot from existing rows, then place by pivot order
  for (BitVector& b : s.basis)
    if (b.get(p)) b ^= v;
  size_t pos = 0;
  while (pos < s.basis.size() && s.basis[pos].lowest() < p) ++pos;
  s.basis.insert(s.basis.begin() + pos, v);
  return true;
}

Subspace span_of(int ambient, const std::vector<BitVector>& vecs) {
  Subspace s = zero_space(ambient);
  for (const BitVector& v : vecs) subspace_insert(s, v);
  return s;
}

bool contains(const Subspace& s, const BitVector& v) { return !reduce_by(s, v).any(); }

bool contains(const Subspace& big, const Subspace& small) {
  if (big.ambient_dim != small.ambient_dim) return false;
  for (const BitVector& v : small.basis)
    if (!contains(big, v)) return false;
  return true;
}

bool subspace_equal(const Subspace& a, const Subspace& b) {
  return a.ambient_dim == b.ambient_dim && a.basis == b.basis;
}

int rank(const BitMatrix& m) {
  Subspace s = zero_space(m.cols());
  for (int r = 0; r < m.rows(); ++r) subspace_insert(s, m.row(r));
  return s.rank();
}

Subspace image(const BitMatrix& m) {
  Subspace s = zero_space(m.rows());
  for (int c = 0; c < m.cols(); ++c) subspace_insert(s, m.column(c));
  return s;
}

namespace {

// Row echelon form by row xor; returns pivot column per reduced row (-1 for
// zero rows). Row ops preserve the null space.
std::vector<int> row_reduce(BitMatrix& m) {
  std::vector<int> pivot_of_row(m.rows(), -1);
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int sel = -1;
    for (int i = r; i < m.rows(); ++i)
      if (m.get(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(m.row(sel), m.row(r));
    for (int i = 0; i < m.rows(); ++i)
      if (i != r && m.get(i, c)) m.row(i) ^= m.row(r);
    pivot_of_row[r] = c;
    ++r;
  }
  return pivot_of_row;
}

}  // namespace

Subspace kernel(const BitMatrix& m) {
  BitMatrix red = m;
  std::vector<int> pivot_of_row = row_reduce(red);
  std::vector<int> pivot_row_of_col(m.cols(), -1);
  for (int r = 0; r < m.rows(); ++r)
    if (pivot_of_row[r] >= 0) pivot_row_of_col[pivot_of_row[r]] = r;
  Subspace out = zero_space(m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    if (pivot_row_of_col[c] >= 0) continue;  // pivot column
    BitVector v(m.cols());
    v.set(c, true);
    for (int pc = 0; pc < m.cols(); ++pc) {
      int pr = pivot_row_of_col[pc];
      if (pr >= 0 && red.get(pr, c)) v.set(pc, true);
    }
    subspace_insert(out, v);
  }
  return out;
}

Subspace preimage(const BitMatrix& m, const Subspace& s) {
  if (s.ambient_dim != m.rows()) throw std::invalid_argument("preimage: ambient mismatch");
  // m x in s  iff  (m x reduced mod s) = 0; reduction is linear, so reduce
  // columns and take the kernel.
  BitMatrix red(m.rows(), m.cols());
  for (int c = 0; c < m.cols(); ++c) {
    BitVector col = reduce_by(s, m.column(c));
    for (int r = 0; r < m.rows(); ++r) red.set(r, c, col.get(r));
  }
  return kernel(red);
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  if (a.ambient_dim != b.ambient_dim) throw std::invalid_argument("intersect: ambient mismatch");
  // Vectors sum_i alpha_i a_i lying in b: reduce each a_i mod b and solve for
  // alpha in the kernel.
  BitMatrix m(a.ambient_dim, a.rank());
  for (int i = 0; i < a.rank(); ++i) {
    BitVector col = reduce_by(b, a.basis[i]);
    for (int r = 0; r < a.ambient_dim; ++r) m.set(r, i, col.get(r));
  }
  Subspace alpha = kernel(m);
  Subspace out = zero_space(a.ambient_dim);
  for (const BitVector& al : alpha.basis) {
    BitVector v(a.ambient_dim);
    for (int i = 0; i < a.rank(); ++i)
      if (al.get(i)) v ^= a.basis[i];
    subspace_insert(out, v);
  }
  return out;
}

std::vector<BitVector> quotient_basis(const Subspace& big, const Subspace& small) {
  if (!contains(big, small)) throw std::invalid_argument("quotient_basis: small not inside big");
  Subspace acc = small;
  std::vector<BitVector> reps;
  for (const BitVector& v : big.basis)
    if (subspace_insert(acc, v)) reps.push_back(v);
  return reps;
}

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& y) {
  if (y.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
  // Gaussian elimination on the augmented matrix.
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) aug.set(r, c, m.get(r, c));
    aug.set(r, m.cols(), y.get(r));
  }
  std::vector<int> pivot_of_row(m.rows(), -1);
  int rr = 0;
  for (int c = 0; c < m.cols() && rr < m.rows(); ++c) {
    int sel = -1;
    for (int i = rr; i < m.rows(); ++i)
      if (aug.get(i, c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(aug.row(sel), aug.row(rr));
    for (int i = 0; i < m.rows(); ++i)
      if (i != rr && aug.get(i, c)) aug.row(i) ^= aug.row(rr);
    pivot_of_row[rr] = c;
    ++rr;
  }
  for (int r = rr; r < m.rows(); ++r)
    if (aug.get(r, m.cols())) return std::nullopt;  // inconsistent
  BitVector x(m.cols());
  for (int r = 0; r < rr; ++r)
    if (aug.get(r, m.cols())) x.set(pivot_of_row[r], true);
  return x;
}

}  // namespace wellkit
