#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace wellkit {

// Exact linear algebra over the two-element field. Vectors and matrices are
// bit-packed; subspaces keep a reduced row echelon basis so that equal
// subspaces compare bitwise equal.

class BitVector {
public:
  BitVector() = default;
  explicit BitVector(int n) : size_(n), w_((n + 63) / 64, 0) {}

  int size() const { return size_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(int i, bool v) {
    uint64_t m = uint64_t(1) << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  BitVector& operator^=(const BitVector& o);
  bool any() const;
  int count() const;
  int lowest() const;  // index of lowest set bit, -1 if zero
  bool operator==(const BitVector&) const = default;

  static BitVector unit(int n, int i) {
    BitVector v(n);
    v.set(i, true);
    return v;
  }

  friend bool dot(const BitVector& a, const BitVector& b);

private:
  int size_ = 0;
  std::vector<uint64_t> w_;
};

bool dot(const BitVector& a, const BitVector& b);

class BitMatrix {
public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows, BitVector(cols)) {}
  static BitMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return data_[r].get(c); }
  void set(int r, int c, bool v) { data_[r].set(c, v); }
  const BitVector& row(int r) const { return data_[r]; }
  BitVector& row(int r) { return data_[r]; }
  BitVector column(int c) const;

  // y = M x, with x indexed by columns and y by rows.
  BitVector apply(const BitVector& x) const;

private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<BitVector> data_;
};

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

// Subspace of Z2^ambient_dim. basis rows are in reduced row echelon form with
// strictly increasing pivots, making the representation canonical.
struct Subspace {
  int ambient_dim = 0;
  std::vector<BitVector> basis;

  int rank() const { return (int)basis.size(); }
};

Subspace zero_space(int ambient);
Subspace full_space(int ambient);

// Reduces v against the echelon basis; result has no pivot bit of any basis row.
BitVector reduce_by(const Subspace& s, BitVector v);

// Inserts v if independent, keeping reduced echelon form. Returns true if the
// rank grew.
bool subspace_insert(Subspace& s, BitVector v);

Subspace span_of(int ambient, const std::vector<BitVector>& vecs);
bool contains(const Subspace& s, const BitVector& v);
bool contains(const Subspace& big, const Subspace& small);
bool subspace_equal(const Subspace& a, const Subspace& b);

int rank(const BitMatrix& m);
Subspace image(const BitMatrix& m);   // column space
Subspace kernel(const BitMatrix& m);  // null space

// {x : m x in s}; throws std::invalid_argument on ambient mismatch.
Subspace preimage(const BitMatrix& m, const Subspace& s);

Subspace intersect(const Subspace& a, const Subspace& b);

// Coset representatives extending small's basis to big's. Throws if small is
// not contained in big. Size equals rank(big) - rank(small).
std::vector<BitVector> quotient_basis(const Subspace& big, const Subspace& small);

// One solution of m x = y, if any.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& y);

}  // namespace wellkit
