#pragma once

#include <cstdint>
#include <vector>

namespace forge {

// Dense GF(2) row vector.
class BitVec {
public:
  BitVec() = default;
  explicit BitVec(int n) : n_(n), w_((n + 63) / 64, 0) {}

  int size() const { return n_; }
  bool get(int i) const { return (w_[i >> 6] >> (i & 63)) & 1; }
  void set(int i, bool v) {
    std::uint64_t m = std::uint64_t{1} << (i & 63);
    if (v)
      w_[i >> 6] |= m;
    else
      w_[i >> 6] &= ~m;
  }
  void flip(int i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  BitVec& operator^=(const BitVec& o) {
    for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    return *this;
  }
  friend BitVec operator^(BitVec a, const BitVec& b) {
    a ^= b;
    return a;
  }
  bool any() const {
    for (auto w : w_)
      if (w) return true;
    return false;
  }
  int popcount() const;
  // Lowest set index, or -1.
  int lowest() const;
  std::vector<int> ones() const;
  friend bool operator==(const BitVec& a, const BitVec& b) {
    return a.n_ == b.n_ && a.w_ == b.w_;
  }

private:
  int n_ = 0;
  std::vector<std::uint64_t> w_;
};

class BitMatrix {
public:
  BitMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), r_(rows, BitVec(cols)) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool get(int r, int c) const { return r_[r].get(c); }
  void set(int r, int c, bool v) { r_[r].set(c, v); }
  const BitVec& row(int r) const { return r_[r]; }
  BitVec& row(int r) { return r_[r]; }

private:
  int rows_, cols_;
  std::vector<BitVec> r_;
};

// Rank by Gaussian elimination, lowest-index pivots first.
int gf2_rank(BitMatrix m);

// Basis of the left null space: all u with u^T M = 0, returned as sorted
// row-index subsets. Deterministic: rows processed in order with lowest-index
// pivoting, then a greedy pairwise-XOR weight reduction to a fixpoint (the
// reduced basis favors short constraints, e.g. lattice faces over sums of
// faces), then sorted by (size, members).
std::vector<std::vector<int>> gf2_left_null_space(const BitMatrix& m);

// Basis of the right null space: all x with M x = 0, as BitVecs over columns.
// Deterministic RREF parametrization by free columns in ascending order.
std::vector<BitVec> gf2_right_null_space(const BitMatrix& m);

}  // namespace forge
