#include "forge/gf2.hpp"

#include <algorithm>
#include <bit>

namespace forge {

int BitVec::popcount() const {
  int c = 0;
  for (auto w : w_) c += std::popcount(w);
  return c;
}

int BitVec::lowest() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return static_cast<int>(k) * 64 + std::countr_zero(w_[k]);
  return -1;
}

std::vector<int> BitVec::ones() const {
  std::vector<int> out;
  for (int i = 0; i < n_; ++i)
    if (get(i)) out.push_back(i);
  return out;
}

int gf2_rank(BitMatrix m) {
  int rank = 0;
  std::vector<int> pivot_row;  // rows already used as pivots
  std::vector<int> pivot_col;
  for (int r = 0; r < m.rows(); ++r) {
    BitVec& row = m.row(r);
    bool reduced = true;
    while (reduced) {
      reduced = false;
      int lead = row.lowest();
      if (lead < 0) break;
      for (std::size_t k = 0; k < pivot_col.size(); ++k) {
        if (pivot_col[k] == lead) {
          row ^= m.row(pivot_row[k]);
          reduced = true;
          break;
        }
      }
    }
    int lead = row.lowest();
    if (lead >= 0) {
      pivot_row.push_back(r);
      pivot_col.push_back(lead);
      ++rank;
    }
  }
  return rank;
}

std::vector<std::vector<int>> gf2_left_null_space(const BitMatrix& m) {
  int n = m.rows();
  // Work rows carry a tracking vector over original row indices.
  std::vector<BitVec> work(n), track(n);
  for (int r = 0; r < n; ++r) {
    work[r] = m.row(r);
    track[r] = BitVec(n);
    track[r].set(r, true);
  }
  std::vector<int> pivot_of_col(m.cols(), -1);
  std::vector<BitVec> basis;
  for (int r = 0; r < n; ++r) {
    for (;;) {
      int lead = work[r].lowest();
      if (lead < 0) break;
      int p = pivot_of_col[lead];
      if (p < 0) {
        pivot_of_col[lead] = r;
        break;
      }
      work[r] ^= work[p];
      track[r] ^= track[p];
    }
    if (!work[r].any()) basis.push_back(track[r]);
  }
  // Greedy pairwise weight reduction to a fixpoint; strict decrease
  // guarantees termination and determinism.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        BitVec cand = basis[i] ^ basis[j];
        if (cand.any() && cand.popcount() < basis[i].popcount()) {
          basis[i] = cand;
          changed = true;
        }
      }
    }
  }
  std::vector<std::vector<int>> out;
  out.reserve(basis.size());
  for (const auto& b : basis) out.push_back(b.ones());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<BitVec> gf2_right_null_space(const BitMatrix& m) {
  int rows = m.rows(), cols = m.cols();
  std::vector<BitVec> r;
  r.reserve(rows);
  for (int i = 0; i < rows; ++i) r.push_back(m.row(i));
  // Forward elimination to RREF with lowest-index pivots.
  std::vector<int> pivot_col_of;  // per pivot row
  int pr = 0;
  for (int c = 0; c < cols && pr < rows; ++c) {
    int sel = -1;
    for (int i = pr; i < rows; ++i)
      if (r[i].get(c)) {
        sel = i;
        break;
      }
    if (sel < 0) continue;
    std::swap(r[pr], r[sel]);
    for (int i = 0; i < rows; ++i)
      if (i != pr && r[i].get(c)) r[i] ^= r[pr];
    pivot_col_of.push_back(c);
    ++pr;
  }
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivot_col_of) is_pivot[c] = true;
  std::vector<BitVec> basis;
  for (int c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    BitVec v(cols);
    v.set(c, true);
    for (int p = 0; p < pr; ++p)
      if (r[p].get(c)) v.set(pivot_col_of[p], true);
    basis.push_back(v);
  }
  return basis;
}

}  // namespace forge
