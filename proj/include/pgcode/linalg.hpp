/// @file linalg.hpp
/// Dense row-echelon linear algebra over a Field (rows are code vectors).
#pragma once

#include <cstdint>
#include <vector>

#include "pgcode/common.hpp"
#include "pgcode/gf.hpp"

namespace pgcode {

using Row = std::vector<std::uint32_t>;
using Mat = std::vector<Row>;

/// In-place reduced row echelon form. Returns the rank; zero rows are
/// removed so the result has exactly rank rows. Pivot columns out-param
/// optional.
inline std::size_t rref(const Field& F, Mat& m, std::vector<std::size_t>* pivots = nullptr) {
  if (pivots) pivots->clear();
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t sel = m.size();
    for (std::size_t i = r; i < m.size(); ++i)
      if (m[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == m.size()) continue;
    std::swap(m[r], m[sel]);
    std::uint32_t s = F.inv(m[r][c]);
    if (s != 1)
      for (std::size_t j = c; j < cols; ++j) m[r][j] = F.mul(m[r][j], s);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::uint32_t f = m[i][c];
      for (std::size_t j = c; j < cols; ++j)
        m[i][j] = F.sub(m[i][j], F.mul(f, m[r][j]));
    }
    if (pivots) pivots->push_back(c);
    ++r;
  }
  m.resize(r);
  return r;
}

inline std::size_t rank_of(const Field& F, Mat m) { return rref(F, m); }

/// Reduce v against an RREF basis in place; returns true iff v reduced to 0
/// (i.e. v was in the row space).
inline bool reduce_against(const Field& F, const Mat& basis,
                           const std::vector<std::size_t>& pivots, Row& v) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    std::uint32_t f = v[pivots[i]];
    if (f == 0) continue;
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = F.sub(v[j], F.mul(f, basis[i][j]));
  }
  for (std::uint32_t x : v)
    if (x != 0) return false;
  return true;
}

/// Inverse of a square full-rank matrix, by row-reducing [m | I].
inline Mat inverse(const Field& F, const Mat& m) {
  const std::size_t n = m.size();
  Mat aug(n, Row(2 * n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (m[i].size() != n) throw precondition_error("inverse: matrix not square");
    std::copy(m[i].begin(), m[i].end(), aug[i].begin());
    aug[i][n + i] = 1;
  }
  if (rref(F, aug) != n) throw precondition_error("inverse: matrix is singular");
  Mat inv(n, Row(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    std::copy(aug[i].begin() + static_cast<std::ptrdiff_t>(n), aug[i].end(), inv[i].begin());
  return inv;
}

/// Canonical (RREF) basis of the right null space of an RREF matrix.
inline Mat nullspace(const Field& F, const Mat& basis, const std::vector<std::size_t>& pivots,
                     std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t fcol = 0; fcol < cols; ++fcol) {
    if (is_pivot[fcol]) continue;
    Row v(cols, 0);
    v[fcol] = 1;
    for (std::size_t i = 0; i < basis.size(); ++i) v[pivots[i]] = F.neg(basis[i][fcol]);
    out.push_back(std::move(v));
  }
  rref(F, out);
  return out;
}

}  // namespace pgcode
