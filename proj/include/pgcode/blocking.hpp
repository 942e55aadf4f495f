/// @file blocking.hpp
/// Blocking-set predicates, tangent/essential analysis, minimal reduction,
/// intersection exponents, counting identities, and dual-distance lower bounds.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pgcode/common.hpp"
#include "pgcode/geometry.hpp"

namespace pgcode {

/// A set of points of a fixed PG(n,q), kept sorted and duplicate-free.
struct PointSet {
  std::shared_ptr<const Space> space;
  std::vector<std::size_t> indices;
};

inline PointSet make_point_set(std::shared_ptr<const Space> space,
                               std::vector<std::size_t> indices) {
  std::sort(indices.begin(), indices.end());
  for (std::size_t i = 0; i < indices.size(); ++i) {
    if (indices[i] >= space->num_points())
      throw precondition_error("make_point_set: point index out of range");
    if (i > 0 && indices[i] == indices[i - 1])
      throw precondition_error("make_point_set: duplicate point index");
  }
  return PointSet{std::move(space), std::move(indices)};
}

namespace detail {

inline std::vector<std::uint8_t> membership_mask(const PointSet& S) {
  std::vector<std::uint8_t> in(S.space->num_points(), 0);
  for (std::size_t i : S.indices) in[i] = 1;
  return in;
}

/// |U ∩ S| for every (n-k)-space U, in canonical subspace order.
inline std::vector<std::size_t> intersection_sizes(const PointSet& S, int k) {
  const Space& sp = *S.space;
  if (k < 1 || k > sp.n() - 1)
    throw precondition_error("blocking: need 1 <= k <= n-1");
  auto in = membership_mask(S);
  const auto& subs = sp.subspaces(sp.n() - k);
  std::vector<std::size_t> sizes;
  sizes.reserve(subs.size());
  for (const auto& U : subs) {
    std::size_t c = 0;
    for (std::size_t j : sp.subspace_point_indices(U)) c += in[j];
    sizes.push_back(c);
  }
  return sizes;
}

}  // namespace detail

/// True iff every (n-k)-dimensional subspace meets S.
inline bool is_k_blocking_set(const PointSet& S, int k) {
  for (std::size_t c : detail::intersection_sizes(S, k))
    if (c == 0) return false;
  return true;
}

/// Points of S lying on at least one tangent (n-k)-space (a subspace meeting
/// S exactly once). Requires S to be a k-blocking set.
inline std::vector<std::size_t> essential_points(const PointSet& S, int k) {
  const Space& sp = *S.space;
  auto in = detail::membership_mask(S);
  std::vector<std::uint8_t> essential(sp.num_points(), 0);
  const auto& subs = sp.subspaces(sp.n() - k);
  for (const auto& U : subs) {
    std::size_t c = 0, hit = 0;
    for (std::size_t j : sp.subspace_point_indices(U)) {
      if (in[j]) {
        ++c;
        hit = j;
      }
    }
    if (c == 0) throw precondition_error("essential_points: not a k-blocking set");
    if (c == 1) essential[hit] = 1;
  }
  std::vector<std::size_t> out;
  for (std::size_t i : S.indices)
    if (essential[i]) out.push_back(i);
  return out;
}

struct ReduceResult {
  PointSet reduced;
  bool unique_regime = true;  ///< |S| < 2q^k, where every deletion order agrees
};

/// Delete the lexicographically smallest non-essential point until every
/// point is essential.
inline ReduceResult minimal_reduce(PointSet S, int k) {
  const Space& sp = *S.space;
  if (!is_k_blocking_set(S, k))
    throw precondition_error("minimal_reduce: not a k-blocking set");
  Int two_qk = 2 * ipow(Int(sp.q()), static_cast<unsigned>(k));
  bool unique_regime = Int(S.indices.size()) < two_qk;
  while (true) {
    auto ess = essential_points(S, k);
    if (ess.size() == S.indices.size()) break;
    std::vector<std::size_t> keep;
    bool dropped = false;
    for (std::size_t i : S.indices) {
      if (!dropped && !std::binary_search(ess.begin(), ess.end(), i)) {
        dropped = true;  // smallest non-essential index goes
        continue;
      }
      keep.push_back(i);
    }
    S.indices = std::move(keep);
  }
  return ReduceResult{std::move(S), unique_regime};
}

/// Largest e with every (n-k)-space meeting S in 1 (mod p^e) points;
/// 0 when even the mod-p congruence fails.
inline unsigned intersection_exponent(const PointSet& S, int k) {
  const std::uint32_t p = S.space->field().p();
  unsigned best = UINT32_MAX;
  bool blocked = true, any = false;
  for (std::size_t c : detail::intersection_sizes(S, k)) {
    if (c == 0) blocked = false;
    if (c == 1) continue;
    any = true;
    // p-adic valuation of c-1 (c=0 gives valuation 0 via c-1 = -1 ≡ p-1 ... use |c-1| over Z)
    std::size_t d = c == 0 ? 1 : c - 1;
    unsigned v = 0;
    while (c != 0 && d % p == 0) {
      d /= p;
      ++v;
    }
    best = std::min(best, v);
  }
  if (!blocked) throw precondition_error("intersection_exponent: not a k-blocking set");
  if (!any) throw falsified_error("intersection_exponent: no multi-point intersection exists");
  return best;
}

struct TauHistogram {
  std::uint64_t E = 1;                             ///< modulus p^e
  std::map<std::size_t, std::uint64_t> counts;     ///< intersection size -> number of (n-k)-spaces
  Int X = 0;                                       ///< number of (n-k)-spaces through a line
  bool eq9 = false, eq10 = false, eq11 = false;    ///< the three counting identities
};

/// Histogram of |U ∩ S| over all (n-k)-spaces U, plus exact verification of
/// the three double-counting identities tying it to |S| and X.
inline TauHistogram tau_histogram(const PointSet& S, int k, std::uint64_t E) {
  const Space& sp = *S.space;
  const unsigned n = static_cast<unsigned>(sp.n());
  const std::uint64_t q = sp.q();
  auto sizes = detail::intersection_sizes(S, k);
  const auto& subs = sp.subspaces(sp.n() - k);
  TauHistogram h;
  h.E = E;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] % E != 1 % E) {
      std::string msg = "tau_histogram: subspace #" + std::to_string(i) + " meets the set in " +
                        std::to_string(sizes[i]) + " points, not 1 mod " + std::to_string(E);
      throw precondition_error(msg);
    }
    ++h.counts[sizes[i]];
  }
  h.X = gaussian_coefficient(n - 1, n - static_cast<unsigned>(k) - 1, q);
  Int B = Int(S.indices.size());
  Int s0 = 0, s1 = 0, s2 = 0;
  for (const auto& [size, cnt] : h.counts) {
    s0 += Int(cnt);
    s1 += Int(size) * cnt;
    s2 += Int(size) * (Int(size) - 1) * cnt;
  }
  unsigned m = n - static_cast<unsigned>(k);
  Int qm = ipow(Int(q), m), qm1 = ipow(Int(q), m + 1);
  Int qn = ipow(Int(q), n), qn1 = ipow(Int(q), n + 1);
  h.eq9 = s0 * (qm1 - 1) * (qm - 1) == (qn1 - 1) * (qn - 1) * h.X;
  h.eq10 = s1 * (qm - 1) == B * (qm1 - 1) * h.X;
  h.eq11 = s2 == B * (B - 1) * h.X;
  return h;
}

enum class BoseBurtonClass { k_space, not_minimum, not_blocking };

inline const char* to_string(BoseBurtonClass c) {
  switch (c) {
    case BoseBurtonClass::k_space: return "k-space";
    case BoseBurtonClass::not_minimum: return "not-minimum";
    case BoseBurtonClass::not_blocking: return "not-blocking";
  }
  return "?";
}

/// Classify against the minimum-size bound: a k-blocking set has at least
/// θ_k points, with equality exactly for k-spaces.
inline BoseBurtonClass verify_bose_burton(const PointSet& S, int k) {
  const Space& sp = *S.space;
  if (!is_k_blocking_set(S, k)) return BoseBurtonClass::not_blocking;
  std::uint64_t th_k = theta(static_cast<unsigned>(k), sp.q());
  if (S.indices.size() > th_k) return BoseBurtonClass::not_minimum;
  if (S.indices.size() < th_k)
    throw falsified_error("verify_bose_burton: blocking set below the minimum size bound");
  Mat rows;
  for (std::size_t i : S.indices) rows.push_back(sp.point(i));
  if (rank_of(sp.field(), rows) != static_cast<std::size_t>(k) + 1)
    throw falsified_error("verify_bose_burton: minimum-size blocking set is not a k-space");
  return BoseBurtonClass::k_space;
}

struct DualLowerBound {
  Int value;
  std::string source;  ///< which bound applied
};

/// Best known lower bound on the minimum weight of the dual code, by the
/// characteristic of the field.
inline DualLowerBound dual_lower_bounds(unsigned n, std::uint32_t p, std::uint32_t h, unsigned k) {
  if (k < 1 || k >= n) throw precondition_error("dual_lower_bounds: need 1 <= k <= n-1");
  std::uint64_t q = upow(p, h);
  Int th = Int(theta(n - k, q));
  if (h == 1) return {2 * ipow(Int(p), n - k), "exact:prime-field"};
  if (p == 2) return {th + 1, "lower:floor"};
  if (p < 7) return {rat_ceil(Rat(4 * th + 2, 3)), "lower:four-thirds"};
  if (p == 7) return {rat_ceil(Rat(12 * th + 2, 7)), "lower:twelve-sevenths"};
  return {rat_ceil(Rat(12 * th + 6, 7)), "lower:twelve-sevenths"};
}

/// Exact rational lower bound (4m·θ_{n-k} + 2m)/(2m+1) parameterized by the
/// number m of symbol pairs forced on a putative low-weight dual word.
inline Rat lemma_bound(unsigned n, std::uint32_t p, std::uint32_t h, unsigned k, unsigned m) {
  if (k < 1 || k >= n) throw precondition_error("lemma_bound: need 1 <= k <= n-1");
  if (m < 1) throw precondition_error("lemma_bound: need m >= 1");
  std::uint64_t q = upow(p, h);
  Int th = Int(theta(n - k, q));
  return Rat(4 * m * th + 2 * m, 2 * m + 1);
}

}  // namespace pgcode
