/// @file spread.hpp
/// Field reduction PG(n,q) <-> PG((n+1)h-1,p), Desarguesian spreads, B(U),
/// linear blocking sets, and the companion-witness search.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "pgcode/blocking.hpp"
#include "pgcode/common.hpp"
#include "pgcode/geometry.hpp"

namespace pgcode {

/// The Desarguesian (h-1)-spread of PG((n+1)h-1, p): element i is the image
/// of point i of PG(n, p^h) under coordinate-block field reduction.
struct Spread {
  std::shared_ptr<const Space> big;     ///< PG((n+1)h-1, p)
  std::shared_ptr<const Space> small;   ///< PG(n, p^h)
  std::vector<Subspace> elements;       ///< indexed by small-space point index
  std::vector<std::size_t> element_of;  ///< big-space point index -> element index
};

namespace detail {

/// F_q-vector over F_q^{n+1} to F_p-vector over F_p^{(n+1)h}: coordinate i
/// expands into its h polynomial-basis digits at block [i*h, (i+1)*h).
inline Row expand_blocks(const Field& Fq, const Row& v) {
  Row out(v.size() * Fq.h(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto digits = Fq.coeffs(v[i]);
    for (std::size_t d = 0; d < digits.size(); ++d) out[i * Fq.h() + d] = digits[d];
  }
  return out;
}

}  // namespace detail

/// The image of a d-subspace of PG(n,q): the ((d+1)h-1)-subspace of the
/// reduced space spanned by the block expansions of t^j * (each basis row).
inline Subspace subspace_image(const Spread& D, const Subspace& s) {
  const Field& Fq = D.small->field();
  Mat rows;
  for (const auto& r : s.rows) {
    for (std::uint32_t j = 0; j < Fq.h(); ++j) {
      // the monomial t^j has code p^j; j = 0 must stay in range even for h = 1
      std::uint32_t tj = (j == 0) ? 1u : Fq.pow(Fq.p(), j);
      Row scaled(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) scaled[i] = Fq.mul(tj, r[i]);
      rows.push_back(detail::expand_blocks(Fq, scaled));
    }
  }
  return D.big->span_rows(std::move(rows));
}

/// Build the spread by reducing every point of PG(n, p^h). Validates the
/// partition property exhaustively.
inline Spread field_reduce(int n, std::uint32_t p, std::uint32_t h) {
  Spread D;
  D.small = Space::make(n, p, h);
  D.big = Space::make((n + 1) * static_cast<int>(h) - 1, p, 1);
  D.elements.reserve(D.small->num_points());
  D.element_of.assign(D.big->num_points(), SIZE_MAX);
  for (std::size_t i = 0; i < D.small->num_points(); ++i) {
    Subspace el = subspace_image(D, Subspace{Mat{D.small->point(i)}});
    if (el.pdim() != static_cast<int>(h) - 1)
      throw falsified_error("field_reduce: element has wrong dimension");
    for (std::size_t bp : D.big->subspace_point_indices(el)) {
      if (D.element_of[bp] != SIZE_MAX)
        throw falsified_error("field_reduce: spread elements are not disjoint");
      D.element_of[bp] = i;
    }
    D.elements.push_back(std::move(el));
  }
  for (std::size_t bp = 0; bp < D.element_of.size(); ++bp)
    if (D.element_of[bp] == SIZE_MAX)
      throw falsified_error("field_reduce: spread does not cover the space");
  return D;
}

/// B(U): the spread elements meeting U, as points of PG(n,q).
inline PointSet b_of_u(const Spread& D, const Subspace& U) {
  std::set<std::size_t> hit;
  for (std::size_t bp : D.big->subspace_point_indices(U)) hit.insert(D.element_of[bp]);
  return make_point_set(D.small, std::vector<std::size_t>(hit.begin(), hit.end()));
}

namespace detail {

/// Number of points of U lying in spread element `el` (0 when disjoint).
inline std::size_t element_intersection_size(const Spread& D, const Subspace& U,
                                             std::size_t el) {
  std::size_t c = 0;
  for (std::size_t bp : D.big->subspace_point_indices(D.elements[el]))
    if (D.big->subspace_contains(U, bp)) ++c;
  return c;
}

}  // namespace detail

struct LinearBlockingSetWitness {
  Subspace U;                        ///< hk-dimensional subspace of the reduced space
  PointSet B;                        ///< B(U) in PG(n,q)
  unsigned k = 0;                    ///< blocking index, inferred from dim U
  std::uint64_t one_point_census = 0;  ///< elements meeting U in exactly one point
  bool size_one_mod_q = false;       ///< observational: |B| ≡ 1 (mod q)
  bool verified = false;
};

/// Verify that an hk-dimensional subspace U yields a k-blocking set B(U),
/// that |B| ≡ 1 (mod p), and that the one-point census meets its floor
/// p^N - p^{N-1} + 1.
inline LinearBlockingSetWitness linear_blocking_set(const Spread& D, const Subspace& U) {
  const std::uint32_t p = D.big->field().p();
  const std::uint32_t h = D.small->field().h();
  const unsigned N = static_cast<unsigned>(U.pdim());
  if (N == 0 || N % h != 0)
    throw precondition_error("linear_blocking_set: dim U must be a positive multiple of h");
  const unsigned k = N / h;
  if (k < 1 || static_cast<int>(k) > D.small->n() - 1)
    throw precondition_error("linear_blocking_set: inferred k outside 1..n-1");

  LinearBlockingSetWitness w;
  w.U = U;
  w.B = b_of_u(D, U);
  w.k = k;
  if (w.B.indices.size() % p != 1 % p)
    throw falsified_error("linear_blocking_set: |B(U)| is not 1 mod p");
  w.size_one_mod_q = w.B.indices.size() % D.small->q() == 1 % D.small->q();
  if (!is_k_blocking_set(w.B, static_cast<int>(k)))
    throw falsified_error("linear_blocking_set: B(U) fails the k-blocking scan");
  for (std::size_t i : w.B.indices)
    if (detail::element_intersection_size(D, U, i) == 1) ++w.one_point_census;
  Int floor_census = ipow(Int(p), N) - ipow(Int(p), N - 1) + 1;
  if (Int(w.one_point_census) < floor_census)
    throw falsified_error("linear_blocking_set: one-point census below its floor");
  w.verified = true;
  return w;
}

inline bool is_trivial_witness(const Spread& D, const LinearBlockingSetWitness& w) {
  if (w.B.indices.size() != theta(w.k, D.small->q())) return false;
  Mat rows;
  for (std::size_t i : w.B.indices) rows.push_back(D.small->point(i));
  return rank_of(D.small->field(), rows) == w.k + 1;
}

/// Build a second linear k-blocking set B' = B(U') with |B ∩ B'| ≡ 2 (mod p),
/// following the constructive recipe: fix a tangent element R1, a hyperplane
/// U' of U avoiding R1, an element R2 meeting that hyperplane from outside,
/// and swing a line through U' ∩ R2 until the intersection parity works out.
inline LinearBlockingSetWitness companion_blocking_set(const Spread& D,
                                                       const LinearBlockingSetWitness& w) {
  const std::uint32_t p = D.big->field().p();
  if (!w.verified) throw precondition_error("companion_blocking_set: unverified witness");
  if (is_trivial_witness(D, w))
    throw precondition_error("companion_blocking_set: B(U) is a k-space");

  // R1: first spread element meeting U in exactly one point
  std::size_t r1 = SIZE_MAX;
  for (std::size_t i : w.B.indices) {
    if (detail::element_intersection_size(D, w.U, i) == 1) {
      r1 = i;
      break;
    }
  }
  if (r1 == SIZE_MAX)
    throw falsified_error("companion_blocking_set: no tangent spread element");

  const unsigned N = static_cast<unsigned>(w.U.pdim());
  auto in_B = detail::membership_mask(w.B);
  for (const Subspace& Um1 : D.big->subspaces_within(w.U, static_cast<int>(N) - 1)) {
    if (D.big->meets(Um1, D.elements[r1])) continue;  // hyperplane must avoid R1
    PointSet Bm1 = b_of_u(D, Um1);
    for (std::size_t r2 : Bm1.indices) {
      // R2 meets the hyperplane but must not lie inside it
      std::size_t inside = detail::element_intersection_size(D, Um1, r2);
      if (inside == theta(D.small->field().h() - 1, p)) continue;
      auto meet_pts = D.big->meet(Um1, D.elements[r2]);
      if (!meet_pts) continue;
      for (std::size_t y : D.big->subspace_point_indices(*meet_pts)) {
        for (std::size_t z = 0; z < D.big->num_points(); ++z) {
          if (D.big->subspace_contains(Um1, z)) continue;
          Subspace m = D.big->span_rows(Mat{D.big->point(y), D.big->point(z)});
          Subspace Uprime = D.big->span(Um1, m);
          if (Uprime.pdim() != static_cast<int>(N)) continue;
          if (Uprime == w.U) continue;
          LinearBlockingSetWitness cand = linear_blocking_set(D, Uprime);
          std::size_t common = 0;
          for (std::size_t i : cand.B.indices) common += in_B[i];
          if (common % p == 2 % p) return cand;
        }
      }
    }
  }
  throw falsified_error("companion_blocking_set: exhaustive search found no companion");
}

/// Reconstruct the unique B(U_N) through a fixed (N-1)-subspace and two
/// spread elements met by U_N but not by the subspace. Returns the common
/// B set of every qualifying extension, std::nullopt when none exists.
inline std::optional<PointSet> uniqueness_check(const Spread& D, const Subspace& Um1,
                                                std::size_t r1, std::size_t r2) {
  if (r1 == r2) throw precondition_error("uniqueness_check: elements must differ");
  if (D.big->meets(Um1, D.elements[r1]) || D.big->meets(Um1, D.elements[r2]))
    throw precondition_error("uniqueness_check: elements must avoid the base subspace");
  std::optional<PointSet> found;
  for (std::size_t z = 0; z < D.big->num_points(); ++z) {
    if (D.big->subspace_contains(Um1, z)) continue;
    Subspace UN = D.big->span_with_point(Um1, D.big->point(z));
    if (!D.big->meets(UN, D.elements[r1]) || !D.big->meets(UN, D.elements[r2])) continue;
    PointSet B = b_of_u(D, UN);
    if (!found) {
      found = std::move(B);
    } else if (found->indices != B.indices) {
      throw falsified_error("uniqueness_check: two extensions disagree on B");
    }
  }
  return found;
}

}  // namespace pgcode
