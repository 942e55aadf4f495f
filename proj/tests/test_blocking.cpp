#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "pgcode/blocking.hpp"
#include "pgcode/codes.hpp"
#include "pgcode/constructions.hpp"

#include "oracles.hpp"

using pgcode::falsified_error;
using pgcode::Int;
using pgcode::LinearCode;
using pgcode::make_point_set;
using pgcode::PointSet;
using pgcode::precondition_error;
using pgcode::Rat;
using pgcode::Row;
using pgcode::Space;
using pgcode::Subspace;

namespace {

PointSet line_set(std::shared_ptr<const Space> sp, std::size_t which = 0) {
  return make_point_set(sp, sp->subspace_point_indices(sp->subspaces(1)[which]));
}

}  // namespace

TEST_CASE("a line is a minimal 1-blocking set of its plane") {
  auto sp = Space::make(2, 3, 1);
  PointSet L = line_set(sp);
  REQUIRE(pgcode::is_k_blocking_set(L, 1));
  REQUIRE(pgcode::essential_points(L, 1) == L.indices);
  auto rr = pgcode::minimal_reduce(L, 1);
  REQUIRE(rr.reduced.indices == L.indices);
  REQUIRE(rr.unique_regime);
  REQUIRE(pgcode::verify_bose_burton(L, 1) == pgcode::BoseBurtonClass::k_space);
}

TEST_CASE("three points never block a plane of order three") {
  auto sp = Space::make(2, 3, 1);
  PointSet S = make_point_set(sp, {0, 1, 2});
  REQUIRE_FALSE(pgcode::is_k_blocking_set(S, 1));
  REQUIRE(pgcode::verify_bose_burton(S, 1) == pgcode::BoseBurtonClass::not_blocking);
  REQUIRE_THROWS_AS(pgcode::essential_points(S, 1), precondition_error);
  REQUIRE_THROWS_AS(pgcode::intersection_exponent(S, 1), precondition_error);
}

TEST_CASE("augmented line reduces back to the line and is a fixpoint") {
  auto sp = Space::make(2, 5, 1);
  PointSet L = line_set(sp);
  std::vector<std::size_t> aug = L.indices;
  for (std::size_t i = 0; i < sp->num_points() && aug.size() < L.indices.size() + 2; ++i)
    if (!std::binary_search(L.indices.begin(), L.indices.end(), i)) aug.push_back(i);
  PointSet S = make_point_set(sp, aug);

  auto rr = pgcode::minimal_reduce(S, 1);
  REQUIRE(rr.reduced.indices == L.indices);
  REQUIRE(rr.unique_regime);  // |S| = 8 < 2q = 10
  auto again = pgcode::minimal_reduce(rr.reduced, 1);
  REQUIRE(again.reduced.indices == rr.reduced.indices);
  REQUIRE(pgcode::verify_bose_burton(S, 1) == pgcode::BoseBurtonClass::not_minimum);
}

TEST_CASE("small two-valued codewords have blocking supports meeting lines 1 mod p") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);
  Row msg(code.dim(), 0);
  std::size_t found = 0;
  while (true) {
    Row w = code.encode(msg);
    std::size_t wt = 0;
    std::set<std::uint32_t> values;
    for (auto x : w)
      if (x) {
        ++wt;
        values.insert(x);
      }
    if (wt > 0 && wt < 6 && values.size() == 1) {
      std::vector<std::size_t> support;
      for (std::size_t i = 0; i < w.size(); ++i)
        if (w[i]) support.push_back(i);
      PointSet S = make_point_set(sp, support);
      REQUIRE(pgcode::is_k_blocking_set(S, 1));
      // every line meets the support in 1 mod 3 points, or the histogram throws
      auto th = pgcode::tau_histogram(S, 1, 3);
      REQUIRE(th.eq9);
      REQUIRE(th.eq10);
      REQUIRE(th.eq11);
      ++found;
    }
    std::size_t i = 0;
    while (i < msg.size() && ++msg[i] == 3) msg[i++] = 0;
    if (i == msg.size()) break;
  }
  REQUIRE(found == 26);  // the scalar multiples of the 13 lines
}

TEST_CASE("intersection exponents") {
  auto s24 = Space::make(2, 2, 2);
  // a line of PG(2,4): other lines meet it in 1 or 5 points, so sizes-1 gives 4
  REQUIRE(pgcode::intersection_exponent(line_set(s24), 1) == 2);
  // a Baer subplane meets lines in 1 or 3 points: exponent 1
  auto tb = pgcode::trace_blocking_set(2, 2, 1, 2, 1);
  REQUIRE(pgcode::intersection_exponent(tb.B, 1) == 1);
  // the full plane of order 2: every line has 3 = 1 + 2 points
  auto s22 = Space::make(2, 2, 1);
  std::vector<std::size_t> all(s22->num_points());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  REQUIRE(pgcode::intersection_exponent(make_point_set(s22, all), 1) == 1);
}

TEST_CASE("tau histogram for a line of PG(3,3)") {
  auto sp = Space::make(3, 3, 1);
  PointSet L = line_set(sp);
  auto th = pgcode::tau_histogram(L, 1, 3);
  REQUIRE(th.X == 4);
  REQUIRE(th.counts.size() == 2);
  REQUIRE(th.counts.at(1) == 36);
  REQUIRE(th.counts.at(4) == 4);
  REQUIRE(th.eq9);
  REQUIRE(th.eq10);
  REQUIRE(th.eq11);

  // recompute the three identities from the histogram with independent
  // arithmetic; the sections are (n-k)-spaces, so m = 2 here
  const Int q = 3, B = 4, X = th.X;
  Int lhs9 = 0, lhs10 = 0, lhs11 = 0;
  for (const auto& [s, cnt] : th.counts) {
    lhs9 += Int(cnt) * (pgcode::ipow(q, 3) - 1) * (pgcode::ipow(q, 2) - 1);
    lhs10 += Int(s) * cnt * (pgcode::ipow(q, 2) - 1);
    lhs11 += Int(s) * (Int(s) - 1) * cnt;
  }
  REQUIRE(lhs9 == (pgcode::ipow(q, 4) - 1) * (pgcode::ipow(q, 3) - 1) * X);
  REQUIRE(lhs10 == B * (pgcode::ipow(q, 3) - 1) * X);
  REQUIRE(lhs11 == B * (B - 1) * X);
}

TEST_CASE("tau histogram rejects intersections that are not 1 mod E") {
  auto sp = Space::make(2, 3, 1);
  // four points, three of them collinear: some line meets in 3, not 1 mod 3
  PointSet S = make_point_set(sp, {0, 1, 2, 3});
  REQUIRE_THROWS_AS(pgcode::tau_histogram(S, 1, 3), precondition_error);
}

TEST_CASE("dual distance lower bounds by characteristic class") {
  using pgcode::dual_lower_bounds;
  auto b = dual_lower_bounds(2, 3, 1, 1);
  REQUIRE(b.value == 6);
  REQUIRE(b.source == "exact:prime-field");

  b = dual_lower_bounds(2, 2, 2, 1);  // q = 4
  REQUIRE(b.value == 6);
  REQUIRE(b.source == "lower:floor");

  b = dual_lower_bounds(2, 5, 2, 1);  // q = 25: ceil((4*26+2)/3) = 36
  REQUIRE(b.value == 36);
  REQUIRE(b.source == "lower:four-thirds");

  b = dual_lower_bounds(2, 7, 2, 1);  // q = 49: ceil((12*50+2)/7) = 86
  REQUIRE(b.value == 86);
  REQUIRE(b.source == "lower:twelve-sevenths");

  b = dual_lower_bounds(2, 11, 2, 1);  // q = 121: ceil((12*122+6)/7) = 210
  REQUIRE(b.value == 210);
  REQUIRE(b.source == "lower:twelve-sevenths");

  b = dual_lower_bounds(3, 3, 2, 1);  // q = 9, theta_2 = 91: ceil(366/3) = 122
  REQUIRE(b.value == 122);
  REQUIRE(b.source == "lower:four-thirds");

  b = dual_lower_bounds(3, 2, 1, 2);  // prime field again: 2*2^1
  REQUIRE(b.value == 4);
}

TEST_CASE("the meeting-size bound grows with the number of directions") {
  const Rat m1 = pgcode::lemma_bound(2, 5, 2, 1, 1);
  const Rat m2 = pgcode::lemma_bound(2, 5, 2, 1, 2);
  REQUIRE(m1 == Rat(4 * 26 + 2, 3));
  REQUIRE(m2 == Rat(8 * 26 + 4, 5));
  REQUIRE(m2 > m1);
}

TEST_CASE("point set construction validates its input") {
  auto sp = Space::make(2, 3, 1);
  REQUIRE_THROWS_AS(make_point_set(sp, {0, 0}), precondition_error);
  REQUIRE_THROWS_AS(make_point_set(sp, {999}), precondition_error);
  PointSet S = make_point_set(sp, {5, 1, 3});
  REQUIRE(std::is_sorted(S.indices.begin(), S.indices.end()));
}
