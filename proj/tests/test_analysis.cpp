#include <catch2/catch_amalgamated.hpp>

#include "pgcode/analysis.hpp"

using pgcode::BoundReport;
using pgcode::GapReport;
using pgcode::Int;
using pgcode::precondition_error;

TEST_CASE("bound rows over prime fields pin the dual distance exactly") {
  struct Case {
    std::uint32_t p, h;
    unsigned n, k;
    std::size_t expect;
  };
  for (const Case& c : {Case{3, 1, 2, 1, 6}, Case{2, 1, 3, 1, 8}, Case{2, 1, 3, 2, 4}}) {
    BoundReport r = pgcode::table1_row(c.p, c.h, c.n, c.k);
    INFO("p=" << c.p << " n=" << c.n << " k=" << c.k);
    REQUIRE(r.lower == Int(c.expect));
    REQUIRE(r.upper == Int(c.expect));
    REQUIRE(r.lower_source == "exact:prime-field");
    REQUIRE(r.exact.has_value());
    REQUIRE(*r.exact == c.expect);
    REQUIRE(r.verdict == "consistent");
  }
}

TEST_CASE("bound row for the smallest even square order") {
  BoundReport r = pgcode::table1_row(2, 2, 2, 1);
  REQUIRE(r.lower == Int(6));
  REQUIRE(r.lower_source == "lower:floor");
  REQUIRE(r.upper == Int(6));  // q^{s-1}(q+2) with s = 1
  REQUIRE(r.upper_source == "upper:even-hyperoval-cap");
  REQUIRE(r.exact.has_value());
  REQUIRE(*r.exact == 6);
  REQUIRE(r.exact_method == "enumeration");
  REQUIRE(r.verdict == "consistent");
  REQUIRE(r.note.find("hyperplane") != std::string::npos);
}

TEST_CASE("bound rows beyond the enumeration budget stay honest") {
  // q = 8: floor bound 10 meets the hyperoval cap 10, but the dual walk is
  // 2^45 and the column search needs ~C(73,10) subsets, so no exact value.
  BoundReport r8 = pgcode::table1_row(2, 3, 2, 1);
  REQUIRE(r8.lower == Int(10));
  REQUIRE(r8.upper == Int(10));
  REQUIRE(!r8.exact.has_value());
  REQUIRE(r8.verdict == "not-computed");

  // q = 7 prime: exact value 14 known by formula, but the walk is 7^29.
  BoundReport r7 = pgcode::table1_row(7, 1, 2, 1);
  REQUIRE(r7.lower == Int(14));
  REQUIRE(r7.upper == Int(14));
  REQUIRE(!r7.exact.has_value());
  REQUIRE(r7.verdict == "not-computed");

  REQUIRE_THROWS_AS(pgcode::table1_row(3, 1, 2, 0), precondition_error);
  REQUIRE_THROWS_AS(pgcode::table1_row(3, 1, 2, 2), precondition_error);
}

TEST_CASE("weight gap scan of the ternary plane code") {
  GapReport g = pgcode::gap_verdict(2, 3, 1, 1);
  REQUIRE(g.computed);
  REQUIRE(g.hypotheses_held);  // prime order and 2k >= n
  REQUIRE(g.theta_k == Int(4));
  REQUIRE(g.interval1_hi == Int(6));
  REQUIRE(g.weights_in_interval1.empty());  // no weight-5 words
  // the wider interval ]4, 54/7[ does catch line differences and sums
  REQUIRE(g.weights_in_interval2 == std::vector<std::size_t>{6, 7});
  REQUIRE(g.witnesses.empty());
  REQUIRE(g.verdict == "consistent");
}

TEST_CASE("weight gap scan outside the prime-order hypotheses") {
  GapReport g = pgcode::gap_verdict(2, 2, 2, 1);
  REQUIRE(g.computed);
  REQUIRE(!g.hypotheses_held);  // h = 2
  REQUIRE(g.verdict == "consistent");
}

TEST_CASE("weight gap scan reports not-computed under a tiny budget") {
  GapReport g = pgcode::gap_verdict(2, 3, 1, 1, /*budget=*/10);
  REQUIRE(!g.computed);
  REQUIRE(g.verdict == "not-computed");
  REQUIRE(g.weights_in_interval1.empty());

  REQUIRE_THROWS_AS(pgcode::gap_verdict(2, 3, 1, 2), precondition_error);
}

TEST_CASE("admissible size windows for exponent-e blocking sets") {
  auto w1 = pgcode::theorem19_bounds(1, 2, 1, 4);
  REQUIRE(w1.lower == Int(5));  // ceil(4 + 4/3 - 1)
  REQUIRE(!w1.upper.has_value());  // p^e = 2 gives no upper window

  auto w2 = pgcode::theorem19_bounds(1, 3, 1, 9);
  REQUIRE(w2.lower == Int(11));  // ceil(9 + 9/4 - 1)
  REQUIRE(w2.upper.has_value());
  REQUIRE(*w2.upper == Int(15));  // floor(9 + 18/3)

  auto w3 = pgcode::theorem19_bounds(3, 2, 1, 8);
  REQUIRE(w3.lower == Int(8));  // ceil(8 + 8/9 - 1)
  REQUIRE(*w3.upper == Int(10));  // floor(8 + 16/8)

  // a Baer subplane sits inside its window: e = 1, p = 3, q = 9, size 13
  auto baer = pgcode::theorem19_bounds(1, 3, 1, 9);
  REQUIRE(baer.lower <= Int(13));
  REQUIRE(Int(13) <= *baer.upper);

  REQUIRE_THROWS_AS(pgcode::theorem19_bounds(0, 2, 1, 4), precondition_error);
}
