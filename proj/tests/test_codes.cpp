#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "pgcode/codes.hpp"

#include "oracles.hpp"

using pgcode::canonical_rep;
using pgcode::Field;
using pgcode::LinearCode;
using pgcode::Mat;
using pgcode::precondition_error;
using pgcode::Row;
using pgcode::Space;

namespace {

oracle::Matrix incidence_rows(const Space& sp, int k) {
  auto inc = sp.incidence_matrix(k);
  oracle::Matrix rows(inc.rows, oracle::Vec(inc.cols, 0));
  for (std::size_t i = 0; i < inc.rows; ++i)
    for (std::size_t j = 0; j < inc.cols; ++j) rows[i][j] = inc.a[i][j];
  return rows;
}

}  // namespace

TEST_CASE("incidence code dimensions match naive rank and known values") {
  struct Case {
    int n;
    std::uint32_t p, h;
    int k;
    std::size_t dim;
  };
  const std::vector<Case> cases = {
      {2, 2, 1, 1, 4},  {2, 3, 1, 1, 7},  {2, 2, 2, 1, 10},
      {3, 2, 1, 2, 5},  {3, 2, 1, 1, 11}, {3, 3, 1, 2, 11},
  };
  for (const auto& c : cases) {
    auto sp = Space::make(c.n, c.p, c.h);
    LinearCode code = LinearCode::from_incidence(*sp, c.k);
    REQUIRE(code.dim() == c.dim);
    REQUIRE(code.dim() == oracle::rank_mod_p(incidence_rows(*sp, c.k), c.p));
    REQUIRE(code.length() == sp->num_points());
    REQUIRE(code.dim() + code.dual().dim() == code.length());
  }
}

TEST_CASE("membership agrees with explicit span enumeration") {
  auto sp = Space::make(2, 2, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);  // [7,4] over F_2
  std::set<Row> words;
  Row msg(code.dim(), 0);
  while (true) {
    words.insert(code.encode(msg));
    std::size_t i = 0;
    while (i < msg.size() && ++msg[i] == 2) msg[i++] = 0;
    if (i == msg.size()) break;
  }
  REQUIRE(words.size() == 16);
  Row v(7, 0);
  std::size_t members = 0;
  while (true) {
    if (code.contains(v)) {
      ++members;
      REQUIRE(words.count(v) == 1);
    } else {
      REQUIRE(words.count(v) == 0);
    }
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == 2) v[i++] = 0;
    if (i == v.size()) break;
  }
  REQUIRE(members == 16);
}

TEST_CASE("dual is the exact orthogonal complement") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);
  LinearCode dual = code.dual();
  REQUIRE(dual.dim() == 6);
  for (const Row& g : code.basis())
    for (const Row& d : dual.basis()) REQUIRE(pgcode::scalar_product(code.field(), g, d) == 0);
  // double dual has the same row space
  LinearCode dd = dual.dual();
  REQUIRE(dd.dim() == code.dim());
  for (const Row& g : code.basis()) REQUIRE(dd.contains(g));
  for (const Row& g : dd.basis()) REQUIRE(code.contains(g));
}

TEST_CASE("exact weight enumeration matches direct message enumeration") {
  SECTION("binary Fano code, packed walk") {
    auto sp = Space::make(2, 2, 1);
    LinearCode code = LinearCode::from_incidence(*sp, 1);
    auto we = code.enumerate_weights();
    REQUIRE(we.exact);
    auto expect = oracle::weight_histogram(code.basis(), 2);
    expect.erase(0);
    REQUIRE(we.distribution == expect);
    REQUIRE(we.min_weight == 3);
    REQUIRE(we.distribution.at(3) == 7);
    REQUIRE(we.distribution.at(7) == 1);
    REQUIRE(we.witnesses.size() == 7);
    REQUIRE(we.words_visited == 16);
  }
  SECTION("ternary planar code, generic walk") {
    auto sp = Space::make(2, 3, 1);
    LinearCode code = LinearCode::from_incidence(*sp, 1);
    auto we = code.enumerate_weights();
    REQUIRE(we.exact);
    auto expect = oracle::weight_histogram(code.basis(), 3);
    expect.erase(0);
    REQUIRE(we.distribution == expect);
    REQUIRE(we.min_weight == 4);
    REQUIRE(we.distribution.at(4) == 26);
    std::uint64_t total = 1;
    for (const auto& [w, c] : we.distribution) total += c;
    REQUIRE(total == 2187);
  }
  SECTION("a dual code, where the walk starts from nullspace generators") {
    auto sp = Space::make(3, 2, 1);
    LinearCode dual = LinearCode::from_incidence(*sp, 2).dual();
    auto we = dual.enumerate_weights();
    auto expect = oracle::weight_histogram(dual.basis(), 2);
    expect.erase(0);
    REQUIRE(we.distribution == expect);
    REQUIRE(we.min_weight == 4);
  }
}

TEST_CASE("thread count does not change exact results") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);
  auto a = code.enumerate_weights(pgcode::kDefaultWeightBudget, 1);
  auto b = code.enumerate_weights(pgcode::kDefaultWeightBudget, 3);
  auto c = code.enumerate_weights(pgcode::kDefaultWeightBudget, 7);
  REQUIRE(a.distribution == b.distribution);
  REQUIRE(a.distribution == c.distribution);
  REQUIRE(a.witnesses == b.witnesses);
  REQUIRE(a.witnesses == c.witnesses);
  REQUIRE(a.min_weight == c.min_weight);
}

TEST_CASE("over-budget enumeration degrades to deterministic sampling") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);  // 3^7 = 2187 words
  auto s1 = code.enumerate_weights(500, 1, 42);
  REQUIRE_FALSE(s1.exact);
  REQUIRE(s1.words_visited == 500);
  REQUIRE(s1.min_weight >= 4);  // sampling can only overestimate the minimum
  for (const Row& w : s1.witnesses) {
    std::size_t wt = 0;
    for (auto x : w) wt += x != 0;
    REQUIRE(wt == s1.min_weight);
    REQUIRE(code.contains(w));
  }
  auto s2 = code.enumerate_weights(500, 1, 42);
  REQUIRE(s1.distribution == s2.distribution);
  REQUIRE(s1.witnesses == s2.witnesses);
  // exact distribution dominates any sample
  auto full = code.enumerate_weights();
  for (const auto& [w, cnt] : s1.distribution) {
    REQUIRE(full.distribution.count(w) == 1);
    REQUIRE(cnt <= full.distribution.at(w));
  }
}

TEST_CASE("encode is linear and matches the basis") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);
  Row e0(code.dim(), 0);
  e0[0] = 1;
  REQUIRE(code.encode(e0) == code.basis()[0]);
  Row m1(code.dim(), 0), m2(code.dim(), 0);
  for (std::size_t i = 0; i < code.dim(); ++i) {
    m1[i] = static_cast<std::uint32_t>((i * 2 + 1) % 3);
    m2[i] = static_cast<std::uint32_t>((i + 2) % 3);
  }
  Row sum(code.dim(), 0);
  for (std::size_t i = 0; i < code.dim(); ++i) sum[i] = (m1[i] + m2[i]) % 3;
  Row w1 = code.encode(m1), w2 = code.encode(m2), ws = code.encode(sum);
  for (std::size_t j = 0; j < code.length(); ++j) REQUIRE(ws[j] == (w1[j] + w2[j]) % 3);
}

TEST_CASE("dual minimum weight by ascending column search") {
  auto sp = Space::make(2, 3, 1);
  LinearCode code = LinearCode::from_incidence(*sp, 1);
  auto hit = pgcode::dual_min_weight_by_column_search(code, 6);
  REQUIRE(hit.found);
  REQUIRE(hit.weight == 6);
  LinearCode dual = code.dual();
  REQUIRE(dual.contains(hit.witness));
  REQUIRE(dual.enumerate_weights().min_weight == 6);
  auto miss = pgcode::dual_min_weight_by_column_search(code, 5);
  REQUIRE_FALSE(miss.found);

  auto s32 = Space::make(3, 2, 1);
  LinearCode planes = LinearCode::from_incidence(*s32, 2);
  auto hit2 = pgcode::dual_min_weight_by_column_search(planes, 4);
  REQUIRE(hit2.found);
  REQUIRE(hit2.weight == 4);
  REQUIRE(planes.dual().contains(hit2.witness));
}

TEST_CASE("canonical representatives scale the first nonzero entry to 1") {
  Field F3(3, 1);
  REQUIRE(canonical_rep(F3, Row{0, 2, 1}) == Row{0, 1, 2});
  REQUIRE(canonical_rep(F3, Row{0, 1, 2}) == Row{0, 1, 2});
  REQUIRE(canonical_rep(F3, Row{0, 0, 0}) == Row{0, 0, 0});
  Field F5(5, 1);
  REQUIRE(canonical_rep(F5, Row{3, 1, 0, 4}) == Row{1, 2, 0, 3});
}

TEST_CASE("code constructor preconditions") {
  auto F4 = std::make_shared<Field>(2, 2);
  REQUIRE_THROWS_AS(LinearCode(F4, Mat{}, 3), precondition_error);
  auto F257 = std::make_shared<Field>(257, 1);
  REQUIRE_THROWS_AS(LinearCode(F257, Mat{}, 3), precondition_error);
  auto F3 = std::make_shared<Field>(3, 1);
  REQUIRE_THROWS_AS(LinearCode(F3, Mat{Row{1, 2}}, 3), precondition_error);
  LinearCode ok(F3, Mat{Row{1, 2, 0}}, 3);
  REQUIRE(ok.dim() == 1);
  REQUIRE_THROWS_AS(ok.contains(Row{1, 2}), precondition_error);
  REQUIRE_THROWS_AS(ok.encode(Row{1, 2}), precondition_error);
}
