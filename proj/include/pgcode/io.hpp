/// @file io.hpp
/// Machine-readable output: JSON serializers for every domain type, CSV and
/// packed-binary incidence export, and the common report envelope.
#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgcode/analysis.hpp"
#include "pgcode/blocking.hpp"
#include "pgcode/codes.hpp"
#include "pgcode/common.hpp"
#include "pgcode/constructions.hpp"
#include "pgcode/geometry.hpp"
#include "pgcode/gf.hpp"
#include "pgcode/redei.hpp"
#include "pgcode/spread.hpp"

namespace pgcode {

using json = nlohmann::ordered_json;

/// Big integers fit JSON numbers only up to 2^63-1; beyond that, decimal strings.
inline json int_to_json(const Int& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() &&
      v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}

inline json rat_to_json(const Rat& v) {
  json j;
  j["num"] = int_to_json(numerator(v));
  j["den"] = int_to_json(denominator(v));
  return j;
}

inline json field_to_json(const Field& F) {
  json j;
  j["p"] = F.p();
  j["h"] = F.h();
  j["modulus"] = F.modulus();
  return j;
}

inline json point_set_to_json(const PointSet& S) {
  json j;
  j["n"] = S.space->n();
  j["p"] = S.space->field().p();
  j["h"] = S.space->field().h();
  j["points"] = S.indices;
  return j;
}

inline PointSet point_set_from_json(const json& j) {
  auto space = Space::make(j.at("n").get<int>(), j.at("p").get<std::uint32_t>(),
                           j.at("h").get<std::uint32_t>());
  return make_point_set(space, j.at("points").get<std::vector<std::size_t>>());
}

inline json subspace_to_json(const Subspace& s) {
  json j = json::array();
  for (const auto& r : s.rows) j.push_back(r);
  return j;
}

inline json tau_histogram_to_json(const TauHistogram& h) {
  json tau = json::object();
  for (const auto& [size, cnt] : h.counts) tau[std::to_string(size)] = cnt;
  json j;
  j["E"] = h.E;
  j["tau"] = std::move(tau);
  j["X"] = int_to_json(h.X);
  j["identities"] = {{"eq9", h.eq9}, {"eq10", h.eq10}, {"eq11", h.eq11}};
  return j;
}

inline json weight_enumeration_to_json(const WeightEnumeration& we,
                                       std::size_t witness_limit = 100) {
  json dist = json::object();
  for (const auto& [w, c] : we.distribution) dist[std::to_string(w)] = c;
  json j;
  j["exact"] = we.exact;
  j["min_weight"] = we.min_weight;
  j["words_visited"] = we.words_visited;
  j["distribution"] = std::move(dist);
  j["witness_count"] = we.witnesses.size();
  json wits = json::array();
  for (std::size_t i = 0; i < we.witnesses.size() && i < witness_limit; ++i)
    wits.push_back(we.witnesses[i]);
  j["witnesses"] = std::move(wits);
  return j;
}

inline json dual_witness_to_json(const DualWitness& w) {
  json j;
  j["construction"] = w.construction;
  json params = json::object();
  for (const auto& [k, v] : w.parameters) params[k] = v;
  params["n"] = w.space->n();
  params["p"] = w.space->field().p();
  params["h"] = w.space->field().h();
  params["k"] = w.k;
  j["parameters"] = std::move(params);
  j["weight"] = w.claimed_weight;
  json supp = json::array();
  for (std::size_t i = 0; i < w.codeword.size(); ++i)
    if (w.codeword[i] != 0) supp.push_back(json{{"index", i}, {"value", w.codeword[i]}});
  j["support"] = std::move(supp);
  j["verified"] = w.verified;
  return j;
}

inline json spread_witness_to_json(const Spread& D, const LinearBlockingSetWitness& w) {
  json j;
  j["reduced_space"] = {{"n", D.big->n()}, {"p", D.big->field().p()}};
  j["U_basis"] = subspace_to_json(w.U);
  j["points"] = w.B.indices;
  j["k"] = w.k;
  j["one_point_census"] = w.one_point_census;
  j["size_one_mod_q"] = w.size_one_mod_q;
  j["verified"] = w.verified;
  return j;
}

/// Flat monomial list, x-degree major, terms in total-degree-then-lex order.
inline json redei_polynomial_to_json(const RedeiPolynomial& rp) {
  json out = json::array();
  for (std::size_t d = 0; d < rp.coeff.size(); ++d) {
    std::vector<std::pair<std::vector<std::uint32_t>, std::uint32_t>> terms(
        rp.coeff[d].terms.begin(), rp.coeff[d].terms.end());
    std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
      unsigned da = 0, db = 0;
      for (auto x : a.first) da += x;
      for (auto x : b.first) db += x;
      if (da != db) return da < db;
      return a.first < b.first;
    });
    for (const auto& [e, c] : terms)
      out.push_back(json{{"exponents", e}, {"x_degree", d}, {"coeff", c}});
  }
  return out;
}

inline json slope_facts_to_json(const SlopeFacts& sf) {
  json roots = json::object();
  for (const auto& [x, m] : sf.roots) roots[std::to_string(x)] = m;
  json j;
  j["H_at_slope"] = sf.H_at_slope;
  j["f_at_slope"] = sf.f_at_slope;
  j["roots"] = std::move(roots);
  j["splits"] = sf.splits;
  return j;
}

inline json bound_report_to_json(const BoundReport& r) {
  json j;
  j["schema"] = "pgcode.bounds.v1";
  j["parameters"] = {{"p", r.p}, {"h", r.h}, {"n", r.n}, {"k", r.k}};
  j["lower"] = {{"value", int_to_json(r.lower)}, {"source", r.lower_source}};
  j["upper"] = {{"value", int_to_json(r.upper)}, {"source", r.upper_source}};
  if (r.exact)
    j["exact"] = {{"value", *r.exact}, {"method", r.exact_method}};
  else
    j["exact"] = nullptr;
  if (!r.note.empty()) j["note"] = r.note;
  j["verdict"] = r.verdict;
  return j;
}

inline json gap_report_to_json(const GapReport& g) {
  json j;
  j["n"] = g.n;
  j["k"] = g.k;
  j["q"] = g.q;
  j["computed"] = g.computed;
  j["hypotheses_held"] = g.hypotheses_held;
  j["theta_k"] = int_to_json(g.theta_k);
  j["interval1"] = {{"lo_open", int_to_json(g.theta_k)}, {"hi_open", int_to_json(g.interval1_hi)}};
  j["interval2"] = {{"lo_open", int_to_json(g.theta_k)}, {"hi_open", rat_to_json(g.interval2_hi)}};
  j["weights_in_interval1"] = g.weights_in_interval1;
  j["weights_in_interval2"] = g.weights_in_interval2;
  json wits = json::array();
  for (const auto& w : g.witnesses) wits.push_back(w);
  j["witnesses"] = std::move(wits);
  j["verdict"] = g.verdict;
  return j;
}

inline json size_window_to_json(const SizeWindow& w) {
  json j;
  j["lower"] = int_to_json(w.lower);
  if (w.upper)
    j["upper"] = int_to_json(*w.upper);
  else
    j["upper"] = nullptr;
  return j;
}

/// CSV export: one row per k-space, 0/1 entries, comma-separated.
inline void incidence_to_csv(const Space::Incidence& inc, std::ostream& os) {
  for (std::size_t i = 0; i < inc.rows; ++i) {
    for (std::size_t j = 0; j < inc.cols; ++j) {
      if (j) os << ',';
      os << static_cast<int>(inc.a[i][j]);
    }
    os << '\n';
  }
}

/// Packed export: u32 little-endian row and column counts, then each row as
/// ceil(cols/8) bytes, least significant bit first within a byte.
inline std::vector<std::uint8_t> incidence_to_packed(const Space::Incidence& inc) {
  std::vector<std::uint8_t> out;
  auto put32 = [&](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) out.push_back(static_cast<std::uint8_t>((v >> (8 * b)) & 0xff));
  };
  put32(static_cast<std::uint32_t>(inc.rows));
  put32(static_cast<std::uint32_t>(inc.cols));
  const std::size_t row_bytes = (inc.cols + 7) / 8;
  for (std::size_t i = 0; i < inc.rows; ++i) {
    std::size_t base = out.size();
    out.resize(base + row_bytes, 0);
    for (std::size_t j = 0; j < inc.cols; ++j)
      if (inc.a[i][j]) out[base + j / 8] |= static_cast<std::uint8_t>(1u << (j % 8));
  }
  return out;
}

inline void write_file(const std::string& path, const std::string& data) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw precondition_error("write_file: cannot open " + path);
  os.write(data.data(), static_cast<std::streamsize>(data.size()));
}

inline std::string iso8601_utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04d-%02d-%02dT%02d:%02d:%02dZ", tm.tm_year + 1900,
                tm.tm_mon + 1, tm.tm_mday, tm.tm_hour, tm.tm_min, tm.tm_sec);
  return buf;
}

/// Standard report wrapper: identical config + results give byte-identical
/// output once the timestamp field is stripped.
inline json report_envelope(const std::string& schema, json config, json results) {
  json j;
  j["tool_version"] = kToolVersion;
  j["schema"] = schema;
  j["config"] = std::move(config);
  j["results"] = std::move(results);
  j["timestamp"] = iso8601_utc_now();
  return j;
}

}  // namespace pgcode
