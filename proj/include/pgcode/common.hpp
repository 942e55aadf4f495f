/// @file common.hpp
/// Shared error types, big-integer aliases, and small utilities.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace pgcode {

inline constexpr const char* kToolName = "pgcode";
inline constexpr const char* kToolVersion = "1.0.0";

/// Exact integers for all counting identities; no floating point in any
/// counting path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/// Violated operation precondition (maps to CLI exit code 2).
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// An observation that contradicts a claim the library is built to verify.
/// Never swallowed; maps to CLI exit code 3.
class falsified_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// b^e for small unsigned arguments with overflow check.
inline std::uint64_t upow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (b != 0 && r > UINT64_MAX / b) throw precondition_error("upow: 64-bit overflow");
    r *= b;
  }
  return r;
}

/// b^e exactly.
inline Int ipow(const Int& b, unsigned e) {
  Int r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

inline Int rat_ceil(const Rat& r) {
  Int q = numerator(r) / denominator(r);
  if (q * denominator(r) < numerator(r)) ++q;
  return q;
}

inline Int rat_floor(const Rat& r) {
  Int q = numerator(r) / denominator(r);
  if (q * denominator(r) > numerator(r)) --q;
  return q;
}

/// Chunked index-range dispatch. With threads <= 1 runs inline; results are
/// independent of the partition because workers only touch disjoint ranges.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t, std::size_t)>& body) {
  if (threads <= 1 || count < 2) {
    body(0, count);
    return;
  }
  unsigned workers = threads;
  if (workers > count) workers = static_cast<unsigned>(count);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::size_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    std::size_t lo = static_cast<std::size_t>(w) * chunk;
    std::size_t hi = lo + chunk < count ? lo + chunk : count;
    if (lo >= hi) break;
    pool.emplace_back(body, lo, hi);
  }
  for (auto& t : pool) t.join();
}

inline unsigned default_thread_count() {
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

}  // namespace pgcode
