/// @file codes.hpp
/// Linear codes over prime fields: construction from incidence matrices,
/// duals, membership, and weight enumeration.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <vector>

#include "pgcode/common.hpp"
#include "pgcode/geometry.hpp"
#include "pgcode/gf.hpp"
#include "pgcode/linalg.hpp"

namespace pgcode {

inline std::uint32_t scalar_product(const Field& F, const Row& a, const Row& b) {
  if (a.size() != b.size()) throw precondition_error("scalar_product: length mismatch");
  std::uint32_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s = F.add(s, F.mul(a[i], b[i]));
  return s;
}

/// Scale a nonzero word so its first nonzero entry is 1.
inline Row canonical_rep(const Field& F, Row v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    if (v[i] != 1) {
      std::uint32_t s = F.inv(v[i]);
      for (std::size_t j = i; j < v.size(); ++j) v[j] = F.mul(v[j], s);
    }
    break;
  }
  return v;
}

struct WeightEnumeration {
  bool exact = true;                   ///< false when the walk was sampled under a budget
  std::size_t min_weight = 0;          ///< 0 means the code has no nonzero word
  std::map<std::size_t, std::uint64_t> distribution;  ///< weight -> word count (nonzero weights)
  std::vector<Row> witnesses;          ///< canonical minimum-weight words, capped
  std::uint64_t words_visited = 0;
};

inline constexpr std::size_t kWitnessCap = 100000;
inline constexpr std::uint64_t kDefaultWeightBudget = std::uint64_t(1) << 26;

class LinearCode {
 public:
  LinearCode(std::shared_ptr<const Field> F, Mat generators, std::size_t length)
      : F_(std::move(F)), length_(length) {
    if (F_->h() != 1) throw precondition_error("LinearCode: codes are defined over prime fields");
    if (F_->p() > 251) throw precondition_error("LinearCode: symbol alphabet capped at p <= 251");
    for (const auto& r : generators)
      if (r.size() != length_) throw precondition_error("LinearCode: generator length mismatch");
    basis_ = std::move(generators);
    rref(*F_, basis_, &pivots_);
  }

  /// Row space over F_p of the 0/1 incidence matrix of k-spaces versus
  /// points of S, where q = p^h.
  static LinearCode from_incidence(const Space& S, int k) {
    auto inc = S.incidence_matrix(k);
    auto Fp = std::make_shared<Field>(S.field().p(), 1);
    Mat rows(inc.rows, Row(inc.cols, 0));
    for (std::size_t i = 0; i < inc.rows; ++i)
      for (std::size_t j = 0; j < inc.cols; ++j) rows[i][j] = inc.a[i][j];
    return LinearCode(std::move(Fp), std::move(rows), inc.cols);
  }

  const Field& field() const { return *F_; }
  std::shared_ptr<const Field> field_ptr() const { return F_; }
  std::size_t length() const { return length_; }
  std::size_t dim() const { return basis_.size(); }
  const Mat& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Row& word) const {
    if (word.size() != length_) throw precondition_error("contains: length mismatch");
    Row v = word;
    return reduce_against(*F_, basis_, pivots_, v);
  }

  LinearCode dual() const {
    Mat ns = nullspace(*F_, basis_, pivots_, length_);
    return LinearCode(F_, std::move(ns), length_);
  }

  Row encode(const Row& message) const {
    if (message.size() != dim()) throw precondition_error("encode: message length mismatch");
    Row c(length_, 0);
    for (std::size_t i = 0; i < message.size(); ++i) {
      if (message[i] == 0) continue;
      for (std::size_t j = 0; j < length_; ++j)
        c[j] = F_->add(c[j], F_->mul(message[i], basis_[i][j]));
    }
    return c;
  }

  /// Walk the whole code (modular Gray order, one row-addition per step) when
  /// p^dim fits the budget; otherwise sample `budget` random words and mark
  /// the result non-exact. Deterministic for a fixed seed.
  WeightEnumeration enumerate_weights(std::uint64_t budget = kDefaultWeightBudget,
                                      unsigned threads = 0, std::uint64_t seed = 0) const {
    WeightEnumeration we;
    if (dim() == 0) return we;
    const std::uint64_t p = F_->p();
    // p^dim, saturating at 2^63 to keep the budget comparison safe
    std::uint64_t total = 1;
    bool overflow = false;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (total > (std::uint64_t(1) << 63) / p) {
        overflow = true;
        break;
      }
      total *= p;
    }
    if (!overflow && total <= budget) {
      exact_walk(we, total, threads == 0 ? default_thread_count() : threads);
      we.exact = true;
    } else {
      sampled_walk(we, budget, seed);
      we.exact = false;
    }
    finalize_witnesses(we);
    return we;
  }

 private:
  struct LocalStats {
    std::size_t min_weight = SIZE_MAX;
    std::map<std::size_t, std::uint64_t> distribution;
    std::vector<Row> witnesses;
    std::uint64_t visited = 0;

    void account(std::size_t w, const Row& word) {
      ++visited;
      if (w == 0) return;
      ++distribution[w];
      if (w < min_weight) {
        min_weight = w;
        witnesses.clear();
      }
      if (w == min_weight && witnesses.size() < kWitnessCap) witnesses.push_back(word);
    }
  };

  /// Message digits in modular Gray order: step r -> r+1 adds basis row k,
  /// where k is the lowest base-p digit of r that is not p-1.
  void exact_walk(WeightEnumeration& we, std::uint64_t total, unsigned threads) const {
    std::vector<std::vector<std::size_t>> supports(dim());
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < length_; ++j)
        if (basis_[i][j] != 0) supports[i].push_back(j);

    unsigned T = threads;
    if (T < 1) T = 1;
    if (std::uint64_t(T) > total) T = static_cast<unsigned>(total);
    std::vector<LocalStats> locals(T);
    parallel_for(T, T, [&](std::size_t t_lo, std::size_t t_hi) {
      for (std::size_t t = t_lo; t < t_hi; ++t) {
        std::uint64_t lo = total / T * t + std::min<std::uint64_t>(t, total % T);
        std::uint64_t hi = lo + total / T + (t < total % T ? 1 : 0);
        if (F_->p() == 2)
          walk_range_packed(locals[t], lo, hi);
        else
          walk_range(locals[t], supports, lo, hi);
      }
    });
    merge(we, locals);
  }

  /// Binary specialization: rows packed into 64-bit blocks, one XOR sweep and
  /// popcount per step. The flipped Gray bit for r -> r+1 is countr_one(r).
  void walk_range_packed(LocalStats& st, std::uint64_t lo, std::uint64_t hi) const {
    if (lo >= hi) return;
    const std::size_t words = (length_ + 63) / 64;
    std::vector<std::vector<std::uint64_t>> packed(dim(), std::vector<std::uint64_t>(words, 0));
    for (std::size_t i = 0; i < dim(); ++i)
      for (std::size_t j = 0; j < length_; ++j)
        if (basis_[i][j]) packed[i][j / 64] |= std::uint64_t(1) << (j % 64);
    std::vector<std::uint64_t> cur(words, 0);
    std::uint64_t gray = lo ^ (lo >> 1);
    for (std::size_t i = 0; i < dim(); ++i)
      if ((gray >> i) & 1)
        for (std::size_t w = 0; w < words; ++w) cur[w] ^= packed[i][w];
    auto unpack_account = [&]() {
      std::size_t weight = 0;
      for (std::uint64_t w : cur) weight += static_cast<std::size_t>(std::popcount(w));
      Row word(length_, 0);
      if (weight != 0 && weight <= st.min_weight)  // only witnesses need unpacking
        for (std::size_t j = 0; j < length_; ++j) word[j] = (cur[j / 64] >> (j % 64)) & 1;
      st.account(weight, word);
    };
    unpack_account();
    for (std::uint64_t r = lo; r + 1 < hi; ++r) {
      std::size_t k = static_cast<std::size_t>(std::countr_one(r));
      for (std::size_t w = 0; w < words; ++w) cur[w] ^= packed[k][w];
      unpack_account();
    }
  }

  void walk_range(LocalStats& st, const std::vector<std::vector<std::size_t>>& supports,
                  std::uint64_t lo, std::uint64_t hi) const {
    if (lo >= hi) return;
    const std::uint32_t p = F_->p();
    // digits of the rank lo, and the Gray word at that rank
    std::vector<std::uint32_t> digits(dim(), 0);
    {
      std::uint64_t r = lo;
      for (std::size_t i = 0; i < dim() && r != 0; ++i) {
        digits[i] = static_cast<std::uint32_t>(r % p);
        r /= p;
      }
    }
    Row word(length_, 0);
    std::size_t weight = 0;
    for (std::size_t i = 0; i < dim(); ++i) {
      std::uint32_t g = F_->sub(digits[i], i + 1 < dim() ? digits[i + 1] : 0);
      if (g == 0) continue;
      for (std::size_t j : supports[i]) word[j] = F_->add(word[j], F_->mul(g, basis_[i][j]));
    }
    for (std::uint32_t x : word) weight += (x != 0);
    st.account(weight, word);
    for (std::uint64_t r = lo; r + 1 < hi; ++r) {
      // carry position of r -> r+1 is the Gray digit that moves
      std::size_t k = 0;
      while (digits[k] == p - 1) {
        digits[k] = 0;
        ++k;
      }
      ++digits[k];
      for (std::size_t j : supports[k]) {
        std::uint32_t before = word[j];
        std::uint32_t after = F_->add(before, basis_[k][j]);
        word[j] = after;
        weight += (after != 0);
        weight -= (before != 0);
      }
      st.account(weight, word);
    }
  }

  void sampled_walk(WeightEnumeration& we, std::uint64_t budget, std::uint64_t seed) const {
    const std::uint32_t p = F_->p();
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint32_t> pick(0, p - 1);
    LocalStats st;
    Row msg(dim(), 0);
    for (std::uint64_t s = 0; s < budget; ++s) {
      bool nonzero = false;
      for (auto& d : msg) {
        d = pick(rng);
        nonzero |= (d != 0);
      }
      if (!nonzero) continue;
      Row word = encode(msg);
      std::size_t w = 0;
      for (std::uint32_t x : word) w += (x != 0);
      st.account(w, word);
    }
    merge(we, {st});
  }

  void merge(WeightEnumeration& we, const std::vector<LocalStats>& locals) const {
    std::size_t best = SIZE_MAX;
    for (const auto& st : locals) best = std::min(best, st.min_weight);
    for (const auto& st : locals) {
      we.words_visited += st.visited;
      for (const auto& [w, c] : st.distribution) we.distribution[w] += c;
      if (st.min_weight == best)
        we.witnesses.insert(we.witnesses.end(), st.witnesses.begin(), st.witnesses.end());
    }
    we.min_weight = best == SIZE_MAX ? 0 : best;
  }

  void finalize_witnesses(WeightEnumeration& we) const {
    for (auto& w : we.witnesses) w = canonical_rep(*F_, std::move(w));
    std::sort(we.witnesses.begin(), we.witnesses.end());
    we.witnesses.erase(std::unique(we.witnesses.begin(), we.witnesses.end()), we.witnesses.end());
    if (we.witnesses.size() > kWitnessCap) we.witnesses.resize(kWitnessCap);
  }

  std::shared_ptr<const Field> F_;
  std::size_t length_;
  Mat basis_;
  std::vector<std::size_t> pivots_;
};

struct ColumnSearchResult {
  bool found = false;
  std::size_t weight = 0;
  Row witness;  ///< canonical dual word supported on the dependent columns
};

/// Minimum weight of the dual of `primal` by searching for the smallest
/// linearly dependent set of columns of its generator basis. Exact whenever
/// it reports found; independent of any codeword walk.
inline ColumnSearchResult dual_min_weight_by_column_search(const LinearCode& primal,
                                                           std::size_t max_weight) {
  const Field& F = primal.field();
  const Mat& G = primal.basis();
  const std::size_t cols = primal.length();
  max_weight = std::min(max_weight, cols);
  for (std::size_t w = 1; w <= max_weight; ++w) {
    std::vector<std::size_t> comb(w);
    for (std::size_t i = 0; i < w; ++i) comb[i] = i;
    while (true) {
      Mat sub(G.size(), Row(w, 0));
      for (std::size_t i = 0; i < G.size(); ++i)
        for (std::size_t j = 0; j < w; ++j) sub[i][j] = G[i][comb[j]];
      std::vector<std::size_t> piv;
      Mat reduced = sub;
      std::size_t rank = rref(F, reduced, &piv);
      if (rank < w) {
        // a dependency among exactly these columns, with full support when
        // every proper subset is independent (guaranteed at the first hit)
        Mat ker = nullspace(F, reduced, piv, w);
        Row v(cols, 0);
        for (std::size_t j = 0; j < w; ++j) v[comb[j]] = ker.front()[j];
        ColumnSearchResult res;
        res.found = true;
        res.weight = 0;
        for (std::uint32_t x : v) res.weight += (x != 0);
        res.witness = canonical_rep(F, std::move(v));
        return res;
      }
      // next combination
      std::size_t i = w;
      bool done = true;
      while (i-- > 0) {
        if (comb[i] + (w - i) <= cols - 1) {
          ++comb[i];
          for (std::size_t j = i + 1; j < w; ++j) comb[j] = comb[j - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  return {};
}

}  // namespace pgcode
