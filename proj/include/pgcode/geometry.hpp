/// @file geometry.hpp
/// Points, subspaces, enumeration, span/meet and incidence matrices of PG(n,q).
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "pgcode/common.hpp"
#include "pgcode/gf.hpp"
#include "pgcode/linalg.hpp"

namespace pgcode {

/// Number of points of PG(n,q): (q^{n+1}-1)/(q-1).
inline std::uint64_t theta(unsigned n, std::uint64_t q) {
  if (q < 2) throw precondition_error("theta: q must be >= 2");
  Int t = (ipow(Int(q), n + 1) - 1) / (Int(q) - 1);
  if (t > UINT64_MAX) throw precondition_error("theta: value exceeds 64 bits");
  return static_cast<std::uint64_t>(t);
}

/// theta without the 64-bit cap, for bound arithmetic at any scale.
inline Int theta_int(unsigned n, const Int& q) {
  if (q < 2) throw precondition_error("theta_int: q must be >= 2");
  return (ipow(q, n + 1) - 1) / (q - 1);
}

/// Number of b-dimensional vector subspaces of F_q^a, exactly.
inline Int gaussian_coefficient(unsigned a, unsigned b, std::uint64_t q) {
  if (b > a) throw precondition_error("gaussian_coefficient: need 0 <= b <= a");
  Int num = 1, den = 1;
  for (unsigned i = 0; i < b; ++i) {
    num *= ipow(Int(q), a - i) - 1;
    den *= ipow(Int(q), i + 1) - 1;
  }
  if (num % den != 0) throw falsified_error("gaussian_coefficient: non-integral quotient");
  return num / den;
}

/// A projective subspace as its unique RREF basis (r rows = projective
/// dimension r-1). Value type: comparable, hashable via flattened codes.
struct Subspace {
  Mat rows;

  int pdim() const { return static_cast<int>(rows.size()) - 1; }

  std::vector<std::uint32_t> flat() const {
    std::vector<std::uint32_t> f;
    for (const auto& r : rows) f.insert(f.end(), r.begin(), r.end());
    return f;
  }

  bool operator==(const Subspace& o) const { return rows == o.rows; }
  bool operator<(const Subspace& o) const { return flat() < o.flat(); }
};

namespace detail {

/// All full-rank r x cols matrices over F in reduced row echelon form,
/// generated pivot-pattern by pivot-pattern (each is the canonical
/// representative of one (r-1)-dimensional projective subspace).
inline std::vector<Mat> all_rref_matrices(const Field& F, std::size_t r, std::size_t cols) {
  std::vector<Mat> out;
  if (r == 0 || r > cols) return out;
  std::vector<std::size_t> piv(r);
  for (std::size_t i = 0; i < r; ++i) piv[i] = i;
  const std::uint32_t q = F.q();
  while (true) {
    // free positions: (i,j) with j > piv[i] and j not a pivot column
    std::vector<bool> is_piv(cols, false);
    for (std::size_t c : piv) is_piv[c] = true;
    std::vector<std::pair<std::size_t, std::size_t>> free_pos;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = piv[i] + 1; j < cols; ++j)
        if (!is_piv[j]) free_pos.emplace_back(i, j);
    std::vector<std::uint32_t> vals(free_pos.size(), 0);
    while (true) {
      Mat m(r, Row(cols, 0));
      for (std::size_t i = 0; i < r; ++i) m[i][piv[i]] = 1;
      for (std::size_t t = 0; t < free_pos.size(); ++t)
        m[free_pos[t].first][free_pos[t].second] = vals[t];
      out.push_back(std::move(m));
      // odometer over F_q^{#free}
      std::size_t t = 0;
      for (; t < vals.size(); ++t) {
        if (++vals[t] < q) break;
        vals[t] = 0;
      }
      if (t == vals.size()) break;
    }
    // next pivot combination (ascending)
    std::size_t i = r;
    while (i-- > 0) {
      if (piv[i] + (r - i) <= cols - 1) {
        ++piv[i];
        for (std::size_t j = i + 1; j < r; ++j) piv[j] = piv[j - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
  }
}

}  // namespace detail

/// PG(n, q) bound to a Field: canonical point order, cached subspace lists,
/// span/meet, incidence matrices. Immutable after construction (the subspace
/// cache is guarded internally).
class Space {
 public:
  Space(int n, std::shared_ptr<const Field> F) : n_(n), F_(std::move(F)) {
    if (n_ < 1) throw precondition_error("Space: n must be >= 1");
    std::uint64_t th = theta(static_cast<unsigned>(n_), F_->q());
    if (th > (1u << 16)) throw precondition_error("Space: theta_n exceeds the 2^16 cap");
    enumerate_points();
  }

  static std::shared_ptr<const Space> make(int n, std::uint32_t p, std::uint32_t h) {
    return std::make_shared<Space>(n, std::make_shared<Field>(p, h));
  }

  int n() const { return n_; }
  const Field& field() const { return *F_; }
  std::shared_ptr<const Field> field_ptr() const { return F_; }
  std::uint32_t q() const { return F_->q(); }
  std::size_t num_points() const { return points_.size(); }
  const Row& point(std::size_t i) const { return points_.at(i); }

  /// Scale so the first nonzero coordinate is 1. Errors on the zero vector.
  Row normalize(Row v) const {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) continue;
      if (v[i] != 1) {
        std::uint32_t s = F_->inv(v[i]);
        for (std::size_t j = i; j < v.size(); ++j) v[j] = F_->mul(v[j], s);
      }
      return v;
    }
    throw precondition_error("normalize: zero vector is not a projective point");
  }

  std::size_t index_of(Row v) const {
    v = normalize(std::move(v));
    auto it = index_.find(key_of(v));
    if (it == index_.end()) throw precondition_error("index_of: point not in this space");
    return it->second;
  }

  /// All d-dimensional subspaces, canonically ordered (lexicographic on the
  /// flattened RREF codes). Cached per dimension.
  const std::vector<Subspace>& subspaces(int d) const {
    if (d < 0 || d > n_) throw precondition_error("subspaces: dimension out of range");
    std::lock_guard<std::mutex> lk(mu_);
    auto it = cache_.find(d);
    if (it != cache_.end()) return it->second;
    std::vector<Mat> mats =
        detail::all_rref_matrices(*F_, static_cast<std::size_t>(d) + 1, static_cast<std::size_t>(n_) + 1);
    std::vector<Subspace> subs;
    subs.reserve(mats.size());
    for (auto& m : mats) subs.push_back(Subspace{std::move(m)});
    std::sort(subs.begin(), subs.end());
    Int expected = gaussian_coefficient(static_cast<unsigned>(n_) + 1, static_cast<unsigned>(d) + 1, F_->q());
    if (Int(subs.size()) != expected)
      throw falsified_error("subspaces: enumeration count mismatch with Gaussian coefficient");
    return cache_.emplace(d, std::move(subs)).first->second;
  }

  Subspace span_rows(Mat rows) const {
    rref(*F_, rows);
    return Subspace{std::move(rows)};
  }

  Subspace span(const Subspace& a, const Subspace& b) const {
    Mat m = a.rows;
    m.insert(m.end(), b.rows.begin(), b.rows.end());
    return span_rows(std::move(m));
  }

  Subspace span_with_point(const Subspace& a, const Row& pt) const {
    Mat m = a.rows;
    m.push_back(pt);
    return span_rows(std::move(m));
  }

  Subspace point_subspace(std::size_t i) const { return Subspace{Mat{point(i)}}; }

  /// Canonical intersection; std::nullopt when the subspaces are disjoint
  /// as projective sets.
  std::optional<Subspace> meet(const Subspace& a, const Subspace& b) const {
    const std::size_t c = static_cast<std::size_t>(n_) + 1;
    Mat z;
    z.reserve(a.rows.size() + b.rows.size());
    for (const auto& r : a.rows) {
      Row w(2 * c, 0);
      std::copy(r.begin(), r.end(), w.begin());
      std::copy(r.begin(), r.end(), w.begin() + static_cast<std::ptrdiff_t>(c));
      z.push_back(std::move(w));
    }
    for (const auto& r : b.rows) {
      Row w(2 * c, 0);
      std::copy(r.begin(), r.end(), w.begin());
      z.push_back(std::move(w));
    }
    rref(*F_, z);
    Mat inter;
    for (const auto& w : z) {
      bool left_zero = true;
      for (std::size_t j = 0; j < c; ++j)
        if (w[j] != 0) {
          left_zero = false;
          break;
        }
      if (!left_zero) continue;
      Row r(w.begin() + static_cast<std::ptrdiff_t>(c), w.end());
      bool nonzero = false;
      for (std::uint32_t x : r)
        if (x != 0) {
          nonzero = true;
          break;
        }
      if (nonzero) inter.push_back(std::move(r));
    }
    if (inter.empty()) return std::nullopt;
    rref(*F_, inter);
    return Subspace{std::move(inter)};
  }

  /// True iff the subspaces share at least one point (cheaper than meet()).
  bool meets(const Subspace& a, const Subspace& b) const {
    Mat m = a.rows;
    m.insert(m.end(), b.rows.begin(), b.rows.end());
    return rref(*F_, m) < a.rows.size() + b.rows.size();
  }

  /// Sorted point indices of a subspace.
  std::vector<std::size_t> subspace_point_indices(const Subspace& s) const {
    const std::size_t r = s.rows.size();
    std::vector<std::size_t> out;
    out.reserve(theta(static_cast<unsigned>(r) - 1, F_->q()));
    for_each_projective_tuple(r, [&](const Row& y) {
      Row pt(static_cast<std::size_t>(n_) + 1, 0);
      for (std::size_t i = 0; i < r; ++i) {
        if (y[i] == 0) continue;
        for (std::size_t j = 0; j <= static_cast<std::size_t>(n_); ++j)
          pt[j] = F_->add(pt[j], F_->mul(y[i], s.rows[i][j]));
      }
      out.push_back(index_of(std::move(pt)));
    });
    std::sort(out.begin(), out.end());
    return out;
  }

  bool subspace_contains(const Subspace& s, std::size_t point_index) const {
    Row v = point(point_index);
    std::vector<std::size_t> piv;
    Mat m = s.rows;  // rows are RREF already; recover pivots
    for (const auto& r : m) {
      for (std::size_t j = 0; j < r.size(); ++j)
        if (r[j] != 0) {
          piv.push_back(j);
          break;
        }
    }
    return reduce_against(*F_, m, piv, v);
  }

  /// d-dimensional subspaces contained in U, canonically ordered.
  std::vector<Subspace> subspaces_within(const Subspace& U, int d) const {
    const std::size_t r = U.rows.size();
    if (d < 0 || static_cast<std::size_t>(d) + 1 > r)
      throw precondition_error("subspaces_within: dimension out of range");
    std::vector<Subspace> out;
    for (const Mat& inner : detail::all_rref_matrices(*F_, static_cast<std::size_t>(d) + 1, r)) {
      Mat rows;
      for (const auto& y : inner) {
        Row pt(static_cast<std::size_t>(n_) + 1, 0);
        for (std::size_t i = 0; i < r; ++i) {
          if (y[i] == 0) continue;
          for (std::size_t j = 0; j <= static_cast<std::size_t>(n_); ++j)
            pt[j] = F_->add(pt[j], F_->mul(y[i], U.rows[i][j]));
        }
        rows.push_back(std::move(pt));
      }
      out.push_back(span_rows(std::move(rows)));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  /// All lines through a fixed point, canonically ordered.
  std::vector<Subspace> lines_through(std::size_t point_index) const {
    std::set<Subspace> seen;
    for (std::size_t j = 0; j < num_points(); ++j) {
      if (j == point_index) continue;
      seen.insert(span_rows(Mat{point(point_index), point(j)}));
    }
    return std::vector<Subspace>(seen.begin(), seen.end());
  }

  struct Incidence {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::uint8_t>> a;  // 0/1 entries
  };

  /// Rows = k-spaces in canonical order, columns = points in canonical order.
  Incidence incidence_matrix(int k) const {
    if (k < 1 || k > n_ - 1) throw precondition_error("incidence_matrix: need 1 <= k <= n-1");
    const auto& subs = subspaces(k);
    Incidence inc;
    inc.rows = subs.size();
    inc.cols = num_points();
    inc.a.assign(inc.rows, std::vector<std::uint8_t>(inc.cols, 0));
    for (std::size_t i = 0; i < subs.size(); ++i)
      for (std::size_t j : subspace_point_indices(subs[i])) inc.a[i][j] = 1;
    return inc;
  }

  /// Visit all normalized coefficient tuples of length r in canonical order
  /// (leading-one position ascending, then remaining digits ascending).
  template <typename Fn>
  void for_each_projective_tuple(std::size_t r, Fn&& fn) const {
    const std::uint64_t q = F_->q();
    Row y(r, 0);
    for (std::size_t lead = 0; lead < r; ++lead) {
      std::fill(y.begin(), y.end(), 0u);
      y[lead] = 1;
      std::size_t frees = r - lead - 1;
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < frees; ++i) total *= q;
      for (std::uint64_t t = 0; t < total; ++t) {
        std::uint64_t v = t;
        for (std::size_t i = frees; i-- > 0;) {
          y[lead + 1 + i] = static_cast<std::uint32_t>(v % q);
          v /= q;
        }
        fn(static_cast<const Row&>(y));
      }
    }
  }

 private:
  void enumerate_points() {
    points_.clear();
    for_each_projective_tuple(static_cast<std::size_t>(n_) + 1,
                              [&](const Row& y) { points_.push_back(y); });
    index_.reserve(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(key_of(points_[i]), i);
  }

  std::uint64_t key_of(const Row& v) const {
    std::uint64_t k = 0;
    for (std::size_t i = v.size(); i-- > 0;) k = k * F_->q() + v[i];
    return k;
  }

  int n_;
  std::shared_ptr<const Field> F_;
  std::vector<Row> points_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
  mutable std::mutex mu_;
  mutable std::map<int, std::vector<Subspace>> cache_;
};

}  // namespace pgcode
