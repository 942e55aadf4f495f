/// Independent reference implementations used only by the tests to
/// cross-check library results. Deliberately naive and separate from the
/// library code paths: direct formulas, brute-force enumeration, and
/// bit-level binary field arithmetic.
#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace oracle {

using Int = boost::multiprecision::cpp_int;
using Vec = std::vector<std::uint32_t>;
using Matrix = std::vector<Vec>;

// ---- prime-field arithmetic -------------------------------------------------

inline std::uint32_t pmul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>((std::uint64_t{a} * b) % p);
}

inline std::uint32_t ppow(std::uint32_t a, std::uint64_t e, std::uint32_t p) {
  std::uint32_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = pmul(r, a, p);
    a = pmul(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint32_t pinv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw std::invalid_argument("inverse of zero");
  return ppow(a, p - 2, p);
}

// ---- binary extension fields via carry-less arithmetic ----------------------

/// Multiply two F_2[t] polynomials given as bit masks and reduce modulo
/// `mod` (also a bit mask, degree `deg`).
inline std::uint32_t gf2x_mulmod(std::uint32_t a, std::uint32_t b, std::uint32_t mod,
                                 unsigned deg) {
  std::uint64_t acc = 0;
  std::uint64_t aa = a;
  while (b) {
    if (b & 1) acc ^= aa;
    aa <<= 1;
    b >>= 1;
  }
  for (int bit = 62; bit >= static_cast<int>(deg); --bit)
    if (acc >> bit & 1) acc ^= std::uint64_t{mod} << (bit - deg);
  return static_cast<std::uint32_t>(acc);
}

inline std::uint32_t gf4_mul(std::uint32_t a, std::uint32_t b) {
  return gf2x_mulmod(a, b, 0b111, 2);  // t^2 + t + 1
}

inline std::uint32_t gf8_mul(std::uint32_t a, std::uint32_t b) {
  return gf2x_mulmod(a, b, 0b1011, 3);  // t^3 + t + 1
}

/// F_9 as a + b t with t^2 = -1 (modulus t^2 + 1); codes are a + 3b.
inline std::uint32_t gf9_mul(std::uint32_t x, std::uint32_t y) {
  std::uint32_t a = x % 3, b = x / 3, c = y % 3, d = y / 3;
  std::uint32_t re = (a * c % 3 + 3 - b * d % 3) % 3;  // ac - bd
  std::uint32_t im = (a * d + b * c) % 3;
  return re + 3 * im;
}

inline std::uint32_t gf9_add(std::uint32_t x, std::uint32_t y) {
  return (x % 3 + y % 3) % 3 + 3 * ((x / 3 + y / 3) % 3);
}

// ---- exact counting ----------------------------------------------------------

inline Int binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  Int r = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    r *= Int(n - i);
    r /= Int(i + 1);
  }
  return r;
}

inline Int theta(unsigned n, const Int& q) {
  Int acc = 0, pw = 1;
  for (unsigned i = 0; i <= n; ++i) {
    acc += pw;
    pw *= q;
  }
  return acc;
}

inline Int gaussian(unsigned a, unsigned b, const Int& q) {
  if (b > a) return 0;
  Int num = 1, den = 1;
  for (unsigned i = 0; i < b; ++i) {
    Int qa = 1, qb = 1;
    for (unsigned j = 0; j < a - i; ++j) qa *= q;
    for (unsigned j = 0; j < i + 1; ++j) qb *= q;
    num *= qa - 1;
    den *= qb - 1;
  }
  if (num % den != 0) throw std::logic_error("gaussian: not divisible");
  return num / den;
}

// ---- naive linear algebra over F_p --------------------------------------------

inline std::size_t rank_mod_p(Matrix m, std::uint32_t p) {
  std::size_t rank = 0;
  const std::size_t cols = m.empty() ? 0 : m[0].size();
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] % p == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[rank], m[piv]);
    const std::uint32_t inv = pinv(m[rank][c] % p, p);
    for (auto& x : m[rank]) x = pmul(x, inv, p);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      const std::uint32_t f = m[r][c] % p;
      for (std::size_t cc = 0; cc < cols; ++cc)
        m[r][cc] = (m[r][cc] + (p - f) * m[rank][cc]) % p;
    }
    ++rank;
  }
  return rank;
}

// ---- brute-force projective geometry for prime q ------------------------------

/// First nonzero coordinate scaled to 1.
inline Vec normalize(Vec v, std::uint32_t p) {
  for (auto& x : v) x %= p;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i]) {
      const std::uint32_t inv = pinv(v[i], p);
      for (auto& x : v) x = pmul(x, inv, p);
      break;
    }
  }
  return v;
}

inline std::set<Vec> proj_points(unsigned n, std::uint32_t p) {
  std::set<Vec> out;
  Vec v(n + 1, 0);
  while (true) {
    std::size_t i = 0;
    while (i < v.size() && ++v[i] == p) v[i++] = 0;
    if (i == v.size()) break;
    out.insert(normalize(v, p));
  }
  return out;
}

/// Every line as its set of normalized points, built from point pairs.
inline std::set<std::set<Vec>> proj_lines(unsigned n, std::uint32_t p) {
  const auto pts = proj_points(n, p);
  std::vector<Vec> list(pts.begin(), pts.end());
  std::set<std::set<Vec>> lines;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (std::size_t j = i + 1; j < list.size(); ++j) {
      std::set<Vec> line;
      line.insert(list[i]);
      for (std::uint32_t lam = 0; lam < p; ++lam) {
        Vec v(list[j].size());
        for (std::size_t t = 0; t < v.size(); ++t)
          v[t] = (list[j][t] + lam * list[i][t]) % p;
        line.insert(normalize(v, p));
      }
      lines.insert(line);
    }
  return lines;
}

// ---- weight distribution by direct message enumeration ------------------------

/// Encode every message against `gens` (assumed independent) and histogram
/// the weights. No Gray stepping: each word is recomputed from scratch.
inline std::map<std::size_t, std::uint64_t> weight_histogram(const Matrix& gens,
                                                             std::uint32_t p) {
  std::map<std::size_t, std::uint64_t> hist;
  const std::size_t len = gens.empty() ? 0 : gens[0].size();
  Vec msg(gens.size(), 0);
  while (true) {
    Vec word(len, 0);
    for (std::size_t r = 0; r < gens.size(); ++r)
      for (std::size_t c = 0; c < len; ++c)
        word[c] = (word[c] + msg[r] * gens[r][c]) % p;
    std::size_t w = 0;
    for (auto x : word) w += x != 0;
    ++hist[w];
    std::size_t i = 0;
    while (i < msg.size() && ++msg[i] == p) msg[i++] = 0;
    if (i == msg.size()) break;
  }
  return hist;
}

}  // namespace oracle
