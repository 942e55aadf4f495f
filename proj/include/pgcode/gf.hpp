/// @file gf.hpp
/// Exact arithmetic in F_p and F_{p^h}: canonical modulus, trace, embeddings.
#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "pgcode/common.hpp"

namespace pgcode {

namespace detail {

inline bool is_prime_u32(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; static_cast<std::uint64_t>(d) * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

/// F_{p^h} with elements represented by their integer code
/// sum_i coeffs[i] * p^i, coeffs being the coordinates on the basis
/// 1, t, ..., t^{h-1} modulo the canonical irreducible modulus.
///
/// Canonical modulus: the monic irreducible of degree h over F_p with the
/// smallest integer code (constant term is the least significant digit), so
/// e.g. F_4 uses t^2+t+1 and F_8 uses t^3+t+1. Immutable after construction;
/// multiplication uses discrete-log tables built eagerly in the constructor.
class Field {
 public:
  using Elem = std::uint32_t;

  Field(std::uint32_t p, std::uint32_t h) : p_(p), h_(h) {
    if (!detail::is_prime_u32(p)) throw precondition_error("Field: p must be prime");
    if (h < 1) throw precondition_error("Field: h must be >= 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < h; ++i) {
      q *= p;
      if (q > (1u << 20)) throw precondition_error("Field: p^h exceeds the 2^20 cap");
    }
    q_ = static_cast<std::uint32_t>(q);
    modulus_ = canonical_modulus(p, h);
    build_log_tables();
  }

  std::uint32_t p() const { return p_; }
  std::uint32_t h() const { return h_; }
  std::uint32_t q() const { return q_; }
  /// Coefficient list c0..ch of the canonical modulus, constant term first.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }

  bool operator==(const Field& o) const { return p_ == o.p_ && h_ == o.h_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::vector<std::uint32_t> coeffs(Elem a) const {
    check_elem(a);
    std::vector<std::uint32_t> c(h_);
    for (std::uint32_t i = 0; i < h_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  Elem from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() != h_) throw precondition_error("from_coeffs: need exactly h coefficients");
    Elem a = 0;
    for (std::uint32_t i = h_; i-- > 0;) {
      if (c[i] >= p_) throw precondition_error("from_coeffs: coefficient out of range");
      a = a * p_ + c[i];
    }
    return a;
  }

  Elem add(Elem a, Elem b) const {
    check_elem(a);
    check_elem(b);
    if (p_ == 2) return a ^ b;
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
      r += (a % p_ + b % p_) % p_ * mult;
      a /= p_;
      b /= p_;
      mult *= p_;
    }
    return r;
  }

  Elem neg(Elem a) const {
    check_elem(a);
    if (p_ == 2) return a;
    Elem r = 0, mult = 1;
    for (std::uint32_t i = 0; i < h_; ++i) {
      r += (p_ - a % p_) % p_ * mult;
      a /= p_;
      mult *= p_;
    }
    return r;
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    check_elem(a);
    check_elem(b);
    if (a == 0 || b == 0) return 0;
    std::uint64_t e = static_cast<std::uint64_t>(log_[a]) + log_[b];
    return exp_[e % (q_ - 1)];
  }

  Elem inv(Elem a) const {
    check_elem(a);
    if (a == 0) throw precondition_error("Field::inv: zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
  }

  Elem div(Elem a, Elem b) const {
    if (b == 0) throw precondition_error("Field::div: division by zero");
    return mul(a, inv(b));
  }

  /// a^e with e any integer; 0^0 = 1, negative exponents invert first.
  Elem pow(Elem a, std::int64_t e) const {
    check_elem(a);
    if (e == 0) return 1;
    if (a == 0) {
      if (e < 0) throw precondition_error("Field::pow: negative power of zero");
      return 0;
    }
    std::int64_t m = q_ - 1;
    std::int64_t r = e % m;
    if (r < 0) r += m;
    std::uint64_t le = static_cast<std::uint64_t>(log_[a]) * static_cast<std::uint64_t>(r);
    return exp_[le % (q_ - 1)];
  }

  Elem frobenius(Elem a) const { return pow(a, p_); }

  /// x + x^p + ... + x^{p^{h-1}}; the result lies in the prime subfield and
  /// is returned as its F_p code (a value in [0, p)).
  Elem trace_to_prime(Elem x) const {
    Elem s = 0, y = x;
    for (std::uint32_t i = 0; i < h_; ++i) {
      s = add(s, y);
      y = frobenius(y);
    }
    if (s >= p_) throw falsified_error("trace_to_prime: value escaped the prime subfield");
    return s;
  }

  /// A fixed multiplicative generator (the smallest code with full order).
  Elem generator() const { return gen_; }

  std::string describe() const {
    return "F_" + std::to_string(q_) + " (p=" + std::to_string(p_) + ", h=" + std::to_string(h_) + ")";
  }

  /// Smallest-code monic irreducible of degree h over F_p, constant first.
  static std::vector<std::uint32_t> canonical_modulus(std::uint32_t p, std::uint32_t h) {
    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < h; ++i) total *= p;
    for (std::uint64_t code = 0; code < total; ++code) {
      std::vector<std::uint32_t> cand(h + 1);
      std::uint64_t c = code;
      for (std::uint32_t i = 0; i < h; ++i) {
        cand[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      cand[h] = 1;
      if (poly_irreducible(p, cand)) return cand;
    }
    throw falsified_error("canonical_modulus: no irreducible found (impossible)");
  }

 private:
  void check_elem(Elem a) const {
    if (a >= q_) throw precondition_error("FieldElement code out of range for this field");
  }

  // --- bootstrap polynomial arithmetic (used only to build the tables) ---

  // Multiply two coefficient vectors (length h) modulo the field modulus.
  std::vector<std::uint32_t> raw_mul(const std::vector<std::uint32_t>& a,
                                     const std::vector<std::uint32_t>& b) const {
    std::vector<std::uint32_t> prod(2 * h_ - 1, 0);
    for (std::uint32_t i = 0; i < h_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint32_t j = 0; j < h_; ++j)
        prod[i + j] = (prod[i + j] + a[i] * b[j]) % p_;
    }
    // reduce by the monic modulus
    for (std::uint32_t d = 2 * h_ - 2; d + 1 > h_; --d) {
      std::uint32_t c = prod[d];
      if (c == 0) continue;
      prod[d] = 0;
      for (std::uint32_t i = 0; i < h_; ++i) {
        std::uint32_t sub = (c * modulus_[i]) % p_;
        prod[d - h_ + i] = (prod[d - h_ + i] + p_ - sub) % p_;
      }
    }
    prod.resize(h_);
    return prod;
  }

  Elem encode(const std::vector<std::uint32_t>& c) const {
    Elem a = 0;
    for (std::uint32_t i = h_; i-- > 0;) a = a * p_ + c[i];
    return a;
  }

  std::vector<std::uint32_t> decode(Elem a) const {
    std::vector<std::uint32_t> c(h_);
    for (std::uint32_t i = 0; i < h_; ++i) {
      c[i] = a % p_;
      a /= p_;
    }
    return c;
  }

  Elem raw_mul_codes(Elem a, Elem b) const { return encode(raw_mul(decode(a), decode(b))); }

  Elem raw_pow_code(Elem a, std::uint64_t e) const {
    Elem r = 1, base = a;
    while (e > 0) {
      if (e & 1) r = raw_mul_codes(r, base);
      base = raw_mul_codes(base, base);
      e >>= 1;
    }
    return r;
  }

  void build_log_tables() {
    exp_.assign(q_ - 1, 0);
    log_.assign(q_, 0);
    // find the smallest-code element of multiplicative order q-1
    std::vector<std::uint64_t> prime_factors;
    std::uint64_t m = q_ - 1;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) prime_factors.push_back(m);
    gen_ = 1;
    for (Elem g = 1; g < q_; ++g) {
      bool full = true;
      for (std::uint64_t r : prime_factors)
        if (raw_pow_code(g, (q_ - 1) / r) == 1) {
          full = false;
          break;
        }
      if (full) {
        gen_ = g;
        break;
      }
    }
    Elem cur = 1;
    for (std::uint32_t i = 0; i < q_ - 1; ++i) {
      exp_[i] = cur;
      log_[cur] = i;
      cur = raw_mul_codes(cur, gen_);
    }
    if (cur != 1) throw falsified_error("Field: generator order mismatch");
  }

  static bool poly_irreducible(std::uint32_t p, const std::vector<std::uint32_t>& poly) {
    std::uint32_t deg = static_cast<std::uint32_t>(poly.size()) - 1;
    if (deg == 1) return true;
    // trial division by every monic polynomial of degree 1..deg/2
    for (std::uint32_t d = 1; d <= deg / 2; ++d) {
      std::uint64_t total = 1;
      for (std::uint32_t i = 0; i < d; ++i) total *= p;
      for (std::uint64_t code = 0; code < total; ++code) {
        std::vector<std::uint32_t> div(d + 1);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < d; ++i) {
          div[i] = static_cast<std::uint32_t>(c % p);
          c /= p;
        }
        div[d] = 1;
        if (poly_divides(p, div, poly)) return false;
      }
    }
    return true;
  }

  static bool poly_divides(std::uint32_t p, const std::vector<std::uint32_t>& div,
                           std::vector<std::uint32_t> rem) {
    std::uint32_t dd = static_cast<std::uint32_t>(div.size()) - 1;
    for (std::uint32_t d = static_cast<std::uint32_t>(rem.size()) - 1; d + 1 > dd; --d) {
      std::uint32_t c = rem[d];  // divisor is monic
      if (c == 0) continue;
      rem[d] = 0;
      for (std::uint32_t i = 0; i < dd; ++i) {
        std::uint32_t sub = (c * div[i]) % p;
        rem[d - dd + i] = (rem[d - dd + i] + p - sub) % p;
      }
    }
    for (std::uint32_t i = 0; i < dd; ++i)
      if (rem[i] != 0) return false;
    return true;
  }

  std::uint32_t p_, h_, q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elem> exp_;
  std::vector<std::uint32_t> log_;
  Elem gen_ = 1;
};

/// The fixed homomorphism F_{p^s} -> F_{p^{ms}} determined by sending the
/// source's basis element t to the smallest-code root of the source modulus
/// in the target field. Computed once per field pair.
class Embedding {
 public:
  Embedding(std::shared_ptr<const Field> src, std::shared_ptr<const Field> tgt)
      : src_(std::move(src)), tgt_(std::move(tgt)) {
    if (src_->p() != tgt_->p()) throw precondition_error("Embedding: different characteristics");
    if (tgt_->h() % src_->h() != 0)
      throw precondition_error("Embedding: source degree must divide target degree");
    const auto& mod = src_->modulus();
    root_ = tgt_->q();  // sentinel
    for (Field::Elem c = 0; c < tgt_->q(); ++c) {
      // evaluate the source modulus at c inside the target field (its
      // coefficients lie in the prime subfield, whose codes are shared)
      Field::Elem v = 0;
      for (std::size_t i = mod.size(); i-- > 0;) v = tgt_->add(tgt_->mul(v, c), mod[i]);
      if (v == 0) {
        root_ = c;
        break;
      }
    }
    if (root_ >= tgt_->q())
      throw falsified_error("Embedding: modulus has no root in the target field");
  }

  const Field& source() const { return *src_; }
  const Field& target() const { return *tgt_; }
  Field::Elem root() const { return root_; }

  Field::Elem operator()(Field::Elem x) const {
    auto c = src_->coeffs(x);
    Field::Elem v = 0;
    for (std::size_t i = c.size(); i-- > 0;) v = tgt_->add(tgt_->mul(v, root_), c[i]);
    return v;
  }

 private:
  std::shared_ptr<const Field> src_, tgt_;
  Field::Elem root_;
};

/// One-shot embedding (builds the field-pair homomorphism on the fly).
inline Field::Elem subfield_embed(std::shared_ptr<const Field> src, Field::Elem x,
                                  std::shared_ptr<const Field> tgt) {
  return Embedding(std::move(src), std::move(tgt))(x);
}

}  // namespace pgcode
