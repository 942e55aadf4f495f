/// @file redei.hpp
/// Rédei polynomial H(X, X̄) of an affine point set, slope evaluation, and
/// linear-factor detection of non-essential points.
#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "pgcode/blocking.hpp"
#include "pgcode/common.hpp"
#include "pgcode/geometry.hpp"
#include "pgcode/linalg.hpp"

namespace pgcode {

/// Sparse multivariate polynomial over F_q in a fixed number of variables:
/// exponent vector -> nonzero coefficient.
struct MultiPoly {
  std::size_t vars = 0;
  std::map<std::vector<std::uint32_t>, std::uint32_t> terms;

  static MultiPoly zero(std::size_t vars) { return MultiPoly{vars, {}}; }

  static MultiPoly constant(std::size_t vars, std::uint32_t c) {
    MultiPoly p{vars, {}};
    if (c != 0) p.terms[std::vector<std::uint32_t>(vars, 0)] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }

  unsigned total_degree() const {
    unsigned d = 0;
    for (const auto& [e, c] : terms) {
      unsigned s = 0;
      for (std::uint32_t x : e) s += x;
      d = std::max(d, s);
    }
    return d;
  }

  void add_term(const Field& F, const std::vector<std::uint32_t>& e, std::uint32_t c) {
    if (c == 0) return;
    auto it = terms.find(e);
    if (it == terms.end()) {
      terms.emplace(e, c);
      return;
    }
    it->second = F.add(it->second, c);
    if (it->second == 0) terms.erase(it);
  }

  MultiPoly plus(const Field& F, const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(F, e, c);
    return r;
  }

  MultiPoly times(const Field& F, const MultiPoly& o) const {
    MultiPoly r{vars, {}};
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) {
        std::vector<std::uint32_t> e(vars);
        for (std::size_t i = 0; i < vars; ++i) e[i] = e1[i] + e2[i];
        r.add_term(F, e, F.mul(c1, c2));
      }
    return r;
  }

  std::uint32_t evaluate(const Field& F, const Row& at) const {
    std::uint32_t s = 0;
    for (const auto& [e, c] : terms) {
      std::uint32_t t = c;
      for (std::size_t i = 0; i < vars; ++i)
        for (std::uint32_t j = 0; j < e[i]; ++j) t = F.mul(t, at[i]);
      s = F.add(s, t);
    }
    return s;
  }

  bool operator==(const MultiPoly& o) const { return vars == o.vars && terms == o.terms; }
};

/// Affine normalization of a blocking set K: a projectivity sending a tangent
/// hyperplane to X_n = 0 and its touch point to (0,...,0,1,0), plus the
/// affine coordinates of U = K minus that hyperplane.
struct AffineFrame {
  std::shared_ptr<const Space> space;
  PointSet K;
  Subspace hyperplane;              ///< the tangent hyperplane, original coordinates
  std::size_t distinguished = 0;    ///< its unique K-point (original index)
  Mat B;                            ///< frame coords -> original coords (row action y*B)
  Mat M;                            ///< original -> frame coords (row action x*M = B^{-1})
  std::vector<Row> affine;          ///< affine coordinates (length n) of U, K-index order
  std::vector<std::size_t> affine_source;  ///< original point index per affine row
  unsigned k = 0;                   ///< |K| - q - 1
};

namespace detail {

inline Row apply_matrix(const Field& F, const Row& x, const Mat& m) {
  Row y(m.front().size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] = F.add(y[j], F.mul(x[i], m[i][j]));
  }
  return y;
}

}  // namespace detail

/// Build the frame from an explicitly chosen tangent hyperplane.
inline AffineFrame build_frame_with(const PointSet& K, const Subspace& H) {
  const Space& sp = *K.space;
  const Field& F = sp.field();
  const std::size_t n = static_cast<std::size_t>(sp.n());
  if (H.pdim() != sp.n() - 1) throw precondition_error("build_frame: not a hyperplane");
  auto in_K = detail::membership_mask(K);
  std::vector<std::size_t> touch;
  for (std::size_t i : sp.subspace_point_indices(H))
    if (in_K[i]) touch.push_back(i);
  if (touch.size() != 1)
    throw precondition_error("build_frame: chosen hyperplane is not tangent to K");

  AffineFrame fr;
  fr.space = K.space;
  fr.K = K;
  fr.hyperplane = H;
  fr.distinguished = touch.front();

  // rows v_0..v_{n-2}: completing the touch point to a basis of H;
  // v_{n-1} = touch point; v_n = first point outside H
  Row P = sp.point(fr.distinguished);
  Mat partial{P};
  std::vector<std::size_t> piv;
  rref(F, partial, &piv);
  Mat fill;
  for (const auto& r : H.rows) {
    Row v = r;
    if (!reduce_against(F, partial, piv, v)) {
      fill.push_back(r);
      partial.push_back(r);
      rref(F, partial, &piv);
    }
  }
  if (fill.size() != n - 1) throw precondition_error("build_frame: degenerate hyperplane basis");
  fr.B = fill;
  fr.B.push_back(P);
  for (std::size_t i = 0; i < sp.num_points(); ++i) {
    if (!sp.subspace_contains(H, i)) {
      fr.B.push_back(sp.point(i));
      break;
    }
  }
  fr.M = inverse(F, fr.B);

  for (std::size_t i : K.indices) {
    if (in_K[i] && sp.subspace_contains(H, i)) continue;
    Row y = detail::apply_matrix(F, sp.point(i), fr.M);
    std::uint32_t s = F.inv(y[n]);
    Row aff(n, 0);
    for (std::size_t j = 0; j < n; ++j) aff[j] = F.mul(y[j], s);
    fr.affine.push_back(std::move(aff));
    fr.affine_source.push_back(i);
  }
  if (fr.affine.size() + 1 != K.indices.size())
    throw precondition_error("build_frame: affine part miscounted");
  if (K.indices.size() < F.q() + 1) throw precondition_error("build_frame: k would be negative");
  fr.k = static_cast<unsigned>(K.indices.size() - F.q() - 1);
  return fr;
}

/// Find the lexicographically first tangent hyperplane and frame K by it.
/// K must be a 1-blocking set with |K| <= 2q-1 (the regime where a tangent
/// hyperplane is guaranteed to exist).
inline AffineFrame build_frame(const PointSet& K) {
  const Space& sp = *K.space;
  if (K.indices.size() > 2 * static_cast<std::size_t>(sp.q()) - 1)
    throw precondition_error("build_frame: |K| exceeds 2q-1");
  if (!is_k_blocking_set(K, 1)) throw precondition_error("build_frame: K is not a 1-blocking set");
  auto in_K = detail::membership_mask(K);
  for (const Subspace& H : sp.subspaces(sp.n() - 1)) {
    std::size_t c = 0;
    for (std::size_t i : sp.subspace_point_indices(H)) c += in_K[i];
    if (c == 1) return build_frame_with(K, H);
  }
  throw falsified_error("build_frame: no tangent hyperplane exists at |K| <= 2q-1");
}

/// H(X, X̄) = prod over u in U of (X + u_0 X_0 + ... + u_{n-2} X_{n-2} - u_{n-1}),
/// stored by X-degree; f is read off the top coefficients.
struct RedeiPolynomial {
  AffineFrame frame;
  std::vector<MultiPoly> coeff;  ///< coeff[d] multiplies X^d; size |U|+1
  unsigned k = 0;

  /// Coefficient of X^i of f (i = 0..k): the coefficient of X^{q+i} of H.
  const MultiPoly& f_coeff(std::uint32_t q, unsigned i) const { return coeff.at(q + i); }
};

inline RedeiPolynomial redei_f(const AffineFrame& fr) {
  const Field& F = fr.space->field();
  const std::size_t n = static_cast<std::size_t>(fr.space->n());
  const std::size_t vars = n - 1;
  RedeiPolynomial rp;
  rp.frame = fr;
  rp.k = fr.k;
  rp.coeff = {MultiPoly::constant(vars, 1)};  // H = 1
  for (const Row& u : fr.affine) {
    // linear form L_u = u_0 X_0 + ... + u_{n-2} X_{n-2} - u_{n-1}
    MultiPoly L = MultiPoly::constant(vars, F.neg(u[n - 1]));
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<std::uint32_t> e(vars, 0);
      e[i] = 1;
      L.add_term(F, e, u[i]);
    }
    std::vector<MultiPoly> next(rp.coeff.size() + 1, MultiPoly::zero(vars));
    for (std::size_t d = 0; d < rp.coeff.size(); ++d) {
      next[d + 1] = next[d + 1].plus(F, rp.coeff[d]);        // X * old
      next[d] = next[d].plus(F, rp.coeff[d].times(F, L));    // L_u * old
    }
    rp.coeff = std::move(next);
  }
  for (std::size_t d = 0; d < rp.coeff.size(); ++d)
    if (rp.coeff[d].total_degree() > rp.coeff.size() - 1 - d)
      throw falsified_error("redei_f: coefficient degree bound violated");
  return rp;
}

struct SlopeFacts {
  Row H_at_slope;                        ///< univariate coefficients, index = X-degree
  Row f_at_slope;                        ///< H / (X^q - X)
  std::map<std::uint32_t, unsigned> roots;  ///< root -> multiplicity in f
  bool splits = false;                   ///< multiplicities sum to deg f
};

/// Evaluate H along a pencil of hyperplanes with slope m̄, check the
/// (X^q - X) divisibility, and tie each root multiplicity r of f to a
/// hyperplane meeting U in exactly r+1 points.
inline SlopeFacts slope_evaluate(const RedeiPolynomial& rp, const Row& slope) {
  const Field& F = rp.frame.space->field();
  const std::uint32_t q = F.q();
  const std::size_t n = static_cast<std::size_t>(rp.frame.space->n());
  if (slope.size() != n - 1) throw precondition_error("slope_evaluate: slope arity mismatch");
  if (rp.k >= q - 1)
    throw precondition_error("slope_evaluate: k >= q-1 is outside the quotient identity regime");

  // skewness: no K-point of the tangent hyperplane may satisfy
  // X_{n-1} = sum m_i X_i in frame coordinates
  {
    const Space& sp = *rp.frame.space;
    auto in_K = detail::membership_mask(rp.frame.K);
    for (std::size_t i : sp.subspace_point_indices(rp.frame.hyperplane)) {
      if (!in_K[i]) continue;
      Row y = detail::apply_matrix(F, sp.point(i), rp.frame.M);
      std::uint32_t rhs = 0;
      for (std::size_t j = 0; j + 1 < n; ++j) rhs = F.add(rhs, F.mul(slope[j], y[j]));
      if (y[n - 1] == rhs)
        throw precondition_error("slope_evaluate: slope space hits K at infinity, point index " +
                                 std::to_string(i));
    }
  }

  SlopeFacts out;
  out.H_at_slope.resize(rp.coeff.size());
  for (std::size_t d = 0; d < rp.coeff.size(); ++d)
    out.H_at_slope[d] = rp.coeff[d].evaluate(F, slope);

  // divide by X^q - X: H = f*(X^q - X) + r, computed top-down
  Row rem = out.H_at_slope;
  Row quot(rem.size() > q ? rem.size() - q : 0, 0);
  for (std::size_t d = rem.size(); d-- > q;) {
    std::uint32_t c = rem[d];
    if (c == 0) continue;
    quot[d - q] = c;
    rem[d] = 0;
    rem[d - q + 1] = F.add(rem[d - q + 1], c);  // subtract c*(X^q - X)*X^{d-q}
  }
  for (std::uint32_t c : rem)
    if (c != 0) throw falsified_error("slope_evaluate: X^q - X does not divide H at this slope");
  out.f_at_slope = std::move(quot);

  // the quotient must agree with the truncated f evaluated at the slope
  for (std::size_t i = 0; i < out.f_at_slope.size(); ++i)
    if (out.f_at_slope[i] != rp.f_coeff(q, static_cast<unsigned>(i)).evaluate(F, slope))
      throw falsified_error("slope_evaluate: quotient disagrees with the truncated f");

  // roots with multiplicity, by repeated synthetic division
  unsigned mult_sum = 0;
  for (std::uint32_t x = 0; x < q; ++x) {
    Row g = out.f_at_slope;
    unsigned m = 0;
    while (g.size() > 1) {
      // synthetic division of g by (X - x); remainder is the evaluation
      Row h(g.size() - 1, 0);
      std::uint32_t carry = 0;
      for (std::size_t d = g.size(); d-- > 1;) {
        carry = F.add(g[d], F.mul(carry, x));
        h[d - 1] = carry;
      }
      if (F.add(g[0], F.mul(carry, x)) != 0) break;
      g = h;
      ++m;
    }
    if (m > 0) out.roots[x] = m;
    mult_sum += m;

    // multiplicity law: the hyperplane X_{n-1} = x + sum m_i X_i holds
    // exactly m+1 points of U
    std::size_t cnt = 0;
    for (const Row& u : rp.frame.affine) {
      std::uint32_t rhs = x;
      for (std::size_t j = 0; j + 1 < n; ++j) rhs = F.add(rhs, F.mul(slope[j], u[j]));
      if (u[n - 1] == rhs) ++cnt;
    }
    if (cnt != m + 1)
      throw falsified_error("slope_evaluate: root multiplicity disagrees with the point count");
  }
  out.splits = mult_sum + 1 == out.f_at_slope.size() || (out.f_at_slope.size() <= 1);
  return out;
}

struct NonessentialPoint {
  Row affine;              ///< affine coordinates, length n
  std::size_t point_index; ///< original projective index
};

/// Affine points u of U whose linear form divides f exactly: substituting
/// X := u_{n-1} - sum u_i X_i into f must give the zero polynomial.
inline std::vector<NonessentialPoint> nonessential_points(const RedeiPolynomial& rp) {
  const Field& F = rp.frame.space->field();
  const std::uint32_t q = F.q();
  const std::size_t n = static_cast<std::size_t>(rp.frame.space->n());
  const std::size_t vars = n - 1;
  std::vector<NonessentialPoint> out;
  for (std::size_t ui = 0; ui < rp.frame.affine.size(); ++ui) {
    const Row& u = rp.frame.affine[ui];
    MultiPoly c = MultiPoly::constant(vars, u[n - 1]);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      std::vector<std::uint32_t> e(vars, 0);
      e[i] = 1;
      c.add_term(F, e, F.neg(u[i]));
    }
    // Horner: remainder of f modulo (X - c) is f(c)
    MultiPoly r = rp.f_coeff(q, rp.k);
    for (unsigned i = rp.k; i-- > 0;) r = r.times(F, c).plus(F, rp.f_coeff(q, i));
    if (r.is_zero()) out.push_back({u, rp.frame.affine_source[ui]});
  }
  return out;
}

}  // namespace pgcode
