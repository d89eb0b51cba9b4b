#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpi/series.hpp"

namespace qpi {

enum class identity_id {
  eq1,
  eq3,
  eq5_printed,
  eq5_corrected,
  partial_theta,
  gf_r,
  gf_a1,
  gf_a2,
  s3_ssum,
  s3_b1sum,
  s3_fixsum_corrected,
};

enum class formula_side { lhs, rhs };

struct identity_info {
  identity_id id;
  const char* name;
  const char* description;
  bool uses_a;
  bool uses_b;
  bool uses_c;
  /// false when the printed form provably deviates from the enumerated truth
  bool expected_match;
  const char* mismatch_note;
  /// left side is a weighted enumeration sum rather than a closed formula
  bool lhs_enumerated;
  window default_window;
};

const std::vector<identity_info>& identity_registry();
const identity_info& identity_lookup(identity_id id);
identity_id parse_identity(std::string_view name);

/// Largest n with n(n+1)/2 <= q_max: the last index whose theta-type term
/// q^{n(n+1)/2} still lands inside the q-box.
inline int theta_index_max(int q_max) {
  int n = 0;
  while ((n + 1) * (n + 2) / 2 <= q_max) ++n;
  return n;
}

inline long long triangle_weight(long long n) { return n * (n + 1) / 2; }

/// Validates that the window can hold the identity's full Laurent shift
/// budget, so that the built sides are valid on every requested a-degree.
void check_budget(identity_id id, const window& w);

namespace detail {

/// c * q^e.q a^e.a b^e.b c^e.c as a series, tolerating exponents outside the
/// window: content cut by the q/b/c box is exactly zero there, content cut
/// by the a-band is recorded in the true-support metadata.
template <class C>
basic_series<C> scaled_monomial(C c, const expq& e, const window& w) {
  if (e.q > w.q_max || e.b > w.b_max || e.c > w.c_max) return basic_series<C>::zero(w);
  std::vector<typename basic_series<C>::term> t;
  t.emplace_back(pack_exp(e), c);
  return basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, e.a, e.a);
}

/// 1 + c * (monomial e), with the same out-of-window tolerance.
template <class C>
basic_series<C> one_plus_scaled(C c, const expq& e, const window& w) {
  return add(basic_series<C>::one(w), scaled_monomial(c, e, w));
}

}  // namespace detail

/// (p)_n = (1-p)(1-pq)...(1-pq^{n-1}); pass no count for (p)_infinity, which
/// requires deg_q(p) >= 1 or p = a so that the tail is exactly 1 in-window.
template <class C>
basic_series<C> pochhammer(const expq& p, std::optional<int> n, const window& w,
                           exec_policy pol = exec_policy::automatic) {
  if (p == expq{}) throw domain_error("pochhammer: monomial must be nonzero");
  if (p.q < 0 || p.b < 0 || p.c < 0) throw domain_error("pochhammer: negative q/b/c exponent");
  bool pure_a = (p.q == 0 && p.a == 1 && p.b == 0 && p.c == 0);
  if (!n && p.q == 0 && !pure_a)
    throw domain_error("pochhammer: infinite product needs deg_q >= 1 or the pure monomial a");
  basic_series<C> acc = basic_series<C>::one(w);
  for (int k = 0;; ++k) {
    if (n && k >= *n) break;
    expq e{p.q + k, p.a, p.b, p.c};
    if (e.q > w.q_max) break;  // this and all later factors are 1 in-window
    acc = mul(acc, detail::one_plus_scaled(C(-1), e, w), pol);
  }
  return acc;
}

/// Builds the requested closed-formula side on w. Enumeration-backed left
/// sides (see identity_info::lhs_enumerated) are not formulas and are
/// dispatched by build_side in the identity layer instead.
template <class C>
basic_series<C> build_formula_side(identity_id id, formula_side side, const window& w,
                                   exec_policy pol = exec_policy::automatic);

/// Exponent remap b -> -a*c: every stored monomial q^i a^j b^k c^m of src
/// becomes (-1)^k q^i a^{j+k} c^{m+k}. Exact per target cell because the
/// (new c-degree, old c-degree) pair pins the source b-degree; requires the
/// source b-box to cover every target c-degree and charges the a-validity
/// top for source degrees above the band.
template <class C>
basic_series<C> substitute_b_as_neg_ac(const basic_series<C>& src, const window& target);

/// Sum of the two partial-theta-type tails: Sigma_{n>=0} q^{n(n+1)/2} c^n as
/// a series (used standalone by several builders).
template <class C>
basic_series<C> theta_c_sum(const window& w) {
  std::vector<typename basic_series<C>::term> t;
  long long a_lo = 0, a_hi = 0;
  for (int n = 0; triangle_weight(n) <= w.q_max; ++n)
    t.emplace_back(pack_exp(expq{static_cast<int>(triangle_weight(n)), 0, 0, n}), C(1));
  return basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, a_lo, a_hi);
}

// ---------------------------------------------------------------------------
// implementation

namespace detail {

/// prod_{k=1..q_max} 1/(1-x q^k) for x a (possibly trivial) monomial.
template <class C>
basic_series<C> inv_qpoch_tail(const expq& x, const window& w, exec_policy pol) {
  basic_series<C> acc = basic_series<C>::one(w);
  for (int k = 1; k <= w.q_max; ++k)
    acc = mul(acc, basic_series<C>::geometric_inverse(expq{x.q + k, x.a, x.b, x.c}, w), pol);
  return acc;
}

/// prod_{k=n+1..infinity} (1 + a c q^k), truncated.
template <class C>
basic_series<C> ac_tail(int n, const window& w, exec_policy pol) {
  basic_series<C> acc = basic_series<C>::one(w);
  for (int k = n + 1; k <= w.q_max; ++k)
    acc = mul(acc, one_plus_scaled(C(1), expq{k, 1, 0, 1}, w), pol);
  return acc;
}

/// tails[n] = prod_{k=n+1..infinity}(1 + a c q^k) for n = 0..q_max.
template <class C>
std::vector<basic_series<C>> ac_tails(const window& w, exec_policy pol) {
  std::vector<basic_series<C>> tails(static_cast<size_t>(w.q_max) + 1, basic_series<C>::one(w));
  for (int n = w.q_max - 1; n >= 0; --n)
    tails[static_cast<size_t>(n)] = mul(tails[static_cast<size_t>(n) + 1],
                                        one_plus_scaled(C(1), expq{n + 1, 1, 0, 1}, w), pol);
  return tails;
}

/// Sigma_{n>=n0} q^{T(n)} c^n prod_{k>n}(1+acq^k).
template <class C>
basic_series<C> theta_tail_sum(int n0, const window& w, exec_policy pol) {
  auto tails = ac_tails<C>(w, pol);
  basic_series<C> acc = basic_series<C>::zero(w);
  for (int n = n0; triangle_weight(n) <= w.q_max; ++n) {
    auto t = scaled_monomial(C(1), expq{static_cast<int>(triangle_weight(n)), 0, 0, n}, w);
    acc = add(acc, mul(t, tails[static_cast<size_t>(n)], pol));
  }
  return acc;
}

/// Sigma_{n>=0} a q^n prod_{k>n}(1+acq^k) / ((1-a)(1-aq)...(1-aq^n)).
template <class C>
basic_series<C> a_progression_sum(const window& w, exec_policy pol) {
  auto tails = ac_tails<C>(w, pol);
  basic_series<C> acc = basic_series<C>::zero(w);
  basic_series<C> inv_prefix = basic_series<C>::geometric_inverse(expq{0, 1, 0, 0}, w);
  for (int n = 0; n <= w.q_max; ++n) {
    if (n > 0)
      inv_prefix = mul(inv_prefix, basic_series<C>::geometric_inverse(expq{n, 1, 0, 0}, w), pol);
    auto head = scaled_monomial(C(1), expq{n, 1, 0, 0}, w);
    acc = add(acc, mul(mul(head, tails[static_cast<size_t>(n)], pol), inv_prefix, pol));
  }
  return acc;
}

/// (Sigma_{n>=0} q^{T(n)} c^n) * prod_{k>=0} 1/(1-aq^k).
template <class C>
basic_series<C> theta_times_inv_a_products(const window& w, exec_policy pol) {
  basic_series<C> prod = basic_series<C>::geometric_inverse(expq{0, 1, 0, 0}, w);
  prod = mul(prod, inv_qpoch_tail<C>(expq{0, 1, 0, 0}, w, pol), pol);
  return mul(theta_c_sum<C>(w), prod, pol);
}

/// 1 + Sigma_{n>=1} q^n prod_{k=1..n} 1/((1-x q^k)(1-y q^k)) for monomials
/// x, y (the balanced sum shared by several left sides).
template <class C>
basic_series<C> balanced_sum(const expq& x, const expq& y, const window& w, exec_policy pol) {
  basic_series<C> acc = basic_series<C>::one(w);
  basic_series<C> prefix = basic_series<C>::one(w);
  for (int n = 1; n <= w.q_max; ++n) {
    prefix = mul(prefix, basic_series<C>::geometric_inverse(expq{x.q + n, x.a, x.b, x.c}, w), pol);
    prefix = mul(prefix, basic_series<C>::geometric_inverse(expq{y.q + n, y.a, y.b, y.c}, w), pol);
    acc = add(acc, mul(scaled_monomial(C(1), expq{n, 0, 0, 0}, w), prefix, pol));
  }
  return acc;
}

/// Sigma_{n=n0..n*} (-1)^n q^{T(n)} b^n a^{-n} as a bare term sum.
template <class C>
basic_series<C> alternating_theta_b_over_a(int n0, const window& w) {
  std::vector<typename basic_series<C>::term> t;
  long long lo = 0, hi = 0;
  for (int n = n0; triangle_weight(n) <= w.q_max; ++n) {
    expq e{static_cast<int>(triangle_weight(n)), -n, n, 0};
    if (e.b <= w.b_max) {
      t.emplace_back(pack_exp(e), C(n % 2 == 0 ? 1 : -1));
      lo = std::min<long long>(lo, -n);
    }
  }
  return basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, lo, hi);
}

template <class C>
basic_series<C> build_eq1(formula_side side, const window& w, exec_policy pol) {
  if (side == formula_side::lhs)
    return balanced_sum<C>(expq{0, 1, 0, 0}, expq{0, 0, 1, 0}, w, pol);
  int nstar = theta_index_max(w.q_max);
  // widened so that the a^{-n-1} shifts leave the requested band fully valid
  window w2 = w;
  w2.a_max += nstar + 1;
  basic_series<C> head = basic_series<C>::one(w2);
  basic_series<C> binv = basic_series<C>::one(w2);
  for (int n = 1; n <= nstar; ++n) {
    binv = mul(binv, basic_series<C>::geometric_inverse(expq{n, 0, 1, 0}, w2), pol);
    auto t = scaled_monomial(C(n % 2 == 0 ? 1 : -1),
                             expq{static_cast<int>(triangle_weight(n)), -n, n, 0}, w2);
    head = add(head, mul(t, binv, pol));
  }
  auto part1 = mul(one_plus_scaled(C(-1), expq{0, -1, 0, 0}, w2), head, pol);

  auto prod = mul(inv_qpoch_tail<C>(expq{0, 1, 0, 0}, w2, pol),
                  inv_qpoch_tail<C>(expq{0, 0, 1, 0}, w2, pol), pol);
  auto part2 = mul(alternating_theta_b_over_a<C>(0, w2), prod, pol);
  part2 = mul(scaled_monomial(C(1), expq{0, -1, 0, 0}, w2), part2, pol);
  return restrict_to(add(part1, part2), w);
}

template <class C>
basic_series<C> build_eq3(formula_side side, const window& w, exec_policy pol) {
  if (side == formula_side::lhs)
    return balanced_sum<C>(expq{0, 0, 0, 0}, expq{0, 0, 1, 0}, w, pol);
  std::vector<typename basic_series<C>::term> t;
  for (int n = 0; triangle_weight(n) <= w.q_max; ++n) {
    expq e{static_cast<int>(triangle_weight(n)), 0, n, 0};
    if (e.b <= w.b_max) t.emplace_back(pack_exp(e), C(n % 2 == 0 ? 1 : -1));
  }
  auto theta = basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, 0, 0);
  auto prod = mul(inv_qpoch_tail<C>(expq{0, 0, 0, 0}, w, pol),
                  inv_qpoch_tail<C>(expq{0, 0, 1, 0}, w, pol), pol);
  return mul(theta, prod, pol);
}

template <class C>
basic_series<C> build_eq5(bool corrected, formula_side side, const window& w, exec_policy pol) {
  if (side == formula_side::rhs) return theta_times_inv_a_products<C>(w, pol);
  return add(a_progression_sum<C>(w, pol), theta_tail_sum<C>(corrected ? 0 : 1, w, pol));
}

template <class C>
basic_series<C> build_partial_theta(formula_side side, const window& w, exec_policy pol) {
  if (side == formula_side::lhs) {
    std::vector<typename basic_series<C>::term> t;
    long long hi = 0;
    for (int n = 0; static_cast<long long>(n) * (n - 1) / 2 <= w.q_max; ++n) {
      t.emplace_back(pack_exp(expq{static_cast<int>(static_cast<long long>(n) * (n - 1) / 2), n,
                                   0, 0}),
                     C(n % 2 == 0 ? 1 : -1));
      hi = n;
    }
    return basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, 0, hi);
  }
  basic_series<C> sum = basic_series<C>::zero(w);
  basic_series<C> inv_a = basic_series<C>::one(w);
  basic_series<C> inv_q = basic_series<C>::one(w);
  for (int n = 0; n <= w.q_max; ++n) {
    if (n > 0) {
      inv_a = mul(inv_a, basic_series<C>::geometric_inverse(expq{n - 1, 1, 0, 0}, w), pol);
      inv_q = mul(inv_q, basic_series<C>::geometric_inverse(expq{n, 0, 0, 0}, w), pol);
    }
    sum = add(sum, mul(scaled_monomial(C(1), expq{n, 0, 0, 0}, w), mul(inv_a, inv_q, pol), pol));
  }
  auto a_poch = pochhammer<C>(expq{0, 1, 0, 0}, std::nullopt, w, pol);
  auto q_poch = pochhammer<C>(expq{1, 0, 0, 0}, std::nullopt, w, pol);
  return mul(mul(a_poch, q_poch, pol), sum, pol);
}

template <class C>
basic_series<C> build_s3_ssum_rhs(const window& w, exec_policy pol) {
  int nstar = theta_index_max(w.q_max);
  window w2 = w;
  w2.a_max += nstar + 1;
  auto prod = mul(inv_qpoch_tail<C>(expq{0, 1, 0, 0}, w2, pol),
                  inv_qpoch_tail<C>(expq{0, 0, 1, 0}, w2, pol), pol);
  auto part = mul(alternating_theta_b_over_a<C>(0, w2), prod, pol);
  part = mul(scaled_monomial(C(1), expq{0, -1, 0, 0}, w2), part, pol);
  return restrict_to(part, w);
}

template <class C>
basic_series<C> build_s3_b1sum_rhs(const window& w, exec_policy pol) {
  basic_series<C> acc = basic_series<C>::zero(w);
  basic_series<C> binv = basic_series<C>::one(w);
  for (int n = 1; triangle_weight(n) <= w.q_max; ++n) {
    binv = mul(binv, basic_series<C>::geometric_inverse(expq{n, 0, 1, 0}, w), pol);
    auto t = scaled_monomial(C(n % 2 == 0 ? 1 : -1),
                             expq{static_cast<int>(triangle_weight(n)), -n - 1, n, 0}, w);
    acc = add(acc, mul(t, binv, pol));
  }
  return acc;
}

template <class C>
basic_series<C> build_s3_fixsum_rhs(const window& w, exec_policy pol) {
  auto sum = balanced_sum<C>(expq{0, 1, 0, 0}, expq{0, 0, 1, 0}, w, pol);
  // swap the leading 1 for a^{-1}
  return add(add(sum, scaled_monomial(C(-1), expq{}, w)),
             scaled_monomial(C(1), expq{0, -1, 0, 0}, w));
}

}  // namespace detail

template <class C>
basic_series<C> build_formula_side(identity_id id, formula_side side, const window& w,
                                   exec_policy pol) {
  check_budget(id, w);
  switch (id) {
    case identity_id::eq1:
      return detail::build_eq1<C>(side, w, pol);
    case identity_id::eq3:
      return detail::build_eq3<C>(side, w, pol);
    case identity_id::eq5_printed:
      return detail::build_eq5<C>(false, side, w, pol);
    case identity_id::eq5_corrected:
      return detail::build_eq5<C>(true, side, w, pol);
    case identity_id::partial_theta:
      return detail::build_partial_theta<C>(side, w, pol);
    case identity_id::gf_r:
      if (side == formula_side::rhs) return detail::theta_times_inv_a_products<C>(w, pol);
      break;
    case identity_id::gf_a1:
      if (side == formula_side::rhs) return detail::a_progression_sum<C>(w, pol);
      break;
    case identity_id::gf_a2:
      if (side == formula_side::rhs) return detail::theta_tail_sum<C>(1, w, pol);
      break;
    case identity_id::s3_ssum:
      if (side == formula_side::rhs) return detail::build_s3_ssum_rhs<C>(w, pol);
      break;
    case identity_id::s3_b1sum:
      if (side == formula_side::rhs) return detail::build_s3_b1sum_rhs<C>(w, pol);
      break;
    case identity_id::s3_fixsum_corrected:
      if (side == formula_side::rhs) return detail::build_s3_fixsum_rhs<C>(w, pol);
      break;
  }
  throw usage_error("build_formula_side: left side of '" +
                    std::string(identity_lookup(id).name) +
                    "' is an enumeration sum, not a formula");
}

template <class C>
basic_series<C> substitute_b_as_neg_ac(const basic_series<C>& src, const window& target) {
  target.validate();
  if (target.c_max > src.win().b_max)
    throw usage_error("substitute_b_as_neg_ac: target c_max exceeds source b_max");
  if (target.q_max > src.win().q_max)
    throw usage_error("substitute_b_as_neg_ac: target q_max exceeds source q_max");
  std::vector<typename basic_series<C>::term> t;
  for (const auto& [k, c] : src.terms()) {
    expq e = unpack_exp(k);
    expq e2{e.q, e.a + e.b, 0, e.c + e.b};
    t.emplace_back(pack_exp(e2), e.b % 2 == 0 ? c : -c);
  }
  // a target a-degree j' at c-cell k has the single source (j'-k, k); it is
  // exact when j'-k lay in the source band for every admissible k <= c_max
  int v_lo = src.a_valid_lo() + target.c_max;
  int v_hi = src.a_valid_hi();
  long long true_min = src.a_true_min();
  long long true_max = src.a_true_max() >= k_a_unbounded
                           ? k_a_unbounded
                           : src.a_true_max() + src.win().b_max;
  return basic_series<C>::from_terms(target, std::move(t), v_lo, v_hi, true_min, true_max);
}

/// Exponent remap c -> -a on an a-free series: q^i c^m becomes (-1)^m q^i a^m.
/// a-degrees beyond the source c-box would refer to content the c-cut
/// removed, so the target band may not reach past it.
template <class C>
basic_series<C> substitute_c_as_neg_a(const basic_series<C>& src, const window& target) {
  target.validate();
  if (src.a_true_min() != 0 || src.a_true_max() != 0)
    throw usage_error("substitute_c_as_neg_a: source must be a-free");
  if (target.a_max > src.win().c_max)
    throw usage_error("substitute_c_as_neg_a: target a_max exceeds source c_max");
  if (target.q_max > src.win().q_max || target.b_max > src.win().b_max)
    throw usage_error("substitute_c_as_neg_a: target window exceeds source bounds");
  std::vector<typename basic_series<C>::term> t;
  for (const auto& [k, c] : src.terms()) {
    expq e = unpack_exp(k);
    t.emplace_back(pack_exp(expq{e.q, e.c, e.b, 0}), e.c % 2 == 0 ? c : -c);
  }
  return basic_series<C>::from_terms(target, std::move(t), target.a_min, target.a_max, 0,
                                     src.win().c_max);
}

/// Exponent remap a -> aq: q^i a^j becomes q^{i+j} a^j. Restricted to
/// sources with a nonnegative a-window so the q-shift never pulls content
/// in from beyond the source q-box.
template <class C>
basic_series<C> substitute_a_as_aq(const basic_series<C>& src, const window& target) {
  target.validate();
  if (src.win().a_min < 0)
    throw usage_error("substitute_a_as_aq: source window must have a_min >= 0");
  if (target.a_min < src.a_valid_lo() || target.a_max > src.a_valid_hi())
    throw usage_error("substitute_a_as_aq: target a-band exceeds the source validity band");
  if (target.q_max > src.win().q_max || target.b_max > src.win().b_max ||
      target.c_max > src.win().c_max)
    throw usage_error("substitute_a_as_aq: target window exceeds source bounds");
  std::vector<typename basic_series<C>::term> t;
  for (const auto& [k, c] : src.terms()) {
    expq e = unpack_exp(k);
    t.emplace_back(pack_exp(expq{e.q + e.a, e.a, e.b, e.c}), c);
  }
  return basic_series<C>::from_terms(target, std::move(t), target.a_min, target.a_max,
                                     src.a_true_min(), src.a_true_max());
}

}  // namespace qpi
