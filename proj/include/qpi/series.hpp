#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "qpi/checked_int.hpp"
#include "qpi/errors.hpp"
#include "qpi/kernels.hpp"

namespace qpi {

/*
 * Truncation box for formal series in q, a, b, c. The q, b, c exponents are
 * never negative, so truncating them at the top is exact under convolution:
 * a coefficient with deg_b <= b_max only ever receives contributions from
 * factor terms with deg_b <= b_max. The a exponent is a Laurent exponent
 * (negative powers enter through explicit a^{-n} monomials), so a-truncation
 * can lose information that multiplication would shift back into the box.
 * Each series therefore carries an a-validity interval; see basic_series.
 */
struct window {
  int q_max = 0;
  int a_min = 0;
  int a_max = 0;
  int b_max = 0;
  int c_max = 0;

  void validate() const {
    if (q_max < 0 || b_max < 0 || c_max < 0)
      throw usage_error("window: q_max, b_max, c_max must be >= 0");
    if (a_min > a_max) throw usage_error("window: a_min exceeds a_max");
    if (q_max > 16000 || b_max > 16000 || c_max > 16000 || a_min < -16000 || a_max > 16000)
      throw usage_error("window: exponent bound out of supported range");
  }

  bool covers(const window& inner) const {
    return inner.q_max <= q_max && inner.b_max <= b_max && inner.c_max <= c_max &&
           inner.a_min >= a_min && inner.a_max <= a_max;
  }

  friend bool operator==(const window&, const window&) = default;
};

/// Exponent quadruple of one monomial q^q a^a b^b c^c.
struct expq {
  int q = 0;
  int a = 0;
  int b = 0;
  int c = 0;

  friend bool operator==(const expq&, const expq&) = default;
};

// Packed key whose uint64 order equals lexicographic (q, a, b, c) ascending.
inline std::uint64_t pack_exp(const expq& e) {
  return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.q)) << 48) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.a + 32768)) << 32) |
         (static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.b)) << 16) |
         static_cast<std::uint64_t>(static_cast<std::uint32_t>(e.c));
}

inline expq unpack_exp(std::uint64_t key) {
  expq e;
  e.q = static_cast<int>((key >> 48) & 0xffff);
  e.a = static_cast<int>((key >> 32) & 0xffff) - 32768;
  e.b = static_cast<int>((key >> 16) & 0xffff);
  e.c = static_cast<int>(key & 0xffff);
  return e;
}

/// Sentinel for "certified a-support has no finite upper bound".
inline constexpr long long k_a_unbounded = std::numeric_limits<long long>::max() / 4;

namespace detail {

template <class C>
using term_vec = std::vector<std::pair<std::uint64_t, C>>;

template <class C>
term_vec<C> map_to_sorted(std::unordered_map<std::uint64_t, C>&& acc) {
  term_vec<C> out;
  out.reserve(acc.size());
  for (auto& kv : acc)
    if (!kv.second.is_zero()) out.emplace_back(kv.first, kv.second);
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

// Convolution of two sorted term lists, keeping only exponents inside the
// window box and the result's a-validity band. Serial reference kernel.
template <class C>
term_vec<C> convolve_serial(const term_vec<C>& f, const term_vec<C>& g, const window& w,
                            int out_alo, int out_ahi) {
  std::unordered_map<std::uint64_t, C> acc;
  acc.reserve(f.size() + g.size());
  for (const auto& [kf, cf] : f) {
    expq ef = unpack_exp(kf);
    for (const auto& [kg, cg] : g) {
      expq eg = unpack_exp(kg);
      int q = ef.q + eg.q;
      if (q > w.q_max) continue;
      int b = ef.b + eg.b;
      if (b > w.b_max) continue;
      int c = ef.c + eg.c;
      if (c > w.c_max) continue;
      int a = ef.a + eg.a;
      if (a < w.a_min || a > w.a_max || a < out_alo || a > out_ahi) continue;
      acc[pack_exp(expq{q, a, b, c})] += cf * cg;
    }
  }
  return map_to_sorted(std::move(acc));
}

// OpenMP twin of convolve_serial: f's terms are chunked across threads and
// the thread-local exact-integer maps are merged afterwards, so the result
// is identical regardless of schedule.
template <class C>
term_vec<C> convolve_parallel(const term_vec<C>& f, const term_vec<C>& g, const window& w,
                              int out_alo, int out_ahi) {
#ifndef _OPENMP
  return convolve_serial(f, g, w, out_alo, out_ahi);
#else
  int threads = hardware_threads();
  std::vector<std::unordered_map<std::uint64_t, C>> local(static_cast<size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    auto& acc = local[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
    for (long long i = 0; i < static_cast<long long>(f.size()); ++i) {
      expq ef = unpack_exp(f[static_cast<size_t>(i)].first);
      const C& cf = f[static_cast<size_t>(i)].second;
      for (const auto& [kg, cg] : g) {
        expq eg = unpack_exp(kg);
        int q = ef.q + eg.q;
        if (q > w.q_max) continue;
        int b = ef.b + eg.b;
        if (b > w.b_max) continue;
        int c = ef.c + eg.c;
        if (c > w.c_max) continue;
        int a = ef.a + eg.a;
        if (a < w.a_min || a > w.a_max || a < out_alo || a > out_ahi) continue;
        acc[pack_exp(expq{q, a, b, c})] += cf * cg;
      }
    }
  }
  std::unordered_map<std::uint64_t, C> merged;
  for (auto& m : local)
    for (auto& kv : m) merged[kv.first] += kv.second;
  return map_to_sorted(std::move(merged));
#endif
}

inline constexpr std::size_t k_parallel_mul_threshold = 1u << 14;

}  // namespace detail

/*
 * Windowed formal series with exact integer coefficients.
 *
 * Stored terms always lie inside the window box and inside the a-validity
 * band [a_valid_lo, a_valid_hi]: on that band the stored coefficient equals
 * the coefficient of the untruncated series (per (q,b,c) cell of the box);
 * outside it nothing is stored and nothing is claimed.
 *
 * Two certified bounds on the *untruncated* a-support ride along:
 * a_true_min (always finite) and a_true_max (may be k_a_unbounded, e.g. for
 * 1/(1-a)). They drive the validity algebra of mul: content of a factor
 * that was cut off above its validity band can only land at result degrees
 * >= (cut edge) + (other factor's minimal true degree), and symmetrically
 * below. Builders widen their working window so that after all shifts the
 * user-requested window is fully valid, then restrict.
 */
template <class C>
class basic_series {
 public:
  using coef_type = C;
  using term = std::pair<std::uint64_t, C>;

  basic_series() = default;

  static basic_series zero(const window& w) {
    w.validate();
    basic_series s;
    s.win_ = w;
    s.valid_lo_ = w.a_min;
    s.valid_hi_ = w.a_max;
    s.a_true_min_ = 0;
    s.a_true_max_ = 0;
    return s;
  }

  static basic_series monomial(C coefficient, const expq& e, const window& w) {
    w.validate();
    if (coefficient.is_zero()) return zero(w);
    if (e.q < 0 || e.b < 0 || e.c < 0) throw domain_error("monomial: negative q/b/c exponent");
    if (e.q > w.q_max || e.b > w.b_max || e.c > w.c_max || e.a < w.a_min || e.a > w.a_max)
      throw domain_error("monomial: exponent outside window");
    basic_series s = zero(w);
    s.terms_.emplace_back(pack_exp(e), coefficient);
    s.a_true_min_ = e.a;
    s.a_true_max_ = e.a;
    return s;
  }

  static basic_series one(const window& w) { return monomial(C(1), expq{}, w); }

  /// Escape hatch for enumeration-backed sums and exponent remaps: the
  /// caller certifies the metadata. Terms are filtered to the window and
  /// validity band, summed per key, and sorted.
  static basic_series from_terms(const window& w, std::vector<term> terms, int valid_lo,
                                 int valid_hi, long long a_true_min, long long a_true_max) {
    w.validate();
    basic_series s;
    s.win_ = w;
    s.valid_lo_ = std::max(valid_lo, w.a_min);
    s.valid_hi_ = std::min(valid_hi, w.a_max);
    s.a_true_min_ = a_true_min;
    s.a_true_max_ = a_true_max;
    std::unordered_map<std::uint64_t, C> acc;
    acc.reserve(terms.size());
    for (auto& [k, c] : terms) {
      expq e = unpack_exp(k);
      if (e.q > w.q_max || e.b > w.b_max || e.c > w.c_max) continue;
      if (e.a < s.valid_lo_ || e.a > s.valid_hi_) continue;
      acc[k] += c;
    }
    s.terms_ = detail::map_to_sorted(std::move(acc));
    return s;
  }

  const window& win() const { return win_; }
  int a_valid_lo() const { return valid_lo_; }
  int a_valid_hi() const { return valid_hi_; }
  long long a_true_min() const { return a_true_min_; }
  long long a_true_max() const { return a_true_max_; }
  const std::vector<term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  C coefficient(const expq& e) const {
    std::uint64_t k = pack_exp(e);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                               [](const term& t, std::uint64_t key) { return t.first < key; });
    if (it != terms_.end() && it->first == k) return it->second;
    return C(0);
  }

  friend basic_series add(const basic_series& f, const basic_series& g) {
    if (!(f.win_ == g.win_)) throw usage_error("add: window mismatch");
    basic_series s;
    s.win_ = f.win_;
    s.valid_lo_ = std::max(f.valid_lo_, g.valid_lo_);
    s.valid_hi_ = std::min(f.valid_hi_, g.valid_hi_);
    s.a_true_min_ = std::min(f.a_true_min_, g.a_true_min_);
    s.a_true_max_ = std::max(f.a_true_max_, g.a_true_max_);
    // merge two sorted lists, trimming to the intersected validity band
    auto push = [&s](std::uint64_t k, C c) {
      if (c.is_zero()) return;
      int adeg = unpack_exp(k).a;
      if (adeg < s.valid_lo_ || adeg > s.valid_hi_) return;
      s.terms_.emplace_back(k, c);
    };
    size_t i = 0, j = 0;
    while (i < f.terms_.size() || j < g.terms_.size()) {
      if (j == g.terms_.size() || (i < f.terms_.size() && f.terms_[i].first < g.terms_[j].first)) {
        push(f.terms_[i].first, f.terms_[i].second);
        ++i;
      } else if (i == f.terms_.size() || g.terms_[j].first < f.terms_[i].first) {
        push(g.terms_[j].first, g.terms_[j].second);
        ++j;
      } else {
        push(f.terms_[i].first, f.terms_[i].second + g.terms_[j].second);
        ++i;
        ++j;
      }
    }
    return s;
  }

  friend basic_series negate(const basic_series& f) {
    basic_series s = f;
    for (auto& t : s.terms_) t.second = -t.second;
    return s;
  }

  friend basic_series sub(const basic_series& f, const basic_series& g) {
    return add(f, negate(g));
  }

  friend basic_series scalar_mul(const basic_series& f, C k) {
    if (k.is_zero()) {
      basic_series s = f;
      s.terms_.clear();
      return s;
    }
    basic_series s = f;
    for (auto& t : s.terms_) t.second = t.second * k;
    return s;
  }

  friend basic_series mul(const basic_series& f, const basic_series& g,
                          exec_policy policy = exec_policy::automatic) {
    if (!(f.win_ == g.win_)) throw usage_error("mul: window mismatch");
    const window& w = f.win_;
    basic_series s;
    s.win_ = w;
    s.a_true_min_ = f.a_true_min_ + g.a_true_min_;
    s.a_true_max_ = (f.a_true_max_ >= k_a_unbounded || g.a_true_max_ >= k_a_unbounded)
                        ? k_a_unbounded
                        : f.a_true_max_ + g.a_true_max_;

    // Validity: a factor cut off above its band contaminates result degrees
    // >= band edge + 1 + (other factor's minimal true a-degree); mirrored at
    // the bottom with the other factor's maximal true a-degree.
    long long hi = w.a_max;
    if (f.a_true_max_ > f.valid_hi_) hi = std::min(hi, f.valid_hi_ + g.a_true_min_);
    if (g.a_true_max_ > g.valid_hi_) hi = std::min(hi, g.valid_hi_ + f.a_true_min_);
    long long lo = w.a_min;
    if (f.a_true_min_ < f.valid_lo_)
      lo = std::max(lo, g.a_true_max_ >= k_a_unbounded ? k_a_unbounded
                                                       : f.valid_lo_ + g.a_true_max_);
    if (g.a_true_min_ < g.valid_lo_)
      lo = std::max(lo, f.a_true_max_ >= k_a_unbounded ? k_a_unbounded
                                                       : g.valid_lo_ + f.a_true_max_);
    s.valid_lo_ = static_cast<int>(std::min<long long>(lo, std::numeric_limits<int>::max() / 2));
    s.valid_hi_ = static_cast<int>(std::max<long long>(hi, std::numeric_limits<int>::min() / 2));

    if (s.valid_lo_ > s.valid_hi_ || f.terms_.empty() || g.terms_.empty()) return s;

    std::size_t work = f.terms_.size() * g.terms_.size();
    if (use_parallel(policy, work, detail::k_parallel_mul_threshold))
      s.terms_ = detail::convolve_parallel(f.terms_, g.terms_, w, s.valid_lo_, s.valid_hi_);
    else
      s.terms_ = detail::convolve_serial(f.terms_, g.terms_, w, s.valid_lo_, s.valid_hi_);
    return s;
  }

  /// Narrow to a sub-window. Dropping stored content at the edges is exact
  /// for everything inside the new box, so validity just intersects.
  friend basic_series restrict_to(const basic_series& f, const window& w2) {
    w2.validate();
    if (!f.win_.covers(w2)) throw usage_error("restrict_to: target window not inside source");
    basic_series s;
    s.win_ = w2;
    s.valid_lo_ = std::max(f.valid_lo_, w2.a_min);
    s.valid_hi_ = std::min(f.valid_hi_, w2.a_max);
    s.a_true_min_ = f.a_true_min_;
    s.a_true_max_ = f.a_true_max_;
    for (const auto& [k, c] : f.terms_) {
      expq e = unpack_exp(k);
      if (e.q > w2.q_max || e.b > w2.b_max || e.c > w2.c_max) continue;
      if (e.a < s.valid_lo_ || e.a > s.valid_hi_) continue;
      s.terms_.emplace_back(k, c);
    }
    return s;
  }

  /// Σ_{j>=0} m^j truncated to the window; sign is the coefficient of the
  /// monomial m and must be ±1 (covers 1/(1-m) and 1/(1+m)). Terminates
  /// because either deg_q(m) >= 1 or m is the pure monomial a.
  static basic_series geometric_inverse(const expq& m, const window& w, int sign = 1) {
    w.validate();
    if (sign != 1 && sign != -1) throw domain_error("geometric_inverse: coefficient must be +-1");
    if (m == expq{}) throw domain_error("geometric_inverse: monomial must be nonzero");
    if (m.q < 0 || m.b < 0 || m.c < 0) throw domain_error("geometric_inverse: negative q/b/c exponent");
    bool pure_a = (m.q == 0 && m.b == 0 && m.c == 0 && m.a == 1);
    if (m.q == 0 && !pure_a)
      throw domain_error("geometric_inverse: deg_q = 0 monomial other than a does not terminate");

    basic_series s = zero(w);
    long long j_stop;  // last expansion index alive in the exact (q,b,c) box
    if (pure_a) {
      j_stop = std::max<long long>(w.a_max, -1);
      s.a_true_min_ = 0;
      s.a_true_max_ = k_a_unbounded;
    } else {
      j_stop = w.q_max / m.q;
      if (m.b > 0) j_stop = std::min<long long>(j_stop, w.b_max / m.b);
      if (m.c > 0) j_stop = std::min<long long>(j_stop, w.c_max / m.c);
      s.a_true_min_ = std::min<long long>(0, static_cast<long long>(m.a) * j_stop);
      s.a_true_max_ = std::max<long long>(0, static_cast<long long>(m.a) * j_stop);
    }
    for (long long j = 0; j <= j_stop; ++j) {
      expq e{static_cast<int>(m.q * j), static_cast<int>(m.a * j), static_cast<int>(m.b * j),
             static_cast<int>(m.c * j)};
      if (e.a < w.a_min || e.a > w.a_max) continue;  // a may drift out; keep scanning j
      C c = (sign == 1 || j % 2 == 0) ? C(1) : C(-1);
      s.terms_.emplace_back(pack_exp(e), c);
    }
    std::sort(s.terms_.begin(), s.terms_.end(),
              [](const term& x, const term& y) { return x.first < y.first; });
    return s;
  }

  /// Sum over the a-degrees of every (q,b,c) cell: evaluation at a = 1.
  /// Only legal when the certified true a-support is finite and entirely
  /// inside the validity band, i.e. nothing was cut off.
  friend basic_series eval_a_one(const basic_series& f) {
    if (f.a_true_max_ >= k_a_unbounded)
      throw usage_error("eval_a_one: a-support not certified finite");
    if (f.a_true_min_ < f.valid_lo_ || f.a_true_max_ > f.valid_hi_)
      throw usage_error("eval_a_one: a-support exceeds the validity band");
    basic_series s = zero(f.win_);
    if (f.win_.a_min > 0 || f.win_.a_max < 0)
      throw usage_error("eval_a_one: window does not contain a-degree 0");
    std::unordered_map<std::uint64_t, C> acc;
    for (const auto& [k, c] : f.terms_) {
      expq e = unpack_exp(k);
      e.a = 0;
      acc[pack_exp(e)] += c;
    }
    s.terms_ = detail::map_to_sorted(std::move(acc));
    return s;
  }

 private:
  window win_{};
  int valid_lo_ = 0;
  int valid_hi_ = 0;
  long long a_true_min_ = 0;
  long long a_true_max_ = 0;
  std::vector<term> terms_;
};

using series = basic_series<coef>;

/// ∏ over k in [k_first, k_last] of factor(k); pass no k_last for an
/// infinite product, in which case each instantiated factor must equal
/// 1 + (terms of q-degree >= k) so that factors beyond q_max are exactly 1.
template <class C>
basic_series<C> product_over(int k_first, std::optional<int> k_last,
                             const std::function<basic_series<C>(int)>& factor, const window& w,
                             exec_policy policy = exec_policy::automatic) {
  bool infinite = !k_last.has_value();
  int stop = infinite ? w.q_max : *k_last;
  basic_series<C> acc = basic_series<C>::one(w);
  for (int k = k_first; k <= stop; ++k) {
    basic_series<C> f = factor(k);
    if (infinite) {
      basic_series<C> deviation = sub(f, basic_series<C>::one(w));
      for (const auto& [key, c] : deviation.terms()) {
        if (unpack_exp(key).q < k)
          throw usage_error("product_over: infinite-range factor at k=" + std::to_string(k) +
                            " has q-degree below k");
      }
    }
    acc = mul(acc, f, policy);
  }
  return acc;
}

struct mismatch {
  expq at;
  long long lhs = 0;
  long long rhs = 0;
};

struct compare_result {
  std::vector<mismatch> mismatches;
  long long monomials_compared = 0;
  bool equal() const { return mismatches.empty(); }
};

template <class C>
compare_result compare(const basic_series<C>& f, const basic_series<C>& g, const window& on) {
  on.validate();
  if (!f.win().covers(on) || !g.win().covers(on))
    throw usage_error("compare: comparison window exceeds an operand's window");
  if (on.a_min < f.a_valid_lo() || on.a_max > f.a_valid_hi() || on.a_min < g.a_valid_lo() ||
      on.a_max > g.a_valid_hi())
    throw usage_error("compare: comparison window exceeds an a-validity interval");

  compare_result r;
  auto inside = [&on](const expq& e) {
    return e.q <= on.q_max && e.b <= on.b_max && e.c <= on.c_max && e.a >= on.a_min &&
           e.a <= on.a_max;
  };
  const auto& ft = f.terms();
  const auto& gt = g.terms();
  size_t i = 0, j = 0;
  auto emit = [&r](const expq& e, C lhs, C rhs) {
    ++r.monomials_compared;
    if (lhs != rhs) {
      // Raw values fit in long long for every supported coefficient type in
      // practice; the checked type would have trapped long before this.
      r.mismatches.push_back(
          mismatch{e, static_cast<long long>(lhs.raw()), static_cast<long long>(rhs.raw())});
    }
  };
  while (i < ft.size() || j < gt.size()) {
    if (j == gt.size() || (i < ft.size() && ft[i].first < gt[j].first)) {
      expq e = unpack_exp(ft[i].first);
      if (inside(e)) emit(e, ft[i].second, C(0));
      ++i;
    } else if (i == ft.size() || gt[j].first < ft[i].first) {
      expq e = unpack_exp(gt[j].first);
      if (inside(e)) emit(e, C(0), gt[j].second);
      ++j;
    } else {
      expq e = unpack_exp(ft[i].first);
      if (inside(e)) emit(e, ft[i].second, gt[j].second);
      ++i;
      ++j;
    }
  }
  return r;
}

/// One line per stored monomial: "deg_q<TAB>deg_a<TAB>deg_b<TAB>deg_c<TAB>coef",
/// sorted by (deg_q, deg_a, deg_b, deg_c) ascending (the storage order).
template <class C>
std::string dump_tsv(const basic_series<C>& f) {
  std::string out = "deg_q\tdeg_a\tdeg_b\tdeg_c\tcoef\n";
  for (const auto& [k, c] : f.terms()) {
    expq e = unpack_exp(k);
    out += std::to_string(e.q);
    out.push_back('\t');
    out += std::to_string(e.a);
    out.push_back('\t');
    out += std::to_string(e.b);
    out.push_back('\t');
    out += std::to_string(e.c);
    out.push_back('\t');
    out += c.str();
    out.push_back('\n');
  }
  return out;
}

}  // namespace qpi
