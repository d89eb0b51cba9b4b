#pragma once

#include <string>
#include <vector>

#include "qpi/builders.hpp"
#include "qpi/partition.hpp"
#include "qpi/report.hpp"
#include "qpi/series.hpp"

namespace qpi {

/// (lambda, mu, gamma) with lambda a staircase (triangular) partition and
/// mu, gamma built from strictly positive parts.
struct triple {
  partition lambda;
  partition mu;
  partition gamma;

  triple() = default;
  triple(partition l, partition m, partition g);

  friend bool operator==(const triple&, const triple&) = default;
  friend bool operator<(const triple& x, const triple& y) {
    if (!(x.lambda == y.lambda)) return x.lambda < y.lambda;
    if (!(x.mu == y.mu)) return x.mu < y.mu;
    return x.gamma < y.gamma;
  }

  long long weight() const { return lambda.weight() + mu.weight() + gamma.weight(); }
  std::string str() const;
};

/// 1: identity branch; 2: peel the largest lambda part into gamma;
/// 3: grow lambda and peel gamma's largest part into mu.
int psi_case(const triple& t);
triple psi(const triple& t);

/// ell(mu) - ell(lambda) - 1.
long long statistic_f(const triple& t);

enum class triple_class { fixed, b1_printed, b1_corrected, b2, generic };

/// All classes the triple belongs to (b1_printed implies b1_corrected);
/// {generic} when none apply.
std::vector<triple_class> classify(const triple& t);
const char* triple_class_name(triple_class c);

/// All triples of weight <= weight_max: lambda blocks in weight order, then
/// mu and gamma each in weight order refined by the partition enumeration
/// order.
std::vector<triple> enumerate_triples(long long weight_max);

enum class triple_selector { all, fixed, b1_printed, b1_corrected, b2 };

enum class triple_weighting {
  eq3_weight,             // (-1)^{ell lambda} b^{ell lambda + ell gamma} q^{weight}
  fix_weight,             // b^{ell lambda + ell gamma} q^{weight}
  s3_weight,              // (-1)^{ell lambda} a^f b^{ell lambda + ell gamma} q^{weight}
  s3_fix_weight,          // a^f b^{ell lambda + ell gamma} q^{weight}
  s3_fix_weight_printed,  // a^{ell mu - ell lambda} variant audited against the corrected one
};

bool triple_selected(const triple& t, triple_selector sel);

namespace detail {

/// Shared assembler for enumeration-backed sums: filters to the window box,
/// certifies the true a-support bounds from the pre-band term set.
template <class C>
basic_series<C> series_from_exponent_sum(const window& w,
                                         const std::vector<std::pair<expq, long long>>& raw) {
  std::vector<typename basic_series<C>::term> t;
  t.reserve(raw.size());
  long long lo = 0, hi = 0;
  bool any = false;
  for (const auto& [e, c] : raw) {
    if (e.q > w.q_max || e.b > w.b_max || e.c > w.c_max) continue;
    if (!any) {
      lo = hi = e.a;
      any = true;
    } else {
      lo = std::min<long long>(lo, e.a);
      hi = std::max<long long>(hi, e.a);
    }
    t.emplace_back(pack_exp(e), C(c));
  }
  return basic_series<C>::from_terms(w, std::move(t), w.a_min, w.a_max, lo, hi);
}

}  // namespace detail

template <class C>
basic_series<C> weighted_triple_sum(triple_selector sel, triple_weighting wt,
                                    long long weight_max, const window& w) {
  w.validate();
  if (w.q_max > weight_max)
    throw usage_error("weighted_triple_sum: window q_max " + std::to_string(w.q_max) +
                      " exceeds the enumerated weight bound " + std::to_string(weight_max));
  std::vector<std::pair<expq, long long>> raw;
  for (const triple& t : enumerate_triples(weight_max)) {
    if (!triple_selected(t, sel)) continue;
    long long ll = t.lambda.length();
    long long lm = t.mu.length();
    long long lg = t.gamma.length();
    long long sign = 1;
    long long a_exp = 0;
    switch (wt) {
      case triple_weighting::eq3_weight:
        sign = ll % 2 == 0 ? 1 : -1;
        break;
      case triple_weighting::fix_weight:
        break;
      case triple_weighting::s3_weight:
        sign = ll % 2 == 0 ? 1 : -1;
        a_exp = lm - ll - 1;
        break;
      case triple_weighting::s3_fix_weight:
        a_exp = lm - ll - 1;
        break;
      case triple_weighting::s3_fix_weight_printed:
        a_exp = lm - ll;
        break;
    }
    raw.emplace_back(expq{static_cast<int>(t.weight()), static_cast<int>(a_exp),
                          static_cast<int>(ll + lg), 0},
                     sign);
  }
  return detail::series_from_exponent_sum<C>(w, raw);
}

struct audit_options {
  long long max_counterexamples = 20;
  exec_policy policy = exec_policy::automatic;
};

/// Property audit of psi over all triples of weight <= weight_max. Two
/// checks are expected to fail and are flagged so: the printed small-side
/// set does not cover b2, and the printed fixed-set exponent misses its own
/// right side by an a-shift.
std::vector<check_outcome> audit_involution(long long weight_max, const audit_options& opt = {});

}  // namespace qpi
