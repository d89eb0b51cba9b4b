#pragma once

#include <string>
#include <vector>

#include "qpi/builders.hpp"
#include "qpi/involution.hpp"
#include "qpi/partition.hpp"
#include "qpi/report.hpp"

namespace qpi {

/// (lambda, mu): lambda a staircase, mu arbitrary with trailing zeros
/// allowed and significant.
struct r_pair {
  partition lambda;
  partition mu;

  r_pair() = default;
  r_pair(partition l, partition m);

  friend bool operator==(const r_pair&, const r_pair&) = default;
  friend bool operator<(const r_pair& x, const r_pair& y) {
    if (!(x.lambda == y.lambda)) return x.lambda < y.lambda;
    return x.mu < y.mu;
  }

  long long weight() const { return lambda.weight() + mu.weight(); }
  std::string str() const { return "((" + lambda.render() + "),(" + mu.render() + "))"; }
};

enum class a_tag { a1, a2 };

/// (x, y) with x made of distinct positive parts. Tag a1: y arbitrary
/// (zeros allowed, possibly empty). Tag a2: y a nonempty staircase. Both
/// require largest(y) < smallest(x); (x, empty y) is canonically a1.
struct a_pair {
  partition x;
  partition y;
  a_tag tag = a_tag::a1;

  a_pair() = default;
  a_pair(partition x_, partition y_, a_tag tag_);

  friend bool operator==(const a_pair&, const a_pair&) = default;
  friend bool operator<(const a_pair& p, const a_pair& q) {
    if (p.tag != q.tag) return p.tag < q.tag;
    if (!(p.x == q.x)) return p.x < q.x;
    return p.y < q.y;
  }

  long long weight() const { return x.weight() + y.weight(); }
  std::string str() const {
    return std::string("((") + x.render() + "),(" + y.render() + ")," +
           (tag == a_tag::a1 ? "a1" : "a2") + ")";
  }
};

/// Adds lambda and mu part-by-part, keeps the first min(len, len) parts as
/// x and the leftover rows as y; tag records which side was longer.
a_pair phi(const r_pair& p);
r_pair phi_inverse(const a_pair& p);

/// All (lambda, mu) with weight <= weight_max and len(mu) <= length_max.
std::vector<r_pair> enumerate_r(long long weight_max, long long length_max);

/// All tagged (x, y) with weight <= weight_max and transferred length
/// statistic <= length_max: len(x)+len(y) for a1, len(x) for a2. a1 block
/// first, then a2, each in enumeration order of x then y.
std::vector<a_pair> enumerate_a(long long weight_max, long long length_max);

enum class a_bucket { a1_only, a2_only, a1_nonempty_y, a1_empty_y, total };

/// Sigma a^{len(mu)} c^{len(lambda)} q^{weight} over the slice.
template <class C>
basic_series<C> weighted_r_sum(long long weight_max, long long length_max, const window& w) {
  w.validate();
  if (w.q_max > weight_max)
    throw usage_error("weighted_r_sum: window q_max exceeds the enumerated weight bound");
  if (w.a_max > length_max)
    throw usage_error("weighted_r_sum: window a_max exceeds the enumerated length bound");
  std::vector<std::pair<expq, long long>> raw;
  for (const r_pair& p : enumerate_r(weight_max, length_max))
    raw.emplace_back(expq{static_cast<int>(p.weight()), static_cast<int>(p.mu.length()), 0,
                          static_cast<int>(p.lambda.length())},
                     1);
  return detail::series_from_exponent_sum<C>(w, raw);
}

/// Sigma over the chosen bucket with the transferred statistics:
/// a1 pairs weigh a^{len(x)+len(y)} c^{len(x)}, a2 pairs a^{len(x)} c^{len(x)+len(y)}.
template <class C>
basic_series<C> weighted_a_sum(long long weight_max, long long length_max, a_bucket which,
                               const window& w) {
  w.validate();
  if (w.q_max > weight_max)
    throw usage_error("weighted_a_sum: window q_max exceeds the enumerated weight bound");
  if (w.a_max > length_max)
    throw usage_error("weighted_a_sum: window a_max exceeds the enumerated length bound");
  std::vector<std::pair<expq, long long>> raw;
  for (const a_pair& p : enumerate_a(weight_max, length_max)) {
    bool take = false;
    switch (which) {
      case a_bucket::a1_only:
        take = p.tag == a_tag::a1;
        break;
      case a_bucket::a2_only:
        take = p.tag == a_tag::a2;
        break;
      case a_bucket::a1_nonempty_y:
        take = p.tag == a_tag::a1 && !p.y.empty();
        break;
      case a_bucket::a1_empty_y:
        take = p.tag == a_tag::a1 && p.y.empty();
        break;
      case a_bucket::total:
        take = true;
        break;
    }
    if (!take) continue;
    long long lx = p.x.length();
    long long ly = p.y.length();
    long long a_exp = p.tag == a_tag::a1 ? lx + ly : lx;
    long long c_exp = p.tag == a_tag::a1 ? lx : lx + ly;
    raw.emplace_back(expq{static_cast<int>(p.weight()), static_cast<int>(a_exp), 0,
                          static_cast<int>(c_exp)},
                     1);
  }
  return detail::series_from_exponent_sum<C>(w, raw);
}

/// Property audit of phi between the weight/length slices, including the
/// generating-sum bridges to the closed forms. The full first-bucket sum
/// against its printed closed form is expected to fail: the printed form
/// omits exactly the pairs with empty second component.
std::vector<check_outcome> audit_bijection(long long weight_max, long long length_max,
                                           const audit_options& opt = {});

/// The classical staircase shift: mu with exactly num_parts parts (zeros
/// allowed) of weight total maps through phi, paired with the staircase of
/// num_parts rows, onto distinct-part partitions of total + num_parts(num_parts+1)/2
/// with exactly num_parts parts. Verified by explicit set comparison.
check_outcome classic_staircase_check(long long total, long long num_parts,
                                      const audit_options& opt = {});

}  // namespace qpi
