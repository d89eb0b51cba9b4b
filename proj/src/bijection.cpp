#include "qpi/bijection.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qpi/errors.hpp"

namespace qpi {

r_pair::r_pair(partition l, partition m) : lambda(std::move(l)), mu(std::move(m)) {
  if (!is_member(lambda, partition_class::triangular))
    throw domain_error("r_pair: lambda must be a staircase partition, got (" + lambda.render() +
                       ")");
}

a_pair::a_pair(partition x_, partition y_, a_tag tag_)
    : x(std::move(x_)), y(std::move(y_)), tag(tag_) {
  if (!is_member(x, partition_class::distinct_positive))
    throw domain_error("a_pair: x must have distinct positive parts, got (" + x.render() + ")");
  if (tag == a_tag::a2 && (y.empty() || !is_member(y, partition_class::triangular)))
    throw domain_error("a_pair: a2 second component must be a nonempty staircase, got (" +
                       y.render() + ")");
  if (y.largest() >= x.smallest())
    throw domain_error("a_pair: largest part of y must lie below smallest part of x, got " +
                       std::to_string(y.largest()) + " vs " + std::to_string(x.smallest()));
}

a_pair phi(const r_pair& p) {
  size_t k = static_cast<size_t>(std::min(p.lambda.length(), p.mu.length()));
  partition sum = add_pointwise(p.lambda, p.mu);
  std::vector<long long> xs(sum.parts().begin(), sum.parts().begin() + static_cast<long>(k));
  std::vector<long long> ys(sum.parts().begin() + static_cast<long>(k), sum.parts().end());
  a_tag tag = p.lambda.length() <= p.mu.length() ? a_tag::a1 : a_tag::a2;
  return a_pair(partition(std::move(xs)), partition(std::move(ys)), tag);
}

r_pair phi_inverse(const a_pair& p) {
  long long lx = p.x.length();
  long long rows = p.tag == a_tag::a1 ? lx : lx + p.y.length();
  std::vector<long long> mu;
  mu.reserve(static_cast<size_t>(lx) + p.y.parts().size());
  for (long long j = 0; j < lx; ++j)
    mu.push_back(p.x.parts()[static_cast<size_t>(j)] - (rows - j));
  if (p.tag == a_tag::a1)
    mu.insert(mu.end(), p.y.parts().begin(), p.y.parts().end());
  return r_pair(triangular(rows), partition(std::move(mu)));
}

std::vector<r_pair> enumerate_r(long long weight_max, long long length_max) {
  if (weight_max < 0 || length_max < 0)
    throw usage_error("enumerate_r: negative slice bound");
  std::vector<r_pair> out;
  for (const auto& l : enumerate_partitions(weight_max, partition_class::triangular))
    for (const auto& m : enumerate_partitions(weight_max - l.weight(),
                                              partition_class::zeros_allowed, length_max))
      out.emplace_back(l, m);
  return out;
}

std::vector<a_pair> enumerate_a(long long weight_max, long long length_max) {
  if (weight_max < 0 || length_max < 0)
    throw usage_error("enumerate_a: negative slice bound");
  auto xs = enumerate_partitions(weight_max, partition_class::distinct_positive);
  std::vector<a_pair> out;
  for (const auto& x : xs) {
    if (x.length() > length_max) continue;
    for (const auto& y : enumerate_partitions(weight_max - x.weight(),
                                              partition_class::zeros_allowed,
                                              length_max - x.length()))
      if (y.largest() < x.smallest()) out.emplace_back(x, y, a_tag::a1);
  }
  for (const auto& x : xs) {
    if (x.length() > length_max) continue;
    for (long long m = 1; triangle_weight(m) <= weight_max - x.weight(); ++m)
      if (m < x.smallest()) out.emplace_back(x, triangular(m), a_tag::a2);
  }
  return out;
}

namespace {

struct witness_log {
  long long cap;
  long long total = 0;
  std::vector<std::string> entries;

  void add(const std::string& s) {
    ++total;
    if (static_cast<long long>(entries.size()) < cap) entries.push_back(s);
  }

  void seal(check_outcome& c) {
    c.pass = total == 0;
    c.counterexamples = std::move(entries);
    c.counterexample_total = total;
  }
};

}  // namespace

std::vector<check_outcome> audit_bijection(long long weight_max, long long length_max,
                                           const audit_options& opt) {
  auto rs = enumerate_r(weight_max, length_max);
  auto as = enumerate_a(weight_max, length_max);
  std::map<a_pair, size_t> a_index;
  for (size_t i = 0; i < as.size(); ++i) a_index.emplace(as[i], i);

  std::vector<check_outcome> out;
  long long n = static_cast<long long>(rs.size());

  check_outcome in_slice{.name = "phi-image-in-slice", .examined = n};
  check_outcome injective{.name = "phi-injective", .examined = n};
  check_outcome roundtrip{.name = "phi-roundtrip", .examined = n};
  check_outcome weight_ok{.name = "weight-conserved", .examined = n};
  check_outcome stat_a1{.name = "statistic-transfer-a1", .examined = n};
  check_outcome stat_a2{.name = "statistic-transfer-a2", .examined = n};
  check_outcome y_below{.name = "y-top-below-x-bottom", .examined = n};
  witness_log in_slice_w{opt.max_counterexamples}, injective_w{opt.max_counterexamples},
      roundtrip_w{opt.max_counterexamples}, weight_w{opt.max_counterexamples},
      a1_w{opt.max_counterexamples}, a2_w{opt.max_counterexamples},
      below_w{opt.max_counterexamples};

  std::vector<long long> hit(as.size(), -1);
  for (size_t i = 0; i < rs.size(); ++i) {
    const r_pair& r = rs[i];
    a_pair img = phi(r);
    auto it = a_index.find(img);
    if (it == a_index.end()) {
      in_slice_w.add(r.str() + " -> " + img.str());
    } else {
      if (hit[it->second] >= 0)
        injective_w.add(rs[static_cast<size_t>(hit[it->second])].str() + " and " + r.str() +
                        " -> " + img.str());
      else
        hit[it->second] = static_cast<long long>(i);
    }
    if (!(phi_inverse(img) == r)) roundtrip_w.add(r.str() + " -> " + img.str() + " -> " +
                                                  phi_inverse(img).str());
    if (img.weight() != r.weight())
      weight_w.add(r.str() + " weight " + std::to_string(r.weight()) + " -> " +
                   std::to_string(img.weight()));
    long long lx = img.x.length(), ly = img.y.length();
    if (img.tag == a_tag::a1) {
      if (lx + ly != r.mu.length() || lx != r.lambda.length())
        a1_w.add(r.str() + " -> " + img.str());
    } else {
      if (lx + ly != r.lambda.length() || lx != r.mu.length())
        a2_w.add(r.str() + " -> " + img.str());
    }
    if (img.y.largest() >= img.x.smallest()) below_w.add(img.str());
  }
  in_slice_w.seal(in_slice);
  injective_w.seal(injective);
  roundtrip_w.seal(roundtrip);
  weight_w.seal(weight_ok);
  a1_w.seal(stat_a1);
  a2_w.seal(stat_a2);
  below_w.seal(y_below);

  check_outcome surjective{.name = "phi-surjective",
                           .examined = static_cast<long long>(as.size())};
  {
    witness_log w{opt.max_counterexamples};
    for (size_t i = 0; i < as.size(); ++i)
      if (hit[i] < 0) w.add("not reached: " + as[i].str());
    w.seal(surjective);
  }

  check_outcome inv_roundtrip{.name = "phi-inverse-roundtrip",
                              .examined = static_cast<long long>(as.size())};
  {
    witness_log w{opt.max_counterexamples};
    for (const a_pair& a : as) {
      r_pair r = phi_inverse(a);
      if (!(phi(r) == a)) w.add(a.str() + " -> " + r.str() + " -> " + phi(r).str());
    }
    w.seal(inv_roundtrip);
  }

  out.push_back(std::move(in_slice));
  out.push_back(std::move(injective));
  out.push_back(std::move(roundtrip));
  out.push_back(std::move(surjective));
  out.push_back(std::move(inv_roundtrip));
  out.push_back(std::move(weight_ok));
  out.push_back(std::move(stat_a1));
  out.push_back(std::move(stat_a2));
  out.push_back(std::move(y_below));

  // generating-sum bridges to the closed forms
  long long c_cap = 0;
  for (long long i = 0; triangle_weight(i) <= weight_max; ++i)
    for (long long j = 0; triangle_weight(i) + triangle_weight(j) <= weight_max; ++j)
      c_cap = std::max(c_cap, i + j);
  window w{static_cast<int>(weight_max), 0, static_cast<int>(length_max), 0,
           static_cast<int>(c_cap)};

  auto r_sum = weighted_r_sum<coef>(weight_max, length_max, w);
  auto total = weighted_a_sum<coef>(weight_max, length_max, a_bucket::total, w);
  auto a1_full = weighted_a_sum<coef>(weight_max, length_max, a_bucket::a1_only, w);
  auto a1_body = weighted_a_sum<coef>(weight_max, length_max, a_bucket::a1_nonempty_y, w);
  auto a1_gap = weighted_a_sum<coef>(weight_max, length_max, a_bucket::a1_empty_y, w);
  auto a2_sum = weighted_a_sum<coef>(weight_max, length_max, a_bucket::a2_only, w);

  out.push_back(check_from_comparison(
      "a-total-equals-r-sum", compare(total, r_sum, w), opt.max_counterexamples));
  out.push_back(check_from_comparison(
      "gf-r-bridge",
      compare(r_sum, build_formula_side<coef>(identity_id::gf_r, formula_side::rhs, w, opt.policy),
              w),
      opt.max_counterexamples));
  out.push_back(check_from_comparison(
      "gf-a1-bucket-bridge",
      compare(a1_body,
              build_formula_side<coef>(identity_id::gf_a1, formula_side::rhs, w, opt.policy), w),
      opt.max_counterexamples));
  out.push_back(check_from_comparison(
      "empty-y-gap-equals-theta-product",
      compare(a1_gap, detail::ac_tail<coef>(0, w, opt.policy), w), opt.max_counterexamples));
  out.push_back(check_from_comparison(
      "gf-a2-bridge",
      compare(a2_sum,
              build_formula_side<coef>(identity_id::gf_a2, formula_side::rhs, w, opt.policy), w),
      opt.max_counterexamples));
  auto a1_printed = check_from_comparison(
      "a1-full-sum-vs-printed-form",
      compare(a1_full,
              build_formula_side<coef>(identity_id::gf_a1, formula_side::rhs, w, opt.policy), w),
      opt.max_counterexamples, true);
  a1_printed.note =
      "the printed closed form generates only pairs with nonempty second component; the "
      "difference is the product over k>=1 of (1+acq^k)";
  out.push_back(std::move(a1_printed));

  return out;
}

check_outcome classic_staircase_check(long long total, long long num_parts,
                                      const audit_options& opt) {
  if (total < 0 || num_parts < 0)
    throw usage_error("classic_staircase_check: negative parameter");
  check_outcome c;
  c.name = "classic-staircase";
  witness_log log{opt.max_counterexamples};

  std::set<partition> expect;
  for (const auto& p :
       enumerate_partitions(total + triangle_weight(num_parts), partition_class::distinct_positive))
    if (p.weight() == total + triangle_weight(num_parts) && p.length() == num_parts)
      expect.insert(p);

  std::set<partition> image;
  long long sources = 0;
  for (const auto& m :
       enumerate_partitions(total, partition_class::zeros_allowed, num_parts)) {
    if (m.weight() != total || m.length() != num_parts) continue;
    ++sources;
    a_pair img = phi(r_pair(triangular(num_parts), m));
    if (img.tag != a_tag::a1 || !img.y.empty()) {
      log.add("(" + m.render() + ") -> " + img.str() + " (expected bare first component)");
      continue;
    }
    if (!image.insert(img.x).second)
      log.add("(" + m.render() + ") -> duplicate image (" + img.x.render() + ")");
  }
  for (const auto& p : expect)
    if (!image.count(p)) log.add("not reached: (" + p.render() + ")");
  for (const auto& p : image)
    if (!expect.count(p)) log.add("outside target: (" + p.render() + ")");

  c.examined = sources + static_cast<long long>(expect.size());
  log.seal(c);
  return c;
}

}  // namespace qpi
