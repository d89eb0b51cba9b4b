#include "qpi/involution.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qpi/errors.hpp"

namespace qpi {

triple::triple(partition l, partition m, partition g)
    : lambda(std::move(l)), mu(std::move(m)), gamma(std::move(g)) {
  if (!is_member(lambda, partition_class::triangular))
    throw domain_error("triple: lambda must be a staircase partition, got (" + lambda.render() +
                       ")");
  if (!is_member(mu, partition_class::positive_parts))
    throw domain_error("triple: mu must have positive parts, got (" + mu.render() + ")");
  if (!is_member(gamma, partition_class::positive_parts))
    throw domain_error("triple: gamma must have positive parts, got (" + gamma.render() + ")");
}

std::string triple::str() const {
  return "((" + lambda.render() + "),(" + mu.render() + "),(" + gamma.render() + "))";
}

int psi_case(const triple& t) {
  long long al = t.lambda.largest();
  long long am = t.mu.largest();
  long long ag = t.gamma.largest();
  if (al + am >= ag) return t.lambda.empty() ? 1 : 2;
  return 3;
}

triple psi(const triple& t) {
  switch (psi_case(t)) {
    case 1:
      return t;
    case 2: {
      // move lambda_1 + mu_1 onto gamma, dropping both contributing parts
      long long l1 = t.lambda.largest();
      long long m1 = t.mu.largest();
      std::vector<long long> lt(t.lambda.parts().begin() + 1, t.lambda.parts().end());
      std::vector<long long> mt;
      if (!t.mu.empty()) mt.assign(t.mu.parts().begin() + 1, t.mu.parts().end());
      std::vector<long long> gt;
      gt.push_back(l1 + m1);
      gt.insert(gt.end(), t.gamma.parts().begin(), t.gamma.parts().end());
      return triple(partition(lt), partition(mt), partition(gt));
    }
    default: {
      // split gamma_1 into a new staircase step and a new mu part
      long long l1 = t.lambda.largest();
      long long g1 = t.gamma.largest();
      std::vector<long long> lt;
      lt.push_back(l1 + 1);
      if (!t.lambda.empty()) {
        lt.insert(lt.end(), t.lambda.parts().begin(), t.lambda.parts().end());
      }
      std::vector<long long> mt;
      if (g1 - l1 - 1 > 0) mt.push_back(g1 - l1 - 1);
      mt.insert(mt.end(), t.mu.parts().begin(), t.mu.parts().end());
      std::vector<long long> gt(t.gamma.parts().begin() + 1, t.gamma.parts().end());
      return triple(partition(lt), partition(mt), partition(gt));
    }
  }
}

long long statistic_f(const triple& t) { return t.mu.length() - t.lambda.length() - 1; }

std::vector<triple_class> classify(const triple& t) {
  std::vector<triple_class> out;
  long long al = t.lambda.largest();
  long long am = t.mu.largest();
  long long ag = t.gamma.largest();
  if (t.lambda.empty() && am >= ag) out.push_back(triple_class::fixed);
  if (t.mu.empty() && 0 < ag && ag <= al) out.push_back(triple_class::b1_printed);
  if (t.mu.empty() && !t.lambda.empty() && ag <= al) out.push_back(triple_class::b1_corrected);
  if (t.mu.empty() && ag == al + 1) out.push_back(triple_class::b2);
  if (out.empty()) out.push_back(triple_class::generic);
  return out;
}

const char* triple_class_name(triple_class c) {
  switch (c) {
    case triple_class::fixed:
      return "fixed";
    case triple_class::b1_printed:
      return "b1-printed";
    case triple_class::b1_corrected:
      return "b1-corrected";
    case triple_class::b2:
      return "b2";
    case triple_class::generic:
      return "generic";
  }
  return "?";
}

bool triple_selected(const triple& t, triple_selector sel) {
  long long al = t.lambda.largest();
  long long am = t.mu.largest();
  long long ag = t.gamma.largest();
  switch (sel) {
    case triple_selector::all:
      return true;
    case triple_selector::fixed:
      return t.lambda.empty() && am >= ag;
    case triple_selector::b1_printed:
      return t.mu.empty() && 0 < ag && ag <= al;
    case triple_selector::b1_corrected:
      return t.mu.empty() && !t.lambda.empty() && ag <= al;
    case triple_selector::b2:
      return t.mu.empty() && ag == al + 1;
  }
  return false;
}

std::vector<triple> enumerate_triples(long long weight_max) {
  if (weight_max < 0) throw usage_error("enumerate_triples: negative weight bound");
  auto staircases = enumerate_partitions(weight_max, partition_class::triangular);
  auto positives = enumerate_partitions(weight_max, partition_class::positive_parts);
  std::vector<std::vector<partition>> by_weight(static_cast<size_t>(weight_max) + 1);
  for (auto& p : positives) by_weight[static_cast<size_t>(p.weight())].push_back(p);

  std::vector<triple> out;
  for (const auto& l : staircases) {
    long long rest = weight_max - l.weight();
    for (long long wm = 0; wm <= rest; ++wm)
      for (const auto& m : by_weight[static_cast<size_t>(wm)])
        for (long long wg = 0; wg <= rest - wm; ++wg)
          for (const auto& g : by_weight[static_cast<size_t>(wg)]) out.emplace_back(l, m, g);
  }
  return out;
}

namespace {

// Collects the first few offending elements plus a total count; merged
// deterministically because callers feed indices in enumeration order.
struct witness_log {
  long long cap;
  long long total = 0;
  std::vector<std::string> entries;

  void add(const std::string& s) {
    ++total;
    if (static_cast<long long>(entries.size()) < cap) entries.push_back(s);
  }
};

check_outcome property_check(const std::string& name, const std::vector<triple>& ts,
                             const std::function<bool(const triple&, std::string&)>& holds,
                             const audit_options& opt, bool expected_fail = false) {
  check_outcome c;
  c.name = name;
  c.expected_fail = expected_fail;
  c.examined = static_cast<long long>(ts.size());
  witness_log log{opt.max_counterexamples};

  bool par = use_parallel(opt.policy, ts.size(), 1u << 10);
  if (par) {
#ifdef _OPENMP
    int threads = hardware_threads();
    std::vector<std::vector<std::pair<size_t, std::string>>> local(
        static_cast<size_t>(threads));
#pragma omp parallel num_threads(threads)
    {
      auto& mine = local[static_cast<size_t>(omp_get_thread_num())];
#pragma omp for schedule(static)
      for (long long i = 0; i < static_cast<long long>(ts.size()); ++i) {
        std::string why;
        if (!holds(ts[static_cast<size_t>(i)], why))
          mine.emplace_back(static_cast<size_t>(i), why);
      }
    }
    std::vector<std::pair<size_t, std::string>> merged;
    for (auto& v : local) merged.insert(merged.end(), v.begin(), v.end());
    std::sort(merged.begin(), merged.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    for (auto& [i, why] : merged) log.add(why);
#endif
  } else {
    for (const auto& t : ts) {
      std::string why;
      if (!holds(t, why)) log.add(why);
    }
  }
  c.pass = log.total == 0;
  c.counterexamples = std::move(log.entries);
  c.counterexample_total = log.total;
  return c;
}

check_outcome image_set_check(const std::string& name, const std::vector<triple>& ts,
                              triple_selector source, triple_selector target,
                              const audit_options& opt, bool expected_fail) {
  check_outcome c;
  c.name = name;
  c.expected_fail = expected_fail;
  std::set<triple> image;
  std::set<triple> want;
  for (const auto& t : ts) {
    if (triple_selected(t, source)) image.insert(psi(t));
    if (triple_selected(t, target)) want.insert(t);
  }
  c.examined = static_cast<long long>(image.size() + want.size());
  witness_log log{opt.max_counterexamples};
  for (const auto& t : want)
    if (!image.count(t)) log.add("not reached: " + t.str());
  for (const auto& t : image)
    if (!want.count(t)) log.add("reached but outside target: " + t.str());
  c.pass = log.total == 0;
  c.counterexamples = std::move(log.entries);
  c.counterexample_total = log.total;
  return c;
}

}  // namespace

std::vector<check_outcome> audit_involution(long long weight_max, const audit_options& opt) {
  if (weight_max < 0) throw usage_error("audit_involution: negative weight bound");
  auto ts = enumerate_triples(weight_max);
  std::vector<check_outcome> out;

  auto is_fixed = [](const triple& t) { return triple_selected(t, triple_selector::fixed); };
  auto in_b1c = [](const triple& t) { return triple_selected(t, triple_selector::b1_corrected); };
  auto in_b2 = [](const triple& t) { return triple_selected(t, triple_selector::b2); };

  out.push_back(property_check(
      "involutive", ts,
      [](const triple& t, std::string& why) {
        triple u = psi(psi(t));
        if (u == t) return true;
        why = t.str() + " -> " + psi(t).str() + " -> " + u.str();
        return false;
      },
      opt));

  out.push_back(property_check(
      "weight-preserved", ts,
      [](const triple& t, std::string& why) {
        triple u = psi(t);
        if (u.weight() == t.weight()) return true;
        why = t.str() + " weight " + std::to_string(t.weight()) + " -> " +
              std::to_string(u.weight());
        return false;
      },
      opt));

  out.push_back(property_check(
      "lambda-gamma-length-sum-preserved", ts,
      [](const triple& t, std::string& why) {
        triple u = psi(t);
        long long before = t.lambda.length() + t.gamma.length();
        long long after = u.lambda.length() + u.gamma.length();
        if (before == after) return true;
        why = t.str() + " sum " + std::to_string(before) + " -> " + std::to_string(after);
        return false;
      },
      opt));

  out.push_back(property_check(
      "fixed-point-characterization", ts,
      [&](const triple& t, std::string& why) {
        bool fixed_by_map = psi(t) == t;
        if (fixed_by_map == is_fixed(t)) return true;
        why = t.str() + (fixed_by_map ? " fixed but outside the described set"
                                      : " in the described set but moved");
        return false;
      },
      opt));

  out.push_back(property_check(
      "lambda-length-step-one-off-fixed", ts,
      [&](const triple& t, std::string& why) {
        if (is_fixed(t)) return true;
        long long d = psi(t).lambda.length() - t.lambda.length();
        if (d == 1 || d == -1) return true;
        why = t.str() + " lambda-length step " + std::to_string(d);
        return false;
      },
      opt));

  out.push_back(image_set_check("b1-corrected-maps-onto-b2", ts, triple_selector::b1_corrected,
                                triple_selector::b2, opt, false));

  out.push_back(property_check(
      "f-step-plus-one-on-b1-corrected", ts,
      [&](const triple& t, std::string& why) {
        if (!in_b1c(t)) return true;
        long long before = statistic_f(t);
        long long after = statistic_f(psi(t));
        if (after == before + 1) return true;
        why = t.str() + " f " + std::to_string(before) + " -> " + std::to_string(after);
        return false;
      },
      opt));

  out.push_back(property_check(
      "f-preserved-off-b1-b2", ts,
      [&](const triple& t, std::string& why) {
        if (is_fixed(t) || in_b1c(t) || in_b2(t)) return true;
        long long before = statistic_f(t);
        long long after = statistic_f(psi(t));
        if (after == before) return true;
        why = t.str() + " f " + std::to_string(before) + " -> " + std::to_string(after);
        return false;
      },
      opt));

  // series-level checks of the fixed-set sum against its closed right side,
  // once with the corrected a-exponent and once with the printed one
  {
    window w{static_cast<int>(weight_max), -1,
             static_cast<int>(std::max<long long>(0, weight_max - 1)),
             static_cast<int>(weight_max), 0};
    auto rhs = build_formula_side<coef>(identity_id::s3_fixsum_corrected, formula_side::rhs, w,
                                        opt.policy);
    auto corrected = weighted_triple_sum<coef>(triple_selector::fixed,
                                               triple_weighting::s3_fix_weight, weight_max, w);
    out.push_back(check_from_comparison("fix-display-corrected-exponent", compare(corrected, rhs, w),
                                        opt.max_counterexamples, false));
    auto printed = weighted_triple_sum<coef>(
        triple_selector::fixed, triple_weighting::s3_fix_weight_printed, weight_max, w);
    out.push_back(check_from_comparison("fix-display-printed-exponent", compare(printed, rhs, w),
                                        opt.max_counterexamples, true));
  }

  out.push_back(image_set_check("b1-printed-maps-onto-b2", ts, triple_selector::b1_printed,
                                triple_selector::b2, opt, true));

  return out;
}

}  // namespace qpi
