// Acceptance gate: one line per criterion, nonzero exit when any fails.
// Windows here are deliberately deeper than the unit-test ones.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "qpi/bijection.hpp"
#include "qpi/builders.hpp"
#include "qpi/identities.hpp"
#include "qpi/involution.hpp"
#include "qpi/report.hpp"

using namespace qpi;

namespace {

int failures = 0;

void line(bool ok, const std::string& what) {
  std::printf("%s: %s\n", ok ? "PASS" : "FAIL", what.c_str());
  if (!ok) ++failures;
}

template <class F>
void criterion(const std::string& what, F&& body) {
  try {
    line(body(), what);
  } catch (const std::exception& e) {
    line(false, what + " (exception: " + e.what() + ")");
  }
}

const check_outcome* find_check(const std::vector<check_outcome>& checks, const char* name) {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

bool formula_sides_equal(identity_id id, const window& w) {
  return compare(build_side(id, formula_side::lhs, w), build_side(id, formula_side::rhs, w), w)
      .equal();
}

bool widths_agree(identity_id id, formula_side side, const window& w) {
  auto narrow = build_formula_side<coef>(id, side, w);
  auto wide = build_formula_side<coef128>(id, side, w);
  if (narrow.terms().size() != wide.terms().size()) return false;
  for (size_t i = 0; i < narrow.terms().size(); ++i) {
    if (narrow.terms()[i].first != wide.terms()[i].first) return false;
    if (static_cast<__int128>(narrow.terms()[i].second.raw()) != wide.terms()[i].second.raw())
      return false;
  }
  return true;
}

}  // namespace

int main() {
  criterion("two-family balanced identity matches on a deep Laurent window within a minute",
            [] {
              auto t0 = std::chrono::steady_clock::now();
              window w{12, -8, 6, 12, 0};
              bool ok = formula_sides_equal(identity_id::eq1, w);
              double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
                                .count();
              return ok && secs < 60.0 &&
                     widths_agree(identity_id::eq1, formula_side::lhs, w) &&
                     widths_agree(identity_id::eq1, formula_side::rhs, w);
            });

  criterion("one-variable specialization matches and both sides equal their enumeration sums",
            [] {
              window w{16, 0, 0, 16, 0};
              auto lhs = build_side(identity_id::eq3, formula_side::lhs, w);
              auto rhs = build_side(identity_id::eq3, formula_side::rhs, w);
              if (!compare(lhs, rhs, w).equal()) return false;
              auto fix_sum = weighted_triple_sum<coef>(triple_selector::fixed,
                                                       triple_weighting::fix_weight, 16, w);
              auto all_sum = weighted_triple_sum<coef>(triple_selector::all,
                                                       triple_weighting::eq3_weight, 16, w);
              return compare(fix_sum, lhs, w).equal() && compare(all_sum, rhs, w).equal();
            });

  criterion("partial theta identity matches through q^20 and anchors 1-a and a^2q hold", [] {
    window w{20, 0, 20, 0, 0};
    auto lhs = build_side(identity_id::partial_theta, formula_side::lhs, w);
    auto rhs = build_side(identity_id::partial_theta, formula_side::rhs, w);
    if (!compare(lhs, rhs, w).equal()) return false;
    for (int j = 0; j <= 20; ++j) {
      coef want_q0 = j == 0 ? coef(1) : j == 1 ? coef(-1) : coef(0);
      coef want_q1 = j == 2 ? coef(1) : coef(0);
      if (rhs.coefficient(expq{0, j, 0, 0}) != want_q0) return false;
      if (rhs.coefficient(expq{1, j, 0, 0}) != want_q1) return false;
    }
    return true;
  });

  criterion("two-part a,c identity holds as corrected and misses exactly the tail product as "
            "printed",
            [] {
              window w{12, 0, 8, 0, 12};
              if (!formula_sides_equal(identity_id::eq5_corrected, w)) return false;
              auto lhs = build_side(identity_id::eq5_printed, formula_side::lhs, w);
              auto rhs = build_side(identity_id::eq5_printed, formula_side::rhs, w);
              if (compare(lhs, rhs, w).equal()) return false;
              auto gap = detail::ac_tail<coef>(0, w, exec_policy::automatic);
              return compare(sub(rhs, lhs), gap, w).equal();
            });

  criterion("involution audit through weight 16 is clean, with both documented deviations "
            "witnessed",
            [] {
              auto checks = audit_involution(16);
              for (const auto& c : checks)
                if (!c.as_expected()) return false;
              const auto* printed_set = find_check(checks, "b1-printed-maps-onto-b2");
              if (!printed_set || printed_set->pass) return false;
              if (printed_set->counterexamples.empty() ||
                  printed_set->counterexamples[0] != "not reached: ((),(),(1))")
                return false;
              const auto* printed_exp = find_check(checks, "fix-display-printed-exponent");
              return printed_exp && !printed_exp->pass && printed_exp->expected_fail;
            });

  criterion("signed triple sum assembles from its small-side and fixed-set parts", [] {
    window w{10, -5, 9, 10, 0};
    auto all_sum = weighted_triple_sum<coef>(triple_selector::all, triple_weighting::s3_weight,
                                             10, w);
    auto b1c = weighted_triple_sum<coef>(triple_selector::b1_corrected,
                                         triple_weighting::s3_weight, 10, w);
    auto fix = weighted_triple_sum<coef>(triple_selector::fixed,
                                         triple_weighting::s3_fix_weight, 10, w);
    auto assembled = add(mul(detail::one_plus_scaled(coef(-1), expq{0, 1, 0, 0}, w), b1c), fix);
    return compare(all_sum, assembled, w).equal();
  });

  criterion("bijection audit on the weight-14 slice is clean and the worked examples round-trip",
            [] {
              auto checks = audit_bijection(14, 14);
              for (const auto& c : checks)
                if (!c.as_expected()) return false;
              r_pair fig1(partition::parse("6,5,4,3,2,1"),
                          partition::parse("8,6,6,6,4,4,4,3,3,0,0,0,0,0"));
              a_pair img1 = phi(fig1);
              if (!(img1 == a_pair(partition::parse("14,11,10,9,6,5"),
                                   partition::parse("4,3,3,0,0,0,0,0"), a_tag::a1)))
                return false;
              if (!(phi_inverse(img1) == fig1)) return false;
              r_pair fig2(partition::parse("6,5,4,3,2,1"), partition::parse("8,8,0"));
              a_pair img2 = phi(fig2);
              if (!(img2 == a_pair(partition::parse("14,13,4"), partition::parse("3,2,1"),
                                   a_tag::a2)))
                return false;
              return phi_inverse(img2) == fig2;
            });

  criterion("pair-count generating sum matches its closed form through q^12", [] {
    window w{12, 0, 12, 0, 4};
    return formula_sides_equal(identity_id::gf_r, w);
  });

  criterion("classical staircase shift holds for all totals to 12 and lengths to 6", [] {
    for (long long total = 0; total <= 12; ++total)
      for (long long parts = 0; parts <= 6; ++parts)
        if (!classic_staircase_check(total, parts).pass) return false;
    return true;
  });

  criterion("report rendering is byte-deterministic across repeated runs", [] {
    auto build = [] {
      run_report r;
      r.command = "acceptance";
      r.config = {{"weight", "8"}};
      r.checks = audit_involution(8);
      for (const auto& c : r.checks) r.elements_examined += c.examined;
      return render_json(r);
    };
    std::string a = build();
    std::string b = build();
    return !a.empty() && a == b;
  });

  if (failures == 0) {
    std::printf("acceptance: all criteria passed\n");
    return 0;
  }
  std::printf("acceptance: %d criteria failed\n", failures);
  return 1;
}
