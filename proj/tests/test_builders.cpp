#include "doctest.h"

#include <optional>
#include <string>

#include "qpi/builders.hpp"
#include "qpi/identities.hpp"

using namespace qpi;

namespace {

coef at(const series& f, int q, int a, int b, int c) { return f.coefficient(expq{q, a, b, c}); }

bool sides_agree(identity_id id, const window& w) {
  auto lhs = build_side(id, formula_side::lhs, w);
  auto rhs = build_side(id, formula_side::rhs, w);
  return compare(lhs, rhs, w).equal();
}

}  // namespace

TEST_CASE("theta index bound tracks triangle numbers") {
  CHECK(theta_index_max(0) == 0);
  CHECK(theta_index_max(1) == 1);
  CHECK(theta_index_max(2) == 1);
  CHECK(theta_index_max(3) == 2);
  CHECK(theta_index_max(9) == 3);
  CHECK(theta_index_max(10) == 4);
  CHECK(theta_index_max(12) == 4);
  CHECK(triangle_weight(6) == 21);
}

TEST_CASE("finite pochhammer products expand exactly") {
  window w{3, 0, 3, 0, 0};
  auto two = pochhammer<coef>(expq{0, 1, 0, 0}, 2, w);
  // (1-a)(1-aq) = 1 - a - aq + a^2 q
  CHECK(at(two, 0, 0, 0, 0) == coef(1));
  CHECK(at(two, 0, 1, 0, 0) == coef(-1));
  CHECK(at(two, 1, 1, 0, 0) == coef(-1));
  CHECK(at(two, 1, 2, 0, 0) == coef(1));
  CHECK(two.terms().size() == 4);

  auto empty = pochhammer<coef>(expq{0, 1, 0, 0}, 0, w);
  CHECK(empty.terms().size() == 1);
  CHECK(at(empty, 0, 0, 0, 0) == coef(1));
}

TEST_CASE("infinite q pochhammer matches the pentagonal expansion") {
  window w{5, 0, 0, 0, 0};
  auto f = pochhammer<coef>(expq{1, 0, 0, 0}, std::nullopt, w);
  long long expect[] = {1, -1, -1, 0, 0, 1};
  for (int n = 0; n <= 5; ++n) CHECK(f.coefficient(expq{n, 0, 0, 0}) == coef(expect[n]));
}

TEST_CASE("infinite pochhammer rejects monomials whose powers stay in-window") {
  window w{5, 0, 2, 2, 0};
  CHECK_THROWS_AS(pochhammer<coef>(expq{0, 0, 1, 0}, std::nullopt, w), domain_error);
  CHECK_THROWS_AS(pochhammer<coef>(expq{}, 3, w), domain_error);
  CHECK_NOTHROW(pochhammer<coef>(expq{0, 1, 0, 0}, std::nullopt, w));
}

TEST_CASE("identity registry is complete and parseable") {
  const auto& reg = identity_registry();
  CHECK(reg.size() == 11);
  for (const auto& info : reg) {
    CHECK(parse_identity(info.name) == info.id);
    CHECK(identity_lookup(info.id).name == std::string(info.name));
    if (!info.expected_match) CHECK(std::string(info.mismatch_note) != "");
  }
  CHECK(parse_identity("eq5-printed") == identity_id::eq5_printed);
  CHECK(identity_lookup(identity_id::gf_a1).expected_match == false);
  CHECK(identity_lookup(identity_id::eq5_corrected).expected_match == true);
  CHECK(identity_lookup(identity_id::gf_r).lhs_enumerated == true);
  CHECK(identity_lookup(identity_id::eq1).lhs_enumerated == false);
  CHECK_THROWS_WITH_AS(parse_identity("no-such-identity"),
                       doctest::Contains("unknown identity 'no-such-identity'"), usage_error);
}

TEST_CASE("window budget checks reject Laurent underflow") {
  CHECK_THROWS_WITH_AS(check_budget(identity_id::eq1, window{8, -2, 2, 8, 0}),
                       doctest::Contains("a_min <= -4"), usage_error);
  CHECK_NOTHROW(check_budget(identity_id::eq1, window{8, -4, 2, 8, 0}));
  CHECK_THROWS_WITH_AS(check_budget(identity_id::s3_fixsum_corrected, window{4, 0, 3, 4, 0}),
                       doctest::Contains("a_min <= -1"), usage_error);
  CHECK_THROWS_WITH_AS(check_budget(identity_id::eq3, window{4, 1, 2, 4, 0}),
                       doctest::Contains("a_min <= 0 <= a_max"), usage_error);
  CHECK_NOTHROW(check_budget(identity_id::eq3, window{4, 0, 0, 4, 0}));
}

TEST_CASE("building an enumeration-backed left side as a formula is refused") {
  CHECK_THROWS_WITH_AS(build_formula_side<coef>(identity_id::gf_r, formula_side::lhs,
                                                window{2, 0, 2, 0, 2}),
                       doctest::Contains("enumeration sum"), usage_error);
}

TEST_CASE("two-family balanced identity holds in the window") {
  CHECK(sides_agree(identity_id::eq1, window{6, -5, 5, 6, 0}));
}

TEST_CASE("two-family balanced identity degenerates to 1 = 1 at q_max 0") {
  window w{0, -1, 1, 0, 0};
  auto lhs = build_side(identity_id::eq1, formula_side::lhs, w);
  auto rhs = build_side(identity_id::eq1, formula_side::rhs, w);
  CHECK(compare(lhs, series::one(w), w).equal());
  CHECK(compare(rhs, series::one(w), w).equal());
}

TEST_CASE("one-variable specialization holds with known low-order anchors") {
  window w{8, 0, 0, 8, 0};
  auto lhs = build_side(identity_id::eq3, formula_side::lhs, w);
  auto rhs = build_side(identity_id::eq3, formula_side::rhs, w);
  CHECK(compare(lhs, rhs, w).equal());
  // [q] of the right side: the b-geometric contribution cancels the n=1
  // theta term, leaving plain q
  CHECK(at(rhs, 1, 0, 0, 0) == coef(1));
  CHECK(at(rhs, 1, 0, 1, 0) == coef(0));
  CHECK(at(lhs, 0, 0, 0, 0) == coef(1));
}

TEST_CASE("two-part a,c identity holds in corrected form and misses the tail as printed") {
  window w{6, 0, 4, 0, 4};
  CHECK(sides_agree(identity_id::eq5_corrected, w));

  auto lhs_printed = build_side(identity_id::eq5_printed, formula_side::lhs, w);
  auto rhs = build_side(identity_id::eq5_printed, formula_side::rhs, w);
  auto cmp = compare(lhs_printed, rhs, w);
  CHECK_FALSE(cmp.equal());

  auto gap = detail::ac_tail<coef>(0, w, exec_policy::automatic);
  CHECK(compare(sub(rhs, lhs_printed), gap, w).equal());

  auto lhs_corrected = build_side(identity_id::eq5_corrected, formula_side::lhs, w);
  CHECK(compare(lhs_corrected, add(lhs_printed, gap), w).equal());
}

TEST_CASE("partial theta identity holds with sign anchors") {
  window w{10, 0, 10, 0, 0};
  auto lhs = build_side(identity_id::partial_theta, formula_side::lhs, w);
  auto rhs = build_side(identity_id::partial_theta, formula_side::rhs, w);
  CHECK(compare(lhs, rhs, w).equal());
  CHECK(at(lhs, 0, 0, 0, 0) == coef(1));
  CHECK(at(lhs, 0, 1, 0, 0) == coef(-1));
  CHECK(at(lhs, 1, 2, 0, 0) == coef(1));
  CHECK(at(lhs, 0, 2, 0, 0) == coef(0));
  CHECK(at(rhs, 3, 3, 0, 0) == coef(-1));
}

TEST_CASE("theta c-sum stores exactly the triangle monomials") {
  window w{10, 0, 0, 0, 4};
  auto f = theta_c_sum<coef>(w);
  CHECK(f.terms().size() == 5);
  for (int n = 0; n <= 4; ++n)
    CHECK(at(f, static_cast<int>(triangle_weight(n)), 0, 0, n) == coef(1));
}

TEST_CASE("pair-count closed form starts from the free-row geometric block") {
  window w{3, 0, 3, 0, 2};
  auto rhs = build_side(identity_id::gf_r, formula_side::rhs, w);
  for (int j = 0; j <= 3; ++j) CHECK(at(rhs, 0, j, 0, 0) == coef(1));
  for (int j = 1; j <= 3; ++j) CHECK(at(rhs, 1, j, 0, 0) == coef(1));
  CHECK(at(rhs, 1, 0, 0, 1) == coef(1));
  CHECK(at(rhs, 1, 1, 0, 1) == coef(1));
}

TEST_CASE("b to -ac substitution turns a b-geometric factor into its ac twin") {
  window src_w{4, -4, 4, 4, 0};
  window dst_w{4, 0, 4, 0, 4};
  auto src = series::geometric_inverse(expq{1, 0, 1, 0}, src_w);
  auto got = substitute_b_as_neg_ac(src, dst_w);
  auto want = series::geometric_inverse(expq{1, 1, 0, 1}, dst_w, -1);
  CHECK(compare(got, want, dst_w).equal());

  CHECK_THROWS_WITH_AS(substitute_b_as_neg_ac(src, window{4, 0, 4, 0, 5}),
                       doctest::Contains("exceeds source b_max"), usage_error);
}

TEST_CASE("substitution chain rebuilds the corrected two-part identity") {
  // c = -b/a applied to the two-family identity, then * a(ac-tail), then
  // / (1-a); moving the theta-tail block onto both sides lands on the
  // corrected two-part identity side by side
  window src_w{6, -10, 10, 3, 0};
  window chain_w{6, -7, 10, 0, 3};
  window probe{6, 0, 6, 0, 3};

  auto l1 = substitute_b_as_neg_ac(build_side(identity_id::eq1, formula_side::lhs, src_w),
                                   chain_w);
  auto r1 = substitute_b_as_neg_ac(build_side(identity_id::eq1, formula_side::rhs, src_w),
                                   chain_w);
  CHECK(compare(l1, r1, probe).equal());

  auto a_theta = mul(detail::scaled_monomial(coef(1), expq{0, 1, 0, 0}, chain_w),
                     detail::ac_tail<coef>(0, chain_w, exec_policy::automatic));
  auto l2 = mul(a_theta, l1);
  auto r2 = mul(a_theta, r1);
  CHECK(compare(l2, r2, probe).equal());

  auto inv_one_minus_a = series::geometric_inverse(expq{0, 1, 0, 0}, chain_w);
  auto l3 = mul(inv_one_minus_a, l2);
  auto r3 = mul(inv_one_minus_a, r2);
  CHECK(compare(l3, r3, probe).equal());

  auto moved = detail::theta_tail_sum<coef>(0, chain_w, exec_policy::automatic);
  auto lhs5 = build_side(identity_id::eq5_corrected, formula_side::lhs, chain_w);
  auto rhs5 = build_side(identity_id::eq5_corrected, formula_side::rhs, chain_w);
  CHECK(compare(add(l3, moved), lhs5, probe).equal());
  CHECK(compare(add(r3, moved), rhs5, probe).equal());
}

TEST_CASE("multiplying out the 1-a pole and evaluating at a=1 recovers the partial theta form") {
  // the a-band is far wider than the content needs: evaluation at a=1
  // demands that the certified support bound, which adds up factor bounds
  // rather than tracking per-cell truth, sits inside the validity band
  window w{8, 0, 36, 0, 8};
  auto lhs5 = build_side(identity_id::eq5_corrected, formula_side::lhs, w);
  auto rhs5 = build_side(identity_id::eq5_corrected, formula_side::rhs, w);
  auto one_minus_a = detail::one_plus_scaled(coef(-1), expq{0, 1, 0, 0}, w);

  // cancelled forms of (1-a) * side, with finite certified a-support
  auto pol = exec_policy::automatic;
  auto tails = detail::ac_tails<coef>(w, pol);
  series q_l = series::zero(w);
  series prefix = series::one(w);
  for (int n = 0; n <= w.q_max; ++n) {
    if (n > 0) prefix = mul(prefix, series::geometric_inverse(expq{n, 1, 0, 0}, w), pol);
    q_l = add(q_l, mul(mul(detail::scaled_monomial(coef(1), expq{n, 1, 0, 0}, w),
                           tails[static_cast<size_t>(n)], pol),
                       prefix, pol));
  }
  q_l = add(q_l, mul(one_minus_a, detail::theta_tail_sum<coef>(0, w, pol)));
  auto q_r = mul(theta_c_sum<coef>(w), detail::inv_qpoch_tail<coef>(expq{0, 1, 0, 0}, w, pol));

  CHECK(compare(mul(one_minus_a, lhs5), q_l, w).equal());
  CHECK(compare(mul(one_minus_a, rhs5), q_r, w).equal());

  auto q_inf = pochhammer<coef>(expq{1, 0, 0, 0}, std::nullopt, w);
  auto f_l = mul(eval_a_one(q_l), q_inf, pol);
  auto f_r = mul(eval_a_one(q_r), q_inf, pol);

  window plain{8, 0, 8, 0, 0};
  auto g_l = substitute_c_as_neg_a(f_l, plain);
  auto g_r = substitute_c_as_neg_a(f_r, plain);

  auto pt_lhs = build_side(identity_id::partial_theta, formula_side::lhs, plain);
  auto pt_rhs = build_side(identity_id::partial_theta, formula_side::rhs, plain);
  CHECK(compare(g_r, substitute_a_as_aq(pt_lhs, plain), plain).equal());
  CHECK(compare(g_l, substitute_a_as_aq(pt_rhs, plain), plain).equal());
}

TEST_CASE("exponent remap preconditions are enforced") {
  window w{4, 0, 4, 0, 4};
  auto not_a_free = series::geometric_inverse(expq{1, 1, 0, 0}, w);
  CHECK_THROWS_WITH_AS(substitute_c_as_neg_a(not_a_free, w),
                       doctest::Contains("must be a-free"), usage_error);

  window laurent{4, -1, 4, 0, 0};
  auto f = series::geometric_inverse(expq{1, 1, 0, 0}, laurent);
  CHECK_THROWS_WITH_AS(substitute_a_as_aq(f, laurent),
                       doctest::Contains("a_min >= 0"), usage_error);
}

TEST_CASE("doubled-width coefficients agree with the default width") {
  window w{8, -5, 4, 8, 0};
  auto narrow = build_formula_side<coef>(identity_id::eq1, formula_side::rhs, w);
  auto wide = build_formula_side<coef128>(identity_id::eq1, formula_side::rhs, w);
  REQUIRE(narrow.terms().size() == wide.terms().size());
  for (size_t i = 0; i < narrow.terms().size(); ++i) {
    CHECK(narrow.terms()[i].first == wide.terms()[i].first);
    CHECK(static_cast<long long>(narrow.terms()[i].second.raw()) ==
          static_cast<long long>(wide.terms()[i].second.raw()));
  }
}
