#include "qpi/identities.hpp"

#include "qpi/bijection.hpp"
#include "qpi/involution.hpp"

namespace qpi {

const std::vector<identity_info>& identity_registry() {
  static const std::vector<identity_info> reg = {
      {identity_id::eq1, "eq1",
       "balanced q-sum over two geometric families equals an alternating theta combination "
       "with a-inverse shifts",
       true, true, false, true, "", false, window{8, -5, 4, 8, 0}},
      {identity_id::eq3, "eq3",
       "one-variable specialization: balanced q-sum equals alternating theta times the "
       "inverse-product pair",
       false, true, false, true, "", false, window{10, 0, 0, 10, 0}},
      {identity_id::eq5_printed, "eq5-printed",
       "two-part a,c sum against theta times geometric a-products, with the second sum "
       "starting at index 1 as printed",
       true, false, true, false,
       "short by the product over k>=1 of (1+acq^k): the index-0 term is missing", false,
       window{8, 0, 5, 0, 8}},
      {identity_id::eq5_corrected, "eq5-corrected",
       "two-part a,c sum against theta times geometric a-products, second sum starting at "
       "index 0",
       true, false, true, true, "", false, window{8, 0, 5, 0, 8}},
      {identity_id::partial_theta, "partial-theta",
       "alternating partial theta sum equals the Pochhammer-weighted positive q-sum", true,
       false, false, true, "", false, window{12, 0, 12, 0, 0}},
      {identity_id::gf_r, "gf-R",
       "staircase/free pair sum a^len(mu) c^len(lambda) q^weight equals theta times geometric "
       "a-products",
       true, false, true, true, "", true, window{8, 0, 6, 0, 3}},
      {identity_id::gf_a1, "gf-A1",
       "first-bucket tagged pair sum against its printed closed form", true, false, true, false,
       "the printed form generates only pairs with nonempty second component; difference is "
       "the product over k>=1 of (1+acq^k)",
       true, window{8, 0, 6, 0, 6}},
      {identity_id::gf_a2, "gf-A2",
       "second-bucket tagged pair sum equals theta terms carrying tail products", true, false,
       true, true, "", true, window{8, 0, 6, 0, 6}},
      {identity_id::s3_ssum, "s3-Ssum",
       "signed triple sum with statistic exponent a^f equals the Laurent-shifted theta-product "
       "form",
       true, true, false, true, "", true, window{8, -4, 7, 8, 0}},
      {identity_id::s3_b1sum, "s3-B1sum",
       "signed small-side subset sum equals the shifted theta over finite b-products", true,
       true, false, true, "", true, window{8, -4, 0, 8, 0}},
      {identity_id::s3_fixsum_corrected, "s3-Fixsum-corrected",
       "fixed-set sum with corrected exponent a^f equals a^{-1} plus the balanced q-sum", true,
       true, false, true, "", true, window{8, -1, 7, 8, 0}},
  };
  return reg;
}

const identity_info& identity_lookup(identity_id id) {
  for (const auto& info : identity_registry())
    if (info.id == id) return info;
  throw usage_error("identity_lookup: unregistered identity");
}

identity_id parse_identity(std::string_view name) {
  for (const auto& info : identity_registry())
    if (name == info.name) return info.id;
  std::string valid;
  for (const auto& info : identity_registry()) {
    if (!valid.empty()) valid += ", ";
    valid += info.name;
  }
  throw usage_error("unknown identity '" + std::string(name) + "' (valid: " + valid + ")");
}

void check_budget(identity_id id, const window& w) {
  w.validate();
  if (w.a_min > 0 || w.a_max < 0)
    throw usage_error("window must contain a-degree 0 (a_min <= 0 <= a_max)");
  int nstar = theta_index_max(w.q_max);
  switch (id) {
    case identity_id::eq1:
    case identity_id::s3_ssum:
    case identity_id::s3_b1sum:
      if (w.a_min > -(nstar + 1))
        throw usage_error(std::string(identity_lookup(id).name) + " at q_max " +
                          std::to_string(w.q_max) + " shifts a-degrees down to " +
                          std::to_string(-(nstar + 1)) + "; window needs a_min <= " +
                          std::to_string(-(nstar + 1)));
      break;
    case identity_id::s3_fixsum_corrected:
      if (w.a_min > -1)
        throw usage_error("s3-Fixsum-corrected carries an a^{-1} term; window needs a_min <= -1");
      break;
    default:
      break;
  }
}

series build_side(identity_id id, formula_side side, const window& w, exec_policy pol) {
  const identity_info& info = identity_lookup(id);
  if (!info.lhs_enumerated || side == formula_side::rhs)
    return build_formula_side<coef>(id, side, w, pol);

  check_budget(id, w);
  long long weight_max = w.q_max;
  long long length_max = w.a_max;
  switch (id) {
    case identity_id::gf_r:
      return weighted_r_sum<coef>(weight_max, length_max, w);
    case identity_id::gf_a1:
      return weighted_a_sum<coef>(weight_max, length_max, a_bucket::a1_only, w);
    case identity_id::gf_a2:
      return weighted_a_sum<coef>(weight_max, length_max, a_bucket::a2_only, w);
    case identity_id::s3_ssum:
      return weighted_triple_sum<coef>(triple_selector::all, triple_weighting::s3_weight,
                                       weight_max, w);
    case identity_id::s3_b1sum:
      return weighted_triple_sum<coef>(triple_selector::b1_corrected,
                                       triple_weighting::s3_weight, weight_max, w);
    case identity_id::s3_fixsum_corrected:
      return weighted_triple_sum<coef>(triple_selector::fixed, triple_weighting::s3_fix_weight,
                                       weight_max, w);
    default:
      throw usage_error("build_side: no enumeration rule for this identity");
  }
}

}  // namespace qpi
