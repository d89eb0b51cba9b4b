#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qpi/bijection.hpp"
#include "qpi/diagram.hpp"
#include "qpi/errors.hpp"
#include "qpi/identities.hpp"
#include "qpi/involution.hpp"
#include "qpi/report.hpp"

namespace {

struct common_flags {
  std::string format = "text";
  long long max_counterexamples = 20;
  std::string policy = "auto";
};

void add_common(CLI::App* sub, common_flags& c) {
  sub->add_option("--format", c.format, "output format")
      ->check(CLI::IsMember({"text", "json", "tsv"}));
  sub->add_option("--max-counterexamples", c.max_counterexamples,
                  "cap on listed mismatches/witnesses per check")
      ->check(CLI::NonNegativeNumber);
  sub->add_option("--policy", c.policy, "kernel execution policy")
      ->check(CLI::IsMember({"auto", "serial", "parallel"}));
}

qpi::exec_policy parse_policy(const std::string& s) {
  if (s == "serial") return qpi::exec_policy::serial;
  if (s == "parallel") return qpi::exec_policy::parallel;
  return qpi::exec_policy::automatic;
}

struct window_flags {
  CLI::Option* qmax = nullptr;
  CLI::Option* amin = nullptr;
  CLI::Option* amax = nullptr;
  CLI::Option* bmax = nullptr;
  CLI::Option* cmax = nullptr;
  int qmax_v = 0, amin_v = 0, amax_v = 0, bmax_v = 0, cmax_v = 0;

  void add(CLI::App* sub) {
    qmax = sub->add_option("--qmax", qmax_v, "q-degree bound");
    amin = sub->add_option("--amin", amin_v, "lowest a-degree (may be negative)");
    amax = sub->add_option("--amax", amax_v, "highest a-degree");
    bmax = sub->add_option("--bmax", bmax_v, "b-degree bound");
    cmax = sub->add_option("--cmax", cmax_v, "c-degree bound");
  }

  qpi::window resolve(const qpi::window& defaults) const {
    qpi::window w = defaults;
    if (qmax->count()) w.q_max = qmax_v;
    if (amin->count()) w.a_min = amin_v;
    if (amax->count()) w.a_max = amax_v;
    if (bmax->count()) w.b_max = bmax_v;
    if (cmax->count()) w.c_max = cmax_v;
    return w;
  }
};

void echo_window(qpi::run_report& rep, const qpi::window& w) {
  rep.config.emplace_back("qmax", std::to_string(w.q_max));
  rep.config.emplace_back("amin", std::to_string(w.a_min));
  rep.config.emplace_back("amax", std::to_string(w.a_max));
  rep.config.emplace_back("bmax", std::to_string(w.b_max));
  rep.config.emplace_back("cmax", std::to_string(w.c_max));
}

void echo_common(qpi::run_report& rep, const common_flags& c) {
  rep.config.emplace_back("policy", c.policy);
  rep.config.emplace_back("max-counterexamples", std::to_string(c.max_counterexamples));
  rep.config.emplace_back("format", c.format);
}

int emit(const qpi::run_report& rep, const common_flags& c, bool strict_pass) {
  std::cout << qpi::render_report(rep, c.format);
  if (strict_pass) {
    for (const auto& chk : rep.checks)
      if (!chk.pass) return 1;
    return 0;
  }
  return qpi::exit_code_for(rep);
}

int run_verify(const std::string& identity, const window_flags& wf, const common_flags& cf) {
  qpi::identity_id id = qpi::parse_identity(identity);
  const qpi::identity_info& info = qpi::identity_lookup(id);
  qpi::window w = wf.resolve(info.default_window);
  qpi::check_budget(id, w);
  qpi::exec_policy pol = parse_policy(cf.policy);

  auto lhs = qpi::build_side(id, qpi::formula_side::lhs, w, pol);
  auto rhs = qpi::build_side(id, qpi::formula_side::rhs, w, pol);
  auto cmp = qpi::compare(lhs, rhs, w);

  qpi::run_report rep;
  rep.command = "verify";
  rep.config.emplace_back("identity", info.name);
  echo_window(rep, w);
  if (info.lhs_enumerated) {
    rep.config.emplace_back("weight", std::to_string(w.q_max));
    rep.config.emplace_back("length-cap", std::to_string(w.a_max));
  }
  echo_common(rep, cf);
  auto chk = qpi::check_from_comparison("sides-equal", cmp, cf.max_counterexamples,
                                        !info.expected_match);
  if (!info.expected_match) chk.note = info.mismatch_note;
  rep.checks.push_back(std::move(chk));
  rep.monomials_compared = cmp.monomials_compared;
  return emit(rep, cf, /*strict_pass=*/true);
}

int run_audit_involution(long long weight, const common_flags& cf) {
  qpi::audit_options opt{cf.max_counterexamples, parse_policy(cf.policy)};
  qpi::run_report rep;
  rep.command = "audit-involution";
  rep.config.emplace_back("weight", std::to_string(weight));
  echo_common(rep, cf);
  rep.checks = qpi::audit_involution(weight, opt);
  rep.elements_examined = static_cast<long long>(qpi::enumerate_triples(weight).size());
  return emit(rep, cf, /*strict_pass=*/false);
}

int run_audit_bijection(long long weight, long long length_cap, const common_flags& cf) {
  qpi::audit_options opt{cf.max_counterexamples, parse_policy(cf.policy)};
  qpi::run_report rep;
  rep.command = "audit-bijection";
  rep.config.emplace_back("weight", std::to_string(weight));
  rep.config.emplace_back("length-cap", std::to_string(length_cap));
  echo_common(rep, cf);
  rep.checks = qpi::audit_bijection(weight, length_cap, opt);
  rep.elements_examined = static_cast<long long>(qpi::enumerate_r(weight, length_cap).size() +
                                                 qpi::enumerate_a(weight, length_cap).size());
  return emit(rep, cf, /*strict_pass=*/false);
}

int run_classic(long long weight, long long length_cap, const common_flags& cf) {
  qpi::audit_options opt{cf.max_counterexamples, parse_policy(cf.policy)};
  qpi::run_report rep;
  rep.command = "classic-check";
  rep.config.emplace_back("weight", std::to_string(weight));
  rep.config.emplace_back("length-cap", std::to_string(length_cap));
  echo_common(rep, cf);
  rep.checks.push_back(qpi::classic_staircase_check(weight, length_cap, opt));
  return emit(rep, cf, /*strict_pass=*/true);
}

std::string describe_triple(const qpi::triple& t) {
  std::string s = t.str() + "  [weight " + std::to_string(t.weight()) + ", f " +
                  std::to_string(qpi::statistic_f(t)) + ", classes";
  for (auto c : qpi::classify(t)) s += std::string(" ") + qpi::triple_class_name(c);
  s += "]";
  return s;
}

int run_trace_psi(const std::string& l, const std::string& m, const std::string& g) {
  qpi::triple t(qpi::partition::parse(l), qpi::partition::parse(m), qpi::partition::parse(g));
  qpi::triple u = qpi::psi(t);
  std::cout << "input:  " << describe_triple(t) << "\n";
  std::cout << "case:   " << qpi::psi_case(t) << "\n";
  std::cout << "output: " << describe_triple(u) << "\n";
  std::cout << "psi(psi(input)) == input: " << (qpi::psi(u) == t ? "yes" : "NO") << "\n";
  return 0;
}

int run_trace_phi(const std::string& l, const std::string& m) {
  qpi::r_pair r(qpi::partition::parse(l), qpi::partition::parse(m));
  qpi::a_pair a = qpi::phi(r);
  long long k = std::min(r.lambda.length(), r.mu.length());
  std::cout << "input:       " << r.str() << "  [weight " << r.weight() << "]\n";
  std::cout << "kept rows:   " << k << "\n";
  std::cout << "row sums:    (" << qpi::add_pointwise(r.lambda, r.mu).render() << ")\n";
  std::cout << "output:      " << a.str() << "  [weight " << a.weight() << "]\n";
  std::cout << "roundtrip:   " << (qpi::phi_inverse(a) == r ? "yes" : "NO") << "\n";
  return 0;
}

int run_trace_phi_inverse(const std::string& x, const std::string& y, const std::string& tag) {
  qpi::a_pair a(qpi::partition::parse(x), qpi::partition::parse(y),
                tag == "a1" ? qpi::a_tag::a1 : qpi::a_tag::a2);
  qpi::r_pair r = qpi::phi_inverse(a);
  std::cout << "input:     " << a.str() << "  [weight " << a.weight() << "]\n";
  std::cout << "output:    " << r.str() << "  [weight " << r.weight() << "]\n";
  std::cout << "roundtrip: " << (qpi::phi(r) == a ? "yes" : "NO") << "\n";
  return 0;
}

int run_list(const common_flags& cf) {
  if (cf.format == "json") {
    nlohmann::ordered_json j;
    j["identities"] = nlohmann::ordered_json::array();
    for (const auto& info : qpi::identity_registry()) {
      nlohmann::ordered_json ji;
      ji["id"] = info.name;
      ji["description"] = info.description;
      std::string uses = "q";
      if (info.uses_a) uses += ",a";
      if (info.uses_b) uses += ",b";
      if (info.uses_c) uses += ",c";
      ji["variables"] = uses;
      ji["left-side"] = info.lhs_enumerated ? "enumeration" : "formula";
      ji["expected"] = info.expected_match ? "match" : "known-mismatch";
      ji["note"] = info.mismatch_note;
      ji["default-window"] = {{"qmax", info.default_window.q_max},
                              {"amin", info.default_window.a_min},
                              {"amax", info.default_window.a_max},
                              {"bmax", info.default_window.b_max},
                              {"cmax", info.default_window.c_max}};
      j["identities"].push_back(std::move(ji));
    }
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& info : qpi::identity_registry()) {
    std::string uses = "q";
    if (info.uses_a) uses += ",a";
    if (info.uses_b) uses += ",b";
    if (info.uses_c) uses += ",c";
    if (cf.format == "tsv") {
      std::cout << info.name << '\t' << (info.expected_match ? "match" : "known-mismatch")
                << '\t' << uses << '\t' << (info.lhs_enumerated ? "enumeration" : "formula")
                << '\t' << info.description << '\n';
      continue;
    }
    std::cout << info.name << "\n  expected: "
              << (info.expected_match ? "match" : "known-mismatch") << "\n  variables: " << uses
              << "\n  left side: " << (info.lhs_enumerated ? "enumeration" : "formula")
              << "\n  " << info.description << "\n";
    if (!std::string(info.mismatch_note).empty())
      std::cout << "  note: " << info.mismatch_note << "\n";
  }
  return 0;
}

int run_dump(const std::string& identity, const std::string& side, const window_flags& wf,
             const common_flags& cf) {
  qpi::identity_id id = qpi::parse_identity(identity);
  const qpi::identity_info& info = qpi::identity_lookup(id);
  qpi::window w = wf.resolve(info.default_window);
  auto s = qpi::build_side(id, side == "lhs" ? qpi::formula_side::lhs : qpi::formula_side::rhs,
                           w, parse_policy(cf.policy));
  std::cout << qpi::dump_tsv(s);
  return 0;
}

int run_app(int argc, char** argv) {
  CLI::App app{
      "qpi: exact windowed q-series identities checked against brute-force enumeration"};
  app.require_subcommand(1);

  // verify
  auto* verify = app.add_subcommand("verify", "expand both sides of an identity and compare");
  std::string identity;
  verify->add_option("identity,--identity", identity, "identity id (see list-identities)")
      ->required();
  window_flags verify_w;
  verify_w.add(verify);
  common_flags verify_c;
  add_common(verify, verify_c);

  // audit-involution
  auto* ai = app.add_subcommand("audit-involution",
                                "exhaustive property audit of the triple involution");
  long long ai_weight = 10;
  ai->add_option("--weight", ai_weight, "enumerate all triples of weight <= this")
      ->check(CLI::NonNegativeNumber);
  common_flags ai_c;
  add_common(ai, ai_c);

  // audit-bijection
  auto* ab = app.add_subcommand("audit-bijection",
                                "exhaustive property audit of the pair bijection");
  long long ab_weight = 8;
  long long ab_length = 8;
  ab->add_option("--weight", ab_weight, "weight bound of both slices")
      ->check(CLI::NonNegativeNumber);
  ab->add_option("--length-cap", ab_length, "length-statistic bound of both slices")
      ->check(CLI::NonNegativeNumber);
  common_flags ab_c;
  add_common(ab, ab_c);

  // classic-check
  auto* cc = app.add_subcommand("classic-check",
                                "staircase shift between fixed-length partition sets");
  long long cc_weight = 4;
  long long cc_length = 2;
  cc->add_option("--weight", cc_weight, "weight of the source partitions")
      ->check(CLI::NonNegativeNumber);
  cc->add_option("--length-cap", cc_length, "number of parts on both sides")
      ->check(CLI::NonNegativeNumber);
  common_flags cc_c;
  add_common(cc, cc_c);

  // trace
  auto* trace = app.add_subcommand("trace", "walk one element through a map");
  trace->require_subcommand(1);
  auto* tpsi = trace->add_subcommand("psi", "apply the involution to one triple");
  std::string t_lambda, t_mu, t_gamma;
  tpsi->add_option("--lambda", t_lambda, "staircase component, e.g. \"2,1\" (empty for none)");
  tpsi->add_option("--mu", t_mu, "positive-part component");
  tpsi->add_option("--gamma", t_gamma, "positive-part component");
  auto* tphi = trace->add_subcommand("phi", "apply the pair map to (lambda, mu)");
  std::string p_lambda, p_mu;
  tphi->add_option("--lambda", p_lambda, "staircase component");
  tphi->add_option("--mu", p_mu, "free component (zeros significant)");
  auto* tinv = trace->add_subcommand("phi-inverse", "apply the inverse pair map to (x, y)");
  std::string i_x, i_y, i_tag;
  tinv->add_option("--x", i_x, "distinct positive parts");
  tinv->add_option("--y", i_y, "second component");
  tinv->add_option("--tag", i_tag, "bucket tag")->required()->check(CLI::IsMember({"a1", "a2"}));

  // diagram
  auto* diag = app.add_subcommand("diagram", "row diagram of a partition");
  std::string d_partition, d_overlay;
  auto* d_part_opt = diag->add_option("--partition", d_partition, "base partition");
  auto* d_over_opt = diag->add_option("--overlay", d_overlay, "overlay partition per row");
  d_part_opt->required();

  // list-identities
  auto* list = app.add_subcommand("list-identities", "registered identity ids and variants");
  common_flags list_c;
  add_common(list, list_c);

  // dump
  auto* dump = app.add_subcommand("dump", "TSV of one expanded side");
  std::string dump_identity, dump_side = "lhs";
  dump->add_option("identity,--identity", dump_identity, "identity id")->required();
  dump->add_option("--side", dump_side, "which side")->check(CLI::IsMember({"lhs", "rhs"}));
  window_flags dump_w;
  dump_w.add(dump);
  common_flags dump_c;
  add_common(dump, dump_c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    std::cout << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (verify->parsed()) return run_verify(identity, verify_w, verify_c);
  if (ai->parsed()) return run_audit_involution(ai_weight, ai_c);
  if (ab->parsed()) return run_audit_bijection(ab_weight, ab_length, ab_c);
  if (cc->parsed()) return run_classic(cc_weight, cc_length, cc_c);
  if (trace->parsed()) {
    if (tpsi->parsed()) return run_trace_psi(t_lambda, t_mu, t_gamma);
    if (tphi->parsed()) return run_trace_phi(p_lambda, p_mu);
    if (tinv->parsed()) return run_trace_phi_inverse(i_x, i_y, i_tag);
  }
  if (diag->parsed()) {
    std::optional<qpi::partition> overlay;
    if (d_over_opt->count()) overlay = qpi::partition::parse(d_overlay);
    std::cout << qpi::render_diagram(qpi::partition::parse(d_partition), overlay);
    return 0;
  }
  if (list->parsed()) return run_list(list_c);
  if (dump->parsed()) return run_dump(dump_identity, dump_side, dump_w, dump_c);
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_app(argc, argv);
  } catch (const qpi::overflow_error& e) {
    std::cerr << "overflow: " << e.what() << "\n";
    return 3;
  } catch (const qpi::usage_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qpi::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
