#include "qpi/report.hpp"

#include <algorithm>

#include "json.hpp"

namespace qpi {

bool run_report::all_as_expected() const {
  for (const auto& c : checks)
    if (!c.as_expected()) return false;
  return true;
}

long long run_report::passed() const {
  long long n = 0;
  for (const auto& c : checks) n += c.pass ? 1 : 0;
  return n;
}

long long run_report::failed() const {
  return static_cast<long long>(checks.size()) - passed();
}

check_outcome check_from_comparison(std::string name, const compare_result& cmp,
                                    long long max_list, bool expected_fail) {
  check_outcome c;
  c.name = std::move(name);
  c.pass = cmp.equal();
  c.expected_fail = expected_fail;
  c.examined = cmp.monomials_compared;
  c.mismatch_total = static_cast<long long>(cmp.mismatches.size());
  long long keep = std::min<long long>(max_list, c.mismatch_total);
  c.mismatches.assign(cmp.mismatches.begin(), cmp.mismatches.begin() + keep);
  return c;
}

std::string render_json(const run_report& r) {
  using json = nlohmann::ordered_json;
  json j;
  j["run"]["command"] = r.command;
  j["run"]["version"] = "1.0.0";
  j["run"]["config"] = json::object();
  for (const auto& [k, v] : r.config) j["run"]["config"][k] = v;
  j["checks"] = json::array();
  for (const auto& c : r.checks) {
    json jc;
    jc["name"] = c.name;
    jc["status"] = c.pass ? "pass" : "fail";
    jc["expected"] = c.expected_fail ? "fail" : "pass";
    jc["as_expected"] = c.as_expected();
    jc["examined"] = c.examined;
    jc["mismatches"] = json::array();
    for (const auto& m : c.mismatches) {
      json jm;
      jm["monomial"] = {{"q", m.at.q}, {"a", m.at.a}, {"b", m.at.b}, {"c", m.at.c}};
      jm["lhs"] = m.lhs;
      jm["rhs"] = m.rhs;
      jc["mismatches"].push_back(std::move(jm));
    }
    jc["mismatch_total"] = c.mismatch_total;
    jc["counterexamples"] = c.counterexamples;
    jc["counterexample_total"] = c.counterexample_total;
    jc["note"] = c.note;
    j["checks"].push_back(std::move(jc));
  }
  j["totals"]["checks"] = static_cast<long long>(r.checks.size());
  j["totals"]["passed"] = r.passed();
  j["totals"]["failed"] = r.failed();
  j["totals"]["all_as_expected"] = r.all_as_expected();
  j["totals"]["elements_examined"] = r.elements_examined;
  j["totals"]["monomials_compared"] = r.monomials_compared;
  return j.dump(2) + "\n";
}

std::string render_text(const run_report& r) {
  std::string out = "command: " + r.command + "\n";
  for (const auto& [k, v] : r.config) out += "  " + k + " = " + v + "\n";
  for (const auto& c : r.checks) {
    out += "check " + c.name + ": " + (c.pass ? "pass" : "fail");
    if (c.expected_fail) out += " (failure expected)";
    if (!c.as_expected()) out += " [UNEXPECTED]";
    out += " (examined " + std::to_string(c.examined) + ")\n";
    for (const auto& m : c.mismatches)
      out += "  at q^" + std::to_string(m.at.q) + " a^" + std::to_string(m.at.a) + " b^" +
             std::to_string(m.at.b) + " c^" + std::to_string(m.at.c) + ": lhs " +
             std::to_string(m.lhs) + " vs rhs " + std::to_string(m.rhs) + "\n";
    if (c.mismatch_total > static_cast<long long>(c.mismatches.size()))
      out += "  ... " + std::to_string(c.mismatch_total - static_cast<long long>(c.mismatches.size())) +
             " more mismatches\n";
    for (const auto& w : c.counterexamples) out += "  witness: " + w + "\n";
    if (c.counterexample_total > static_cast<long long>(c.counterexamples.size()))
      out += "  ... " +
             std::to_string(c.counterexample_total -
                            static_cast<long long>(c.counterexamples.size())) +
             " more witnesses\n";
    if (!c.note.empty()) out += "  note: " + c.note + "\n";
  }
  out += "result: ";
  out += r.all_as_expected() ? "ok" : "NOT OK";
  out += " (" + std::to_string(r.passed()) + " of " + std::to_string(r.checks.size()) +
         " checks passed";
  long long expected_failures = 0;
  for (const auto& c : r.checks)
    if (c.expected_fail) ++expected_failures;
  if (expected_failures > 0)
    out += ", " + std::to_string(expected_failures) + " failures expected";
  out += ")\n";
  return out;
}

std::string render_tsv(const run_report& r) {
  std::string out = "check\tstatus\texpected\tas_expected\texamined\tmismatches\twitnesses\n";
  for (const auto& c : r.checks) {
    out += c.name;
    out += '\t';
    out += c.pass ? "pass" : "fail";
    out += '\t';
    out += c.expected_fail ? "fail" : "pass";
    out += '\t';
    out += c.as_expected() ? "yes" : "no";
    out += '\t';
    out += std::to_string(c.examined);
    out += '\t';
    out += std::to_string(c.mismatch_total);
    out += '\t';
    out += std::to_string(c.counterexample_total);
    out += '\n';
  }
  return out;
}

std::string render_report(const run_report& r, const std::string& format) {
  if (format == "json") return render_json(r);
  if (format == "tsv") return render_tsv(r);
  if (format == "text") return render_text(r);
  throw usage_error("unknown format '" + format + "' (expected json, tsv, or text)");
}

int exit_code_for(const run_report& r) { return r.all_as_expected() ? 0 : 1; }

}  // namespace qpi
