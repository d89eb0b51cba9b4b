#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qpi/series.hpp"

namespace qpi {

/// One named check inside a run. status is pass exactly when both witness
/// lists are empty; expected_fail marks checks that document a known
/// deviation, so a failing outcome there is the healthy one.
struct check_outcome {
  std::string name;
  bool pass = true;
  bool expected_fail = false;
  long long examined = 0;
  std::vector<mismatch> mismatches;
  long long mismatch_total = 0;
  std::vector<std::string> counterexamples;
  long long counterexample_total = 0;
  std::string note;

  bool as_expected() const { return pass == !expected_fail; }
};

struct run_report {
  std::string command;
  std::vector<std::pair<std::string, std::string>> config;
  std::vector<check_outcome> checks;
  long long elements_examined = 0;
  long long monomials_compared = 0;

  bool all_as_expected() const;
  long long passed() const;
  long long failed() const;
};

/// Converts a series comparison into a check, truncating the mismatch list
/// to max_list entries while keeping the full count.
check_outcome check_from_comparison(std::string name, const compare_result& cmp,
                                    long long max_list, bool expected_fail = false);

/// Byte-deterministic renderers: field order is fixed and no timestamps or
/// environment data are embedded.
std::string render_json(const run_report& r);
std::string render_text(const run_report& r);
std::string render_tsv(const run_report& r);
std::string render_report(const run_report& r, const std::string& format);

/// 0 when every check came out as expected, 1 otherwise.
int exit_code_for(const run_report& r);

}  // namespace qpi
