#pragma once

#include <stdexcept>
#include <string>

namespace qpi {

/// Bad configuration or a window that cannot support the requested
/// computation. CLI maps this to exit code 2.
class usage_error : public std::runtime_error {
 public:
  explicit usage_error(const std::string& what) : std::runtime_error(what) {}
};

/// Input outside an operation's mathematical domain (invalid partition text,
/// pair violating an invariant, ...). Also exit code 2 at the CLI.
class domain_error : public std::runtime_error {
 public:
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

/// Fixed-width coefficient arithmetic would have wrapped. Coefficients are
/// exact by contract, so the run aborts instead of continuing with garbage.
class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace qpi
