#pragma once

#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qpi/errors.hpp"

namespace qpi {

/// Largest part of the empty partition: a(∅) = 0.
/// Smallest part of the empty partition: s(∅) = +∞, represented by this
/// sentinel so comparisons like a(Y) < s(X) work without special cases.
inline constexpr long long k_smallest_of_empty = std::numeric_limits<long long>::max();

/// A weakly decreasing finite sequence of non-negative integers.
/// Trailing zero parts are significant: (2,0) != (2), and both length and
/// enumeration identity distinguish them.
class partition {
 public:
  partition() = default;
  explicit partition(std::vector<long long> parts);

  /// Parses "p1,p2,...,pk" (weakly decreasing); "" is the empty partition.
  static partition parse(std::string_view text);

  const std::vector<long long>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  long long length() const { return static_cast<long long>(parts_.size()); }
  long long weight() const;
  long long largest() const { return parts_.empty() ? 0 : parts_.front(); }
  long long smallest() const { return parts_.empty() ? k_smallest_of_empty : parts_.back(); }

  /// Canonical text form: comma-joined parts, no spaces; ∅ renders as "".
  std::string render() const;

  friend bool operator==(const partition&, const partition&) = default;
  friend bool operator<(const partition& a, const partition& b) { return a.parts_ < b.parts_; }

 private:
  std::vector<long long> parts_;
};

struct partition_stats {
  long long length;
  long long weight;
  long long largest;
  long long smallest;
};

partition_stats stats(const partition& p);

enum class partition_class {
  positive_parts,    // every part >= 1
  zeros_allowed,     // parts >= 0, trailing zeros significant
  distinct_positive, // strictly decreasing, all parts >= 1
  triangular,        // (n, n-1, ..., 1) for some n >= 0
};

bool is_member(const partition& p, partition_class cls);

/// The staircase (n, n-1, ..., 1); n = 0 gives ∅.
partition triangular(long long n);

/// Pointwise sum: result[i] = a[i] + b[i], missing parts read as 0;
/// length is max(ℓa, ℓb).
partition add_pointwise(const partition& a, const partition& b);

/// Copy with all zero parts removed.
partition strip_zeros(const partition& p);

/// All partitions of the given class with weight <= weight_max, in
/// deterministic order: weight ascending, then length ascending, then parts
/// lexicographically descending. zeros_allowed requires length_max (the set
/// is otherwise infinite); for the other classes the cap is an extra filter.
std::vector<partition> enumerate_partitions(long long weight_max, partition_class cls,
                                            std::optional<long long> length_max = std::nullopt);

/// Independent counting oracle: number of partitions of n into positive
/// parts, by the classic dp recurrence (no enumeration).
long long count_partitions(long long n);

}  // namespace qpi
