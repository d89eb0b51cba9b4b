#include "qpi/partition.hpp"

#include <algorithm>
#include <charconv>

#include "qpi/errors.hpp"

namespace qpi {

partition::partition(std::vector<long long> parts) : parts_(std::move(parts)) {
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0)
      throw domain_error("partition part " + std::to_string(i + 1) + " is negative");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw domain_error("partition parts increase at index " + std::to_string(i + 1) + ": " +
                         std::to_string(parts_[i - 1]) + " < " + std::to_string(parts_[i]));
  }
}

partition partition::parse(std::string_view text) {
  // Trim outer whitespace; an all-blank string is the empty partition.
  size_t b = text.find_first_not_of(" \t");
  if (b == std::string_view::npos) return partition{};
  size_t e = text.find_last_not_of(" \t");
  text = text.substr(b, e - b + 1);

  std::vector<long long> parts;
  size_t pos = 0;
  size_t index = 0;
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string_view tok = text.substr(pos, comma == std::string_view::npos ? comma : comma - pos);
    ++index;
    size_t tb = tok.find_first_not_of(" \t");
    if (tb == std::string_view::npos)
      throw domain_error("empty token at position " + std::to_string(index) + " in partition text");
    size_t te = tok.find_last_not_of(" \t");
    tok = tok.substr(tb, te - tb + 1);
    long long value = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (ec != std::errc{} || p != tok.data() + tok.size())
      throw domain_error("non-integer token '" + std::string(tok) + "' at position " +
                         std::to_string(index) + " in partition text");
    if (value < 0)
      throw domain_error("negative part at position " + std::to_string(index) + " in partition text");
    if (!parts.empty() && value > parts.back())
      throw domain_error("parts increase at position " + std::to_string(index) + ": " +
                         std::to_string(parts.back()) + " < " + std::to_string(value));
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
    if (pos == text.size())
      throw domain_error("trailing comma in partition text");
  }
  return partition(std::move(parts));
}

long long partition::weight() const {
  long long w = 0;
  for (long long p : parts_) w += p;
  return w;
}

std::string partition::render() const {
  std::string out;
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (i) out.push_back(',');
    out += std::to_string(parts_[i]);
  }
  return out;
}

partition_stats stats(const partition& p) {
  return partition_stats{p.length(), p.weight(), p.largest(), p.smallest()};
}

bool is_member(const partition& p, partition_class cls) {
  const auto& v = p.parts();
  switch (cls) {
    case partition_class::positive_parts:
      return std::all_of(v.begin(), v.end(), [](long long x) { return x >= 1; });
    case partition_class::zeros_allowed:
      return true;  // the constructor already enforces weak decrease and >= 0
    case partition_class::distinct_positive:
      for (size_t i = 0; i < v.size(); ++i) {
        if (v[i] < 1) return false;
        if (i > 0 && v[i] >= v[i - 1]) return false;
      }
      return true;
    case partition_class::triangular:
      for (size_t i = 0; i < v.size(); ++i)
        if (v[i] != static_cast<long long>(v.size() - i)) return false;
      return true;
  }
  return false;
}

partition triangular(long long n) {
  if (n < 0) throw domain_error("triangular index must be >= 0");
  std::vector<long long> parts;
  parts.reserve(static_cast<size_t>(n));
  for (long long k = n; k >= 1; --k) parts.push_back(k);
  return partition(std::move(parts));
}

partition add_pointwise(const partition& a, const partition& b) {
  const auto& u = a.parts();
  const auto& v = b.parts();
  std::vector<long long> out(std::max(u.size(), v.size()), 0);
  for (size_t i = 0; i < u.size(); ++i) out[i] += u[i];
  for (size_t i = 0; i < v.size(); ++i) out[i] += v[i];
  return partition(std::move(out));
}

partition strip_zeros(const partition& p) {
  std::vector<long long> parts;
  for (long long x : p.parts())
    if (x != 0) parts.push_back(x);
  return partition(std::move(parts));
}

namespace {

// Positive partitions of exactly `w` with parts <= cap, first part descending
// (lexicographically descending within the weight class).
void gen_positive(long long w, long long cap, std::vector<long long>& acc,
                  std::vector<partition>& out) {
  if (w == 0) {
    out.push_back(partition(acc));
    return;
  }
  for (long long first = std::min(w, cap); first >= 1; --first) {
    acc.push_back(first);
    gen_positive(w - first, first, acc, out);
    acc.pop_back();
  }
}

void gen_distinct(long long w, long long cap, std::vector<long long>& acc,
                  std::vector<partition>& out) {
  if (w == 0) {
    out.push_back(partition(acc));
    return;
  }
  for (long long first = std::min(w, cap); first >= 1; --first) {
    acc.push_back(first);
    gen_distinct(w - first, first - 1, acc, out);
    acc.pop_back();
  }
}

// Order: weight asc, then length asc, then parts lexicographically descending.
bool enumeration_less(const partition& a, const partition& b) {
  long long wa = a.weight(), wb = b.weight();
  if (wa != wb) return wa < wb;
  if (a.length() != b.length()) return a.length() < b.length();
  return b.parts() < a.parts();
}

}  // namespace

std::vector<partition> enumerate_partitions(long long weight_max, partition_class cls,
                                            std::optional<long long> length_max) {
  if (weight_max < 0) throw usage_error("weight_max must be >= 0");
  if (cls == partition_class::zeros_allowed && !length_max)
    throw usage_error("zeros_allowed enumeration requires a length cap");
  if (length_max && *length_max < 0) throw usage_error("length cap must be >= 0");

  std::vector<partition> out;
  switch (cls) {
    case partition_class::positive_parts:
    case partition_class::distinct_positive: {
      std::vector<long long> acc;
      for (long long w = 0; w <= weight_max; ++w) {
        if (cls == partition_class::positive_parts)
          gen_positive(w, w, acc, out);
        else
          gen_distinct(w, w, acc, out);
      }
      break;
    }
    case partition_class::zeros_allowed: {
      // Each element is a positive partition padded with any number of zeros,
      // subject to the total length cap.
      std::vector<partition> bases;
      std::vector<long long> acc;
      for (long long w = 0; w <= weight_max; ++w) gen_positive(w, w, acc, bases);
      for (const auto& base : bases) {
        if (base.length() > *length_max) continue;
        for (long long zeros = 0; base.length() + zeros <= *length_max; ++zeros) {
          std::vector<long long> parts = base.parts();
          parts.insert(parts.end(), static_cast<size_t>(zeros), 0);
          out.push_back(partition(std::move(parts)));
        }
      }
      break;
    }
    case partition_class::triangular: {
      for (long long n = 0; n * (n + 1) / 2 <= weight_max; ++n) out.push_back(triangular(n));
      break;
    }
  }
  if (length_max && cls != partition_class::zeros_allowed) {
    std::erase_if(out, [&](const partition& p) { return p.length() > *length_max; });
  }
  std::sort(out.begin(), out.end(), enumeration_less);
  return out;
}

long long count_partitions(long long n) {
  if (n < 0) return 0;
  // table[m] = number of partitions of m with parts <= current k
  std::vector<long long> table(static_cast<size_t>(n) + 1, 0);
  table[0] = 1;
  for (long long k = 1; k <= n; ++k)
    for (long long m = k; m <= n; ++m) table[static_cast<size_t>(m)] += table[static_cast<size_t>(m - k)];
  return table[static_cast<size_t>(n)];
}

}  // namespace qpi
