#include "qpi/diagram.hpp"

#include <algorithm>

namespace qpi {

namespace {

void append_cells(std::string& out, long long count, const char* glyph) {
  for (long long i = 0; i < count; ++i) out += glyph;
}

}  // namespace

std::string render_diagram(const partition& p, const std::optional<partition>& overlay) {
  long long rows = p.length();
  if (overlay) rows = std::max(rows, overlay->length());
  if (rows == 0) return "(empty)\n";

  std::string out;
  for (long long i = 0; i < rows; ++i) {
    long long base = i < p.length() ? p.parts()[static_cast<size_t>(i)] : 0;
    long long extra =
        overlay && i < overlay->length() ? overlay->parts()[static_cast<size_t>(i)] : 0;
    if (base == 0 && extra == 0) {
      out += "·";
    } else {
      append_cells(out, base, "█");
      append_cells(out, extra, "░");
    }
    out += "\n";
  }
  return out;
}

}  // namespace qpi
