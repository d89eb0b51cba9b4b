#pragma once

#include <optional>
#include <string>

#include "qpi/partition.hpp"

namespace qpi {

/// Row diagram of a partition: one line per part, solid blocks for cells.
/// Zero parts matter (they record rows of length zero) and are drawn as a
/// single middle-dot marker. With an overlay, row i shows the base cells as
/// solid blocks followed by the overlay's cells as shaded blocks, rows
/// running to the longer of the two; the empty diagram is a caption line.
std::string render_diagram(const partition& p,
                           const std::optional<partition>& overlay = std::nullopt);

}  // namespace qpi
