#pragma once

// Debug drawings of arcs in the disc. Output only; nothing reads these back.

#include <string>
#include <utility>
#include <vector>

#include "lefbench/planar.hpp"

namespace lefbench::svg {

using NamedArc = std::pair<std::string, planar::PlanarArc>;

/// Unit circle, punctures and arcs as plain <path> elements.
std::string render(const planar::DiscModel& disc, const std::vector<NamedArc>& arcs);

}  // namespace lefbench::svg
