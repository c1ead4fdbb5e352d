#pragma once

#include <filesystem>

#include "monoeit/engine.hpp"
#include "monoeit/phantom.hpp"

namespace monoeit {

/// Renders accepted hexagons colored by their smallest test eigenvalue,
/// with the unit circle and (when given) the phantom outline in black.
void render_svg(const ReconResult& result, const Phantom* phantom,
                const std::filesystem::path& file);

}  // namespace monoeit
