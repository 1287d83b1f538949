#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "hypertile/instance.h"
#include "hypertile/solver.h"

namespace hypertile::cli {

/// Runs one command line (program name excluded). Results go to out as JSON,
/// diagnostics to err. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

enum class Layer { Tiles, Closure, Solution, Terminals };

struct RenderOptions {
    Model model = Model::Poincare;
    std::vector<Layer> layers{Layer::Tiles, Layer::Closure, Layer::Solution, Layer::Terminals};
    int tile_hops = 2;  // tiling drawn around the closure
};

/// Static SVG 1.1 figure of an instance in the unit disk.
std::string render_svg(const Tiling& t, const Instance& inst, const RenderOptions& opts);

}  // namespace hypertile::cli
