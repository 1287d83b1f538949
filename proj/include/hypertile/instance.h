#pragma once

#include <istream>
#include <string>
#include <vector>

#include "hypertile/hypgeo.h"
#include "hypertile/tiling.h"

namespace hypertile {

/// Text format: a header line "p q n", then n lines of space-separated steps.
/// A blank step line is the origin. Lines after the n-th must be blank.
struct Instance {
    SchlafliSymbol sym;
    std::vector<Walk> walks;
};

/// Throws ParseError (with a line number) or EuclideanOrSpherical.
Instance parse_instance(std::istream& in);
Instance read_instance(const std::string& path);
std::string format_instance(const Instance& inst);

}  // namespace hypertile
