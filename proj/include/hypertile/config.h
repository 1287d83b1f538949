#pragma once

#include <cstddef>

namespace hypertile {

/// Numeric and resource policy. Every field can be overridden through the
/// environment (see from_env) or by the CLI flags.
struct Config {
    /// Incidence tolerance: a point whose sinh-distance from a line is below
    /// this value is treated as lying on it.
    double eps_inc = 1e-9;
    /// Grid resolution for vertex keys, in Poincare-disk units (2^-46).
    double eps_key = 1.4210854715202004e-14;
    /// Largest supported hyperbolic distance from the origin.
    double r_max = 25.0;
    /// Largest explicit patch, in vertices.
    std::size_t patch_cap = 2000000;
    /// Largest tree-decomposition width accepted by the DP solvers.
    int width_cap = 18;

    /// Defaults overridden by HYPERTILE_EPS_INC, HYPERTILE_EPS_KEY,
    /// HYPERTILE_RMAX and HYPERTILE_PATCH_CAP when set.
    static Config from_env();
};

}  // namespace hypertile
