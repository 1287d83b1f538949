#include "hypertile/config.h"

#include <cstdlib>
#include <string>

#include "hypertile/errors.h"

namespace hypertile {

namespace {

bool read_env(const char* name, double& out) {
    const char* raw = std::getenv(name);
    if (raw == nullptr || *raw == '\0') return false;
    try {
        std::size_t used = 0;
        const double v = std::stod(raw, &used);
        if (used != std::string(raw).size() || !(v > 0)) throw std::invalid_argument(name);
        out = v;
    } catch (const std::exception&) {
        fail(ErrorKind::ParseError, std::string("bad value for ") + name + ": " + raw);
    }
    return true;
}

}  // namespace

Config Config::from_env() {
    Config c;
    read_env("HYPERTILE_EPS_INC", c.eps_inc);
    read_env("HYPERTILE_EPS_KEY", c.eps_key);
    read_env("HYPERTILE_RMAX", c.r_max);
    double cap = 0;
    if (read_env("HYPERTILE_PATCH_CAP", cap)) c.patch_cap = static_cast<std::size_t>(cap);
    return c;
}

}  // namespace hypertile
