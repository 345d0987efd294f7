#include "dnls/grid.hpp"

#include "dnls/errors.hpp"

#include <numbers>

namespace dnls {

namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

} // namespace

TorusGrid::TorusGrid(double half_length, int n_points)
    : half_length_(half_length), n_points_(n_points),
      mesh_(2.0 * half_length / n_points) {
    if (!(half_length > 0.0))
        throw ConfigError("torus half-length must be positive");
    if (n_points < 2 || n_points % 2 != 0 || !is_pow2(n_points))
        throw ConfigError("grid size must be an even power of two");
}

double TorusGrid::frequency(int l) const {
    return std::numbers::pi * l / half_length_;
}

} // namespace dnls
