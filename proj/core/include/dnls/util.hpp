#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>

namespace dnls {

/// FNV-1a 64-bit hash; used for content-addressed caching and report ids.
std::uint64_t fnv1a64(std::string_view data);

std::string to_hex(std::uint64_t v);

/// Pairwise (cascade) summation; order-independent aggregation helper.
double pairwise_sum(std::span<const double> xs);

/// Shortest round-trip decimal form (printf %.17g); deterministic output
/// formatting for CSV/JSON.
std::string format_double(double v);

} // namespace dnls
