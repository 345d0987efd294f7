#pragma once

#include <cstdint>
#include <random>

namespace dnls {

/// splitmix64 mixing step; used to derive per-sample sub-seeds.
std::uint64_t mix64(std::uint64_t x);

/// Sub-seed for ensemble member `index` of a run seeded with `master`.
/// Streams are independent of execution order and of sweep position.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct SeedRecord {
    std::uint64_t master = 0;
    std::uint64_t sample = 0;
};

enum class CoeffDist { UniformSym, Normal };

/// Deterministic random stream. Distributions are implemented on top of the
/// raw 64-bit output (mt19937_64 is bit-specified by the standard), so draws
/// are reproducible across platforms and standard libraries.
class SampleRng {
  public:
    explicit SampleRng(std::uint64_t seed)
        : gen_(seed), record_{seed, 0} {}

    static SampleRng for_sample(std::uint64_t master, std::uint64_t index) {
        SampleRng r(derive_seed(master, index));
        r.record_ = {master, index};
        return r;
    }

    const SeedRecord& record() const { return record_; }

    std::uint64_t next_u64() { return gen_(); }

    /// Uniform on [0, 1).
    double uniform_unit() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform on [-1, 1).
    double uniform_sym() { return 2.0 * uniform_unit() - 1.0; }

    /// Standard normal via Box-Muller (deterministic draw order).
    double normal();

  private:
    std::mt19937_64 gen_;
    SeedRecord record_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

} // namespace dnls
