#pragma once

#include <cstdint>
#include <random>

namespace tfsdr {

/// Seeded generator with in-repo distribution transforms.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard library distributions are implementation-defined,
/// so uniform and normal variates are derived here instead.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();

    /// Standard normal via the Marsaglia polar method.
    double normal();

    /// 1 with probability `p`, else 0.
    int bernoulli(double p) { return uniform() < p ? 1 : 0; }

private:
    std::mt19937_64 engine_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

/// SplitMix64 finalizer, used to decorrelate derived seeds.
std::uint64_t mix64(std::uint64_t x);

/// Named substreams of one replicate. Each stream is independent, so adding
/// a consumer to one never shifts the draws of another.
enum class Stream : std::uint64_t {
    predictors = 1,
    mixture = 2,
    noise = 3,
    tf2_init = 4,
};

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate, Stream stream);

struct ReplicateStreams {
    Rng predictors;
    Rng mixture;
    Rng noise;
    std::uint64_t tf2_seed;

    ReplicateStreams(std::uint64_t master, std::uint64_t replicate)
        : predictors(derive_seed(master, replicate, Stream::predictors)),
          mixture(derive_seed(master, replicate, Stream::mixture)),
          noise(derive_seed(master, replicate, Stream::noise)),
          tf2_seed(derive_seed(master, replicate, Stream::tf2_init)) {}
};

}  // namespace tfsdr
