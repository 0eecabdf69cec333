#pragma once

#include "coxdes/element.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace coxdes {

/// Seed used by every command when none is given.
inline constexpr std::uint64_t default_seed = 20200425;

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of worker/chunk `index` derived from `parent`:
/// mix64(parent ^ mix64(index + 0x9e3779b97f4a7c15)).
std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index) noexcept;

/// Seedable source. mt19937_64's output sequence is fixed by the standard and
/// bounded draws use rejection sampling, so streams are reproducible across
/// platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed = default_seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform on [0, bound).
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return (next() >> 63) != 0; }

private:
    std::mt19937_64 engine_;
};

/// Uniform element. D(n) is drawn as a random permutation with n-1 independent
/// signs, the last sign being the product of the others.
Element sample_uniform(const GroupType& g, Rng& rng);
ProductElement sample_uniform(const ProductGroup& g, Rng& rng);

struct SamplingPlan {
    std::uint64_t seed = default_seed;
    std::uint64_t chunk_size = 65536;
    unsigned workers = 1;
};

/// `count` draws of t(w). Chunk c is generated from child_seed(seed, c), so the
/// result depends only on (seed, chunk_size) and is identical for any worker count.
std::vector<int> sample_t_values(const ProductGroup& g, std::uint64_t count,
                                 const SamplingPlan& plan = {});

}  // namespace coxdes
