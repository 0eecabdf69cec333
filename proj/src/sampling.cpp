#include "coxdes/sampling.hpp"

#include <algorithm>
#include <future>
#include <numeric>

namespace coxdes {

std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t child_seed(std::uint64_t parent, std::uint64_t index) noexcept {
    return mix64(parent ^ mix64(index + 0x9e3779b97f4a7c15ULL));
}

std::uint64_t Rng::below(std::uint64_t bound) {
    // Reject the top partial block so every residue is equally likely.
    const std::uint64_t limit = -bound % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x < limit);
    return x % bound;
}

namespace {

void shuffle_window(std::vector<int>& data, Rng& rng) {
    for (std::size_t i = data.size(); i > 1; --i) std::swap(data[i - 1], data[rng.below(i)]);
}

}  // namespace

Element sample_uniform(const GroupType& g, Rng& rng) {
    Element w = identity(g);
    switch (g.family()) {
        case Family::A: shuffle_window(w.data, rng); break;
        case Family::B:
            shuffle_window(w.data, rng);
            for (int& v : w.data)
                if (rng.coin()) v = -v;
            break;
        case Family::D: {
            shuffle_window(w.data, rng);
            bool odd = false;
            for (std::size_t i = 0; i + 1 < w.data.size(); ++i) {
                if (rng.coin()) {
                    w.data[i] = -w.data[i];
                    odd = !odd;
                }
            }
            if (odd) w.data.back() = -w.data.back();
            break;
        }
        case Family::I2: {
            const auto draw = rng.below(2 * static_cast<std::uint64_t>(g.parameter()));
            w.data = {static_cast<int>(draw % 2), static_cast<int>(draw / 2)};
            break;
        }
    }
    return w;
}

ProductElement sample_uniform(const ProductGroup& g, Rng& rng) {
    ProductElement w;
    w.factors.reserve(g.factors.size());
    for (const auto& f : g.factors) w.factors.push_back(sample_uniform(f, rng));
    return w;
}

std::vector<int> sample_t_values(const ProductGroup& g, std::uint64_t count,
                                 const SamplingPlan& plan) {
    const std::uint64_t chunk = std::max<std::uint64_t>(plan.chunk_size, 1);
    const std::uint64_t chunks = (count + chunk - 1) / chunk;
    std::vector<int> out(count);
    auto run_chunk = [&](std::uint64_t c) {
        Rng rng(child_seed(plan.seed, c));
        const std::uint64_t begin = c * chunk;
        const std::uint64_t end = std::min(count, begin + chunk);
        for (std::uint64_t i = begin; i < end; ++i) out[i] = t_statistic(sample_uniform(g, rng));
    };
    const unsigned workers = std::max(1u, plan.workers);
    if (workers == 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
        return out;
    }
    std::vector<std::future<void>> jobs;
    for (unsigned wk = 0; wk < workers; ++wk) {
        jobs.push_back(std::async(std::launch::async, [&, wk] {
            for (std::uint64_t c = wk; c < chunks; c += workers) run_chunk(c);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace coxdes
