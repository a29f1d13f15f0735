// itforms - deterministic sampling for randomized identity checks.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "errors.hpp"

namespace itforms {

struct Interval {
    double lo = -1.0;
    double hi = 1.0;
};

// Deterministic uniform sampler. mt19937_64's output stream is pinned by the
// standard; the manual mapping below avoids std::uniform_real_distribution,
// whose results may differ between standard-library implementations.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    double unit() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    double uniform(const Interval& iv) { return uniform(iv.lo, iv.hi); }

    std::uint64_t next_raw() { return eng_(); }

private:
    std::mt19937_64 eng_;
};

// Per-coordinate intervals plus the knobs of the randomized equality check.
// The sampler is always seeded explicitly; there is no ambient RNG state.
struct SamplingDomain {
    std::vector<Interval> intervals;
    int trials = 32;
    double tol = 1e-9;
    std::uint64_t seed = 20240001ull;

    std::size_t dimension() const { return intervals.size(); }

    std::vector<double> sample(SampleRng& rng) const {
        std::vector<double> p(intervals.size());
        for (std::size_t i = 0; i < intervals.size(); ++i) p[i] = rng.uniform(intervals[i]);
        return p;
    }
};

inline std::vector<std::vector<double>> sample_points(const SamplingDomain& dom, int count,
                                                      std::uint64_t seed) {
    SampleRng rng(seed);
    std::vector<std::vector<double>> pts;
    pts.reserve(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) pts.push_back(dom.sample(rng));
    return pts;
}

}  // namespace itforms
