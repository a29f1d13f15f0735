// itforms - coordinate charts.
#pragma once

#include <string>
#include <vector>

#include "errors.hpp"
#include "sampling.hpp"

namespace itforms {

// An ordered list of coordinate names together with the sampling domain used
// by randomized identity checks on this chart.
struct Chart {
    std::vector<std::string> coords;
    SamplingDomain domain;

    Chart() = default;
    Chart(std::vector<std::string> names, SamplingDomain dom)
        : coords(std::move(names)), domain(std::move(dom)) {
        validate();
    }

    int dim() const { return static_cast<int>(coords.size()); }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < coords.size(); ++i)
            if (coords[i] == name) return static_cast<int>(i);
        return -1;
    }

    void validate() const {
        if (coords.empty()) throw ModelError("chart must have at least one coordinate");
        for (std::size_t i = 0; i < coords.size(); ++i) {
            if (coords[i].empty()) throw ModelError("chart coordinate name must be nonempty");
            for (std::size_t j = i + 1; j < coords.size(); ++j)
                if (coords[i] == coords[j])
                    throw ModelError("duplicate chart coordinate '" + coords[i] + "'");
        }
        if (domain.intervals.size() != coords.size())
            throw ModelError("sampling domain dimension does not match chart dimension");
        for (const auto& iv : domain.intervals)
            if (!(iv.lo <= iv.hi)) throw ModelError("empty sampling interval in chart domain");
        if (domain.trials < 1) throw ModelError("sampling trial count must be >= 1");
    }
};

inline Chart make_chart(std::vector<std::string> names, std::vector<Interval> boxes,
                        int trials = 32, double tol = 1e-9, std::uint64_t seed = 20240001ull) {
    SamplingDomain dom;
    dom.intervals = std::move(boxes);
    dom.trials = trials;
    dom.tol = tol;
    dom.seed = seed;
    return Chart(std::move(names), std::move(dom));
}

}  // namespace itforms
