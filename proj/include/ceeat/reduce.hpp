#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace ceeat {

/// Fixed-order pairwise summation: the result depends only on the element
/// order, never on how the values were produced.
inline double pairwise_sum(std::span<const double> values) {
    if (values.size() <= 8) {
        double s = 0.0;
        for (double v : values) s += v;
        return s;
    }
    std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

struct MeanStderr {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
};

inline MeanStderr mean_and_stderr(std::span<const double> values) {
    MeanStderr out;
    out.n = static_cast<int>(values.size());
    if (values.empty()) return out;
    out.mean = pairwise_sum(values) / double(values.size());
    if (values.size() < 2) return out;
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.stderr_ = std::sqrt(ss / double(values.size() - 1)) / std::sqrt(double(values.size()));
    return out;
}

}  // namespace ceeat
