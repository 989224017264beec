#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

namespace ceeat {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Counter-based stream key: the same (seed, cell, trajectory, site) tuple
/// always yields the same stream, independent of scheduling.
inline std::uint64_t derive_stream_key(std::uint64_t base_seed, std::uint64_t cell,
                                       std::uint64_t trajectory, std::uint64_t site) {
    std::uint64_t k = splitmix64(base_seed ^ 0x43ea2f39c57ab11dULL);
    k = splitmix64(k ^ cell);
    k = splitmix64(k ^ (trajectory * 0x9e3779b97f4a7c15ULL));
    k = splitmix64(k ^ (site * 0xc2b2ae3d27d4eb4fULL));
    return k;
}

/// Deterministic Gaussian/uniform stream. The engine and both transforms
/// are fully specified here, so replay is bit-identical for a given key.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : eng_(key) {}

    RngStream(std::uint64_t base_seed, std::uint64_t cell, std::uint64_t trajectory,
              std::uint64_t site)
        : eng_(derive_stream_key(base_seed, cell, trajectory, site)) {}

    // uniform in (0, 1]: 53-bit mantissa, never exactly zero
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 1.0) * 0x1.0p-53;
    }

    // standard normal via Box-Muller, pairs cached
    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double phi = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(phi);
        has_spare_ = true;
        return r * std::cos(phi);
    }

private:
    std::mt19937_64 eng_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace ceeat
