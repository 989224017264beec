#include "ceeat/basis.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace ceeat {

namespace {

constexpr int kMaxSites = 24;

std::uint64_t bounded_composition_count(int n_sites, int total, int cutoff) {
    // Number of occupation tuples of length n_sites summing to total with
    // each entry in [0, cutoff].
    if (total < 0) return 0;
    if (n_sites == 0) return total == 0 ? 1 : 0;
    std::vector<std::uint64_t> count(static_cast<std::size_t>(total) + 1, 0);
    count[0] = 1;
    for (int s = 0; s < n_sites; ++s) {
        std::vector<std::uint64_t> next(count.size(), 0);
        for (int t = 0; t <= total; ++t) {
            if (count[t] == 0) continue;
            for (int v = 0; v <= cutoff && t + v <= total; ++v)
                next[t + v] += count[t];
        }
        count.swap(next);
    }
    return count[total];
}

}  // namespace

std::uint64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        result = result * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return result;
}

BasisSector BasisSector::enumerate(SiteKind kind, int n_sites, int n_excitations,
                                   int per_site_cutoff) {
    if (n_sites < 1 || n_sites > kMaxSites)
        throw InvalidArgument("n_sites must be in [1, " + std::to_string(kMaxSites) + "]");
    if (n_excitations < 0) throw InvalidArgument("n_excitations must be non-negative");

    BasisSector sector;
    sector.kind_ = kind;
    sector.n_sites_ = n_sites;
    sector.n_excitations_ = n_excitations;

    if (kind == SiteKind::spin) {
        if (per_site_cutoff > 1)
            throw InvalidArgument("spin sites hold at most one excitation");
        if (n_excitations > n_sites)
            throw InvalidArgument("spin sector requires n_excitations <= n_sites");
        sector.cutoff_ = 1;
        // Decreasing numeric order of the bit pattern (site 1 = MSB) is
        // exactly decreasing lexicographic order of the occupation tuple.
        sector.spin_masks_.reserve(binomial(n_sites, n_excitations));
        for (std::int64_t m = (std::int64_t{1} << n_sites) - 1; m >= 0; --m) {
            if (std::popcount(static_cast<std::uint32_t>(m)) == n_excitations)
                sector.spin_masks_.push_back(static_cast<std::uint32_t>(m));
        }
        sector.size_ = sector.spin_masks_.size();
    } else {
        int cutoff = per_site_cutoff;
        if (cutoff < 0) cutoff = std::max(1, n_excitations);
        if (cutoff < 1) throw InvalidArgument("per_site_cutoff must be positive");
        if (n_excitations > n_sites * cutoff)
            throw InvalidArgument("HO sector requires n_excitations <= n_sites * per_site_cutoff");
        sector.cutoff_ = cutoff;
        // Recursive descent emits tuples in decreasing lexicographic order.
        std::vector<int> current(n_sites, 0);
        auto rec = [&](auto&& self, int site, int remaining) -> void {
            if (site == n_sites - 1) {
                if (remaining <= cutoff) {
                    current[site] = remaining;
                    for (int v : current) sector.ho_occ_.push_back(static_cast<std::uint8_t>(v));
                }
                return;
            }
            for (int v = std::min(cutoff, remaining); v >= 0; --v) {
                current[site] = v;
                self(self, site + 1, remaining - v);
            }
        };
        rec(rec, 0, n_excitations);
        sector.size_ = sector.ho_occ_.size() / static_cast<std::size_t>(n_sites);
    }
    return sector;
}

int BasisSector::occupation(std::size_t index, int site) const {
    if (kind_ == SiteKind::spin) {
        return (spin_masks_[index] >> (n_sites_ - 1 - site)) & 1u;
    }
    return ho_occ_[index * static_cast<std::size_t>(n_sites_) + static_cast<std::size_t>(site)];
}

std::vector<int> BasisSector::config(std::size_t index) const {
    std::vector<int> c(n_sites_);
    for (int s = 0; s < n_sites_; ++s) c[s] = occupation(index, s);
    return c;
}

std::uint32_t BasisSector::mask(std::size_t index) const {
    if (kind_ != SiteKind::spin) throw InvalidArgument("mask() is spin-only");
    return spin_masks_[index];
}

std::size_t BasisSector::index_of_mask(std::uint32_t m) const {
    if (kind_ != SiteKind::spin) throw InvalidArgument("index_of_mask() is spin-only");
    // Masks are listed in decreasing numeric order: rank = number of masks
    // with the same popcount that are numerically greater.
    std::uint64_t rank = 0;
    int ones_used = 0;
    for (int bit = n_sites_ - 1; bit >= 0; --bit) {
        bool set = (m >> bit) & 1u;
        if (!set) {
            // masks that agree above, have a 1 here, and distribute the
            // remaining ones below
            int ones_left = n_excitations_ - ones_used - 1;
            if (ones_left >= 0) rank += binomial(bit, ones_left);
        } else {
            ++ones_used;
        }
    }
    return static_cast<std::size_t>(rank);
}

std::size_t BasisSector::index_of(const std::vector<int>& config) const {
    if (static_cast<int>(config.size()) != n_sites_)
        throw InvalidArgument("config length does not match n_sites");
    if (kind_ == SiteKind::spin) {
        std::uint32_t m = 0;
        for (int s = 0; s < n_sites_; ++s) {
            if (config[s] != 0 && config[s] != 1)
                throw InvalidArgument("spin occupation must be 0 or 1");
            if (config[s]) m |= 1u << (n_sites_ - 1 - s);
        }
        return index_of_mask(m);
    }
    // HO: count configs that precede this one in decreasing lex order.
    std::uint64_t rank = 0;
    int remaining = n_excitations_;
    for (int s = 0; s < n_sites_; ++s) {
        int v = config[s];
        if (v < 0 || v > cutoff_) throw InvalidArgument("occupation outside [0, cutoff]");
        for (int w = std::min(cutoff_, remaining); w > v; --w)
            rank += bounded_composition_count(n_sites_ - 1 - s, remaining - w, cutoff_);
        remaining -= v;
    }
    if (remaining != 0) throw InvalidArgument("config does not sum to n_excitations");
    return static_cast<std::size_t>(rank);
}

bool BasisSector::compatible(const BasisSector& other) const {
    if (kind_ != other.kind_ || n_sites_ != other.n_sites_ ||
        n_excitations_ != other.n_excitations_)
        return false;
    if (kind_ == SiteKind::ho) {
        int eff_a = std::min(cutoff_, n_excitations_);
        int eff_b = std::min(other.cutoff_, other.n_excitations_);
        return eff_a == eff_b;
    }
    return true;
}

SectorPtr make_sector(SiteKind kind, int n_sites, int n_excitations, int per_site_cutoff) {
    return std::make_shared<const BasisSector>(
        BasisSector::enumerate(kind, n_sites, n_excitations, per_site_cutoff));
}

}  // namespace ceeat
