#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "ceeat/errors.hpp"

namespace ceeat {

enum class SiteKind { spin, ho };

std::uint64_t binomial(int n, int k);

/// Ordered basis of site configurations at fixed excitation number.
///
/// Spins: every site holds 0 or 1 excitation; configs are stored as bit
/// patterns with site 1 in the most significant position. HOs: occupation
/// tuples bounded by per_site_cutoff. Both listings are in decreasing
/// lexicographic order of the occupation tuple (n_1, ..., n_N), so the
/// first config always has the excitations pushed onto the leading sites.
class BasisSector {
public:
    static BasisSector enumerate(SiteKind kind, int n_sites, int n_excitations,
                                 int per_site_cutoff = -1);

    SiteKind kind() const { return kind_; }
    int n_sites() const { return n_sites_; }
    int n_excitations() const { return n_excitations_; }
    int per_site_cutoff() const { return cutoff_; }
    std::size_t size() const { return size_; }

    int occupation(std::size_t index, int site) const;
    std::vector<int> config(std::size_t index) const;

    // Rank of a configuration in this sector's ordering.
    std::size_t index_of(const std::vector<int>& config) const;
    std::size_t index_of_mask(std::uint32_t mask) const;  // spin sectors only

    std::uint32_t mask(std::size_t index) const;  // spin sectors only

    // Two sectors span the same space: kind, sites, excitations and the
    // effective cutoff (cutoffs beyond n_excitations never bind) agree.
    bool compatible(const BasisSector& other) const;

private:
    BasisSector() = default;

    SiteKind kind_ = SiteKind::spin;
    int n_sites_ = 0;
    int n_excitations_ = 0;
    int cutoff_ = 1;
    std::size_t size_ = 0;
    std::vector<std::uint32_t> spin_masks_;
    std::vector<std::uint8_t> ho_occ_;  // row-major size_ x n_sites_
};

using SectorPtr = std::shared_ptr<const BasisSector>;

SectorPtr make_sector(SiteKind kind, int n_sites, int n_excitations,
                      int per_site_cutoff = -1);

}  // namespace ceeat
