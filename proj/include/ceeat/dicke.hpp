#pragma once

#include <map>
#include <vector>

#include "ceeat/operators.hpp"

namespace ceeat {

/// Collective spin labels |N, l, m>: total-spin quantum number l' = l - N/2,
/// m excitations. Valid range: N >= l >= N/2 and N - l <= m <= l.
struct SpinDickeLabel {
    int n_sites = 0;
    int ladder = 0;       // l
    int excitations = 0;  // m

    void validate() const;
};

/// Collective HO labels |N, R, d>: R excitations in the bright mode, dark
/// occupation vector d of length N - 1.
struct HODickeLabel {
    int n_sites = 0;
    int bright = 0;  // R
    std::vector<int> dark;

    int total_excitations() const;
    void validate() const;
};

/// Number of orthogonal multiplets with quantum number l in any compatible
/// excitation sector of N spins.
int multiplet_multiplicity(int n_sites, int ladder);

/// J^2 = Jx^2 + Jy^2 + Jz^2 restricted to the m-excitation sector, built
/// from the explicit collective operators on the direct sum of all sectors.
Eigen::MatrixXcd j_squared_sector(int n_sites, int n_excitations);

/// Orthonormal basis of the (l, m) eigenspace, deterministic across runs:
/// canonical projection of site-basis vectors with a fixed sign convention.
std::vector<StateVector> spin_multiplet_basis(int n_sites, int ladder, int n_excitations);

/// All multiplet bases of the m-excitation sector keyed by l.
std::map<int, std::vector<StateVector>> spin_sector_multiplets(int n_sites, int n_excitations);

StateVector spin_dicke_state(const SpinDickeLabel& label, int degeneracy_index = 0);

/// |N, R, d> built by applying collective creation operators to the vacuum.
StateVector ho_collective_state(const HODickeLabel& label);

/// Same, but re-expressed in a sector with the given per-site cutoff;
/// throws TruncationOverflow if the cutoff would clip amplitudes.
StateVector ho_collective_state(const HODickeLabel& label, int per_site_cutoff);

/// Inverse sum of fourth powers of the site-configuration amplitudes:
/// 1 for a localized state, up to the sector size for a flat one.
double participation_ratio(const StateVector& state);

}  // namespace ceeat
