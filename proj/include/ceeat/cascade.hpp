#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "ceeat/basis.hpp"

namespace ceeat {

/// Emission ladder: per-step rates in units of gamma0. Spins use the fully
/// symmetric ladder gamma_m = m(N-m+1); HOs use gamma_R = N*R.
struct LadderSpec {
    SiteKind kind = SiteKind::spin;
    int n_sites = 0;
    int max_level = 0;
    std::vector<double> rates;  // rates[level], level = 0..max_level, rates[0] = 0

    double rate(int level) const { return rates[static_cast<std::size_t>(level)]; }
};

/// max_level defaults to N for spins and must be given for HOs (callers
/// typically use 4*R0; levels above the initial one never populate).
LadderSpec ladder_rates(SiteKind kind, int n_sites, int max_level = -1);

struct PopulationTrajectory {
    std::vector<double> times;                     // units 1/gamma0
    std::vector<std::vector<double>> populations;  // populations[t][level]
    std::vector<double> gamma;                     // sum_m p_m gamma_m
    double integrated_emission = 0.0;              // integral of gamma over [0, t_final]
};

/// Pauli master equation down the ladder: dp_m/dt = g_{m+1} p_{m+1} - g_m p_m,
/// integrated with adaptive Runge-Kutta to absolute tolerance 1e-10 and
/// sampled on a uniform grid of n_steps+1 points.
PopulationTrajectory evolve_cascade(const LadderSpec& spec, int initial_level, double t_final,
                                    int n_steps);

/// Time of the interior rate maximum, or nullopt when the maximum sits at t=0.
std::optional<double> peak_time(const PopulationTrajectory& trajectory);

/// Columns: t, gamma_over_gamma0, p_0..p_max. Units comment on the first line.
void write_cascade_csv(const PopulationTrajectory& trajectory, std::ostream& out);

}  // namespace ceeat
