#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ceeat/dicke.hpp"
#include "ceeat/ou_process.hpp"
#include "ceeat/reduce.hpp"

namespace ceeat {

/// Parallel kernels run either as the plain serial reference loop or under
/// OpenMP. Work items write into preassigned slots and are reduced in fixed
/// order, so both paths produce identical results.
enum class Exec { serial, openmp };

struct TrajectoryConfig {
    int n_trajectories = 200;
    double t_final = 1.0;  // units 1/gamma0
    double dt = 0.0;       // 0 = recommended_dt rule per cell
    std::uint64_t base_seed = 1234;
    bool per_site_independent = true;  // only independent per-site noise is supported

    void validate() const;
};

struct EnsembleStats {
    double mean = 0.0;
    double stderr_ = 0.0;
    int n = 0;
    double max_norm_drift = 0.0;
};

/// Time-averaged emission <J+J-> of a spin aggregate driven by per-site OU
/// noise on top of uniform all-to-all coupling, ensemble-averaged over
/// trajectories. Purely Hamiltonian evolution; emission is an observable.
EnsembleStats simulate_noisy_emission(int n_sites, const SpinDickeLabel& initial, double v_dd,
                                      const OUParams& ou, const TrajectoryConfig& cfg,
                                      Exec exec = Exec::openmp, int workers = 0,
                                      std::uint64_t cell_index = 0);

struct SweepMeta {
    std::string experiment;
    std::string axis1_name;
    std::string axis2_name;
    std::uint64_t base_seed = 0;
    double t_final = 0.0;
    double dt = 0.0;  // 0 = per-cell rule
    std::map<std::string, double> fixed;
    std::string code_version;
};

/// Grid of ensemble means with standard errors; row-major over (axis1, axis2).
struct SweepResult {
    std::vector<double> axis1;
    std::vector<double> axis2;
    std::vector<double> mean;
    std::vector<double> stderr_;
    int n_per_cell = 0;
    SweepMeta meta;

    std::size_t cell(std::size_t i, std::size_t j) const { return i * axis2.size() + j; }
    double mean_at(std::size_t i, std::size_t j) const { return mean[cell(i, j)]; }
    double stderr_at(std::size_t i, std::size_t j) const { return stderr_[cell(i, j)]; }
};

enum class SweepMode {
    v_vs_lambda,     // axis2 = noise amplitude, fixed correlation time
    v_vs_inv_tau_c,  // axis2 = inverse correlation time, fixed amplitude
};

/// Noise robustness sweep: axis1 = intra-aggregate coupling V_dd. Every cell
/// derives its own RNG streams from (base_seed, cell, trajectory, site).
SweepResult noise_sweep(SweepMode mode, int n_sites, const SpinDickeLabel& initial,
                        const std::vector<double>& v_values,
                        const std::vector<double>& axis2_values, double fixed_value,
                        const TrajectoryConfig& cfg, Exec exec = Exec::openmp, int workers = 0);

/// Static-disorder localization scan: per (V, Lambda) cell, draw site
/// detunings from the stationary OU marginal, diagonalize, and average the
/// participation ratio over all eigenstates in the sector. Lambda = 0 is
/// lifted to a 1e-8 floor so eigenbases stay well defined.
SweepResult disorder_pr_scan(int n_sites, int n_excitations, const std::vector<double>& v_values,
                             const std::vector<double>& lambda_values, int n_realizations,
                             std::uint64_t seed, Exec exec = Exec::openmp, int workers = 0);

}  // namespace ceeat
