#pragma once

#include <string>
#include <variant>
#include <vector>

#include "ceeat/cascade.hpp"
#include "ceeat/noise_lab.hpp"

namespace ceeat {

// Malformed input, unknown keys, or out-of-range values. The message names
// the offending line or the violated precondition.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Table1Params {
    int spin_n_max = 6;
    int ho_n_max = 4;
    int ho_r_max = 4;
    int ho_dark_sum_max = 2;
    double tolerance = 1e-9;
};

struct Example4SiteParams {};

struct LadderParams {
    SiteKind kind = SiteKind::spin;
    int n_sites = 4;
    std::vector<int> initial_levels;  // default: every level 1..max
    int max_level = -1;               // HO only; default 4 * max(initial_levels)
    double t_final = 5.0;
    int n_steps = 500;
};

struct NoiseSweepParams {
    SweepMode mode = SweepMode::v_vs_lambda;
    int n_sites = 4;
    int m0 = 2;
    std::vector<double> v_grid;
    std::vector<double> axis2_grid;
    double fixed_value = 0.0;  // tau_c or Lambda depending on mode
    TrajectoryConfig traj;
};

struct DisorderPrParams {
    int n_sites = 4;
    int n_excitations = 2;
    int n_realizations = 100;
    std::vector<double> v_grid;
    std::vector<double> lambda_grid;
};

struct AnharmonicParams {
    int n_sites = 4;
    int n_excitations = 2;
    std::vector<double> u_grid;
};

using ExperimentParams = std::variant<Table1Params, Example4SiteParams, LadderParams,
                                      NoiseSweepParams, DisorderPrParams, AnharmonicParams>;

struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1234;
    int workers = 0;  // 0 = all available
    std::string out_dir;
    ExperimentParams params;
};

/// Parse and range-check a flat key-value config document. The experiment
/// may come from the document ("experiment = ...") or from the hint; when
/// both are present they must agree. Grammar: one `key = value` pair per
/// line, `#` comments, lists as comma-separated values or
/// linspace(a,b,n) / logspace(a,b,n).
ExperimentConfig validate_config(const std::string& text, const std::string& experiment_hint = "");

/// Names accepted as experiments, for diagnostics.
const std::vector<std::string>& known_experiments();

}  // namespace ceeat
