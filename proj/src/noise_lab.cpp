#include "ceeat/noise_lab.hpp"

#include <cmath>
#include <functional>

#include <Eigen/Eigenvalues>
#include <omp.h>

#include "ceeat/version.hpp"

namespace ceeat {

namespace {

void run_indexed(std::size_t n_items, Exec exec, int workers,
                 const std::function<void(std::size_t)>& body) {
    if (exec == Exec::serial) {
        for (std::size_t i = 0; i < n_items; ++i) body(i);
        return;
    }
    if (workers <= 0) workers = omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(workers)
    for (std::size_t i = 0; i < n_items; ++i) body(i);
}

// Shared, immutable per-cell setup for noisy-emission trajectories.
struct EmissionProblem {
    int n_sites = 0;
    Eigen::MatrixXd hop;      // V_dd * symmetric hopping, sector-restricted
    Eigen::MatrixXd occ;      // occ(site, config)
    Eigen::MatrixXd lower;    // J- in the site basis (real entries)
    Eigen::VectorXd psi0_re;  // initial Dicke state (real amplitudes)
    OUParams ou;              // with dt resolved
    int n_steps = 0;
    double t_final_effective = 0.0;
};

EmissionProblem make_emission_problem(int n_sites, const SpinDickeLabel& initial, double v_dd,
                                      const OUParams& ou, double t_final) {
    initial.validate();
    if (initial.n_sites != n_sites)
        throw InvalidArgument("initial label does not match n_sites");
    ou.validate();

    EmissionProblem prob;
    prob.n_sites = n_sites;
    SectorPtr sector = make_sector(SiteKind::spin, n_sites, initial.excitations);

    prob.hop = build_hamiltonian(sector, uniform_coupling_spec(n_sites, v_dd)).dense().real();
    prob.occ = Eigen::MatrixXd::Zero(n_sites, static_cast<Eigen::Index>(sector->size()));
    for (std::size_t c = 0; c < sector->size(); ++c)
        for (int s = 0; s < n_sites; ++s)
            prob.occ(s, static_cast<Eigen::Index>(c)) = sector->occupation(c, s);

    StateVector psi = spin_dicke_state(initial, 0);
    prob.psi0_re = psi.amplitudes().real();
    if (psi.amplitudes().imag().cwiseAbs().maxCoeff() > 1e-14)
        throw InvariantViolation("expected a real initial Dicke state");

    if (initial.excitations > 0)
        prob.lower = collective_op(sector, CollectiveOp::j_minus).dense().real();
    else
        prob.lower = Eigen::MatrixXd::Zero(1, static_cast<Eigen::Index>(sector->size()));

    prob.ou = ou;
    if (prob.ou.dt <= 0.0)
        prob.ou.dt = recommended_dt(ou.correlation_time, v_dd, ou.amplitude);
    prob.n_steps = static_cast<int>(std::ceil(t_final / prob.ou.dt - 1e-12));
    prob.t_final_effective = prob.n_steps * prob.ou.dt;
    return prob;
}

struct TrajectoryOutcome {
    double time_average = 0.0;
    double norm_drift = 0.0;
};

TrajectoryOutcome run_trajectory(const EmissionProblem& prob, std::uint64_t base_seed,
                                 std::uint64_t cell_index, std::uint64_t traj_index) {
    const int n = prob.n_sites;
    const Eigen::Index dim = prob.psi0_re.size();

    std::vector<std::vector<double>> paths(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        RngStream stream(base_seed, cell_index, traj_index, static_cast<std::uint64_t>(s));
        paths[static_cast<std::size_t>(s)] =
            ou_path(prob.ou, prob.t_final_effective, stream);
    }

    Eigen::VectorXd re = prob.psi0_re;
    Eigen::VectorXd im = Eigen::VectorXd::Zero(dim);
    Eigen::VectorXd delta(n);
    Eigen::MatrixXd h(dim, dim);
    Eigen::VectorXd tr(dim), ti(dim), cr(dim), ci(dim);

    auto emission = [&](const Eigen::VectorXd& vr, const Eigen::VectorXd& vi) {
        return (prob.lower * vr).squaredNorm() + (prob.lower * vi).squaredNorm();
    };

    double integral = 0.0;
    double prev = emission(re, im);
    double drift = 0.0;

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    for (int k = 0; k < prob.n_steps; ++k) {
        for (int s = 0; s < n; ++s)
            delta[s] = paths[static_cast<std::size_t>(s)][static_cast<std::size_t>(k)];
        h = prob.hop;
        h.diagonal() += prob.occ.transpose() * delta;

        es.compute(h);
        const Eigen::MatrixXd& u = es.eigenvectors();
        tr.noalias() = u.transpose() * re;
        ti.noalias() = u.transpose() * im;
        for (Eigen::Index i = 0; i < dim; ++i) {
            double phase = es.eigenvalues()[i] * prob.ou.dt;
            double c = std::cos(phase), s = std::sin(phase);
            // multiply by exp(-i*phase)
            cr[i] = c * tr[i] + s * ti[i];
            ci[i] = c * ti[i] - s * tr[i];
        }
        re.noalias() = u * cr;
        im.noalias() = u * ci;

        double cur = emission(re, im);
        integral += 0.5 * (prev + cur) * prob.ou.dt;
        prev = cur;

        double norm = std::sqrt(re.squaredNorm() + im.squaredNorm());
        drift = std::max(drift, std::abs(norm - 1.0));
    }
    return {integral / prob.t_final_effective, drift};
}

EnsembleStats reduce_trajectories(const std::vector<TrajectoryOutcome>& outcomes) {
    std::vector<double> values;
    values.reserve(outcomes.size());
    double drift = 0.0;
    for (const auto& o : outcomes) {
        values.push_back(o.time_average);
        drift = std::max(drift, o.norm_drift);
    }
    if (drift > 1e-8)
        throw InvariantViolation("noisy propagation lost norm beyond tolerance");
    MeanStderr ms = mean_and_stderr(values);
    return {ms.mean, ms.stderr_, ms.n, drift};
}

}  // namespace

void TrajectoryConfig::validate() const {
    if (n_trajectories < 1) throw InvalidArgument("n_trajectories must be >= 1");
    if (t_final <= 0.0) throw InvalidArgument("t_final must be positive");
    if (dt < 0.0) throw InvalidArgument("dt must be positive (or 0 for the default rule)");
    if (!per_site_independent)
        throw InvalidArgument("correlated cross-site noise is not supported");
}

EnsembleStats simulate_noisy_emission(int n_sites, const SpinDickeLabel& initial, double v_dd,
                                      const OUParams& ou, const TrajectoryConfig& cfg, Exec exec,
                                      int workers, std::uint64_t cell_index) {
    cfg.validate();
    OUParams params = ou;
    if (cfg.dt > 0.0) params.dt = cfg.dt;
    EmissionProblem prob = make_emission_problem(n_sites, initial, v_dd, params, cfg.t_final);

    std::vector<TrajectoryOutcome> outcomes(static_cast<std::size_t>(cfg.n_trajectories));
    run_indexed(outcomes.size(), exec, workers, [&](std::size_t t) {
        outcomes[t] = run_trajectory(prob, cfg.base_seed, cell_index, t);
    });
    return reduce_trajectories(outcomes);
}

SweepResult noise_sweep(SweepMode mode, int n_sites, const SpinDickeLabel& initial,
                        const std::vector<double>& v_values,
                        const std::vector<double>& axis2_values, double fixed_value,
                        const TrajectoryConfig& cfg, Exec exec, int workers) {
    cfg.validate();
    if (v_values.empty() || axis2_values.empty())
        throw InvalidArgument("sweep grids must be non-empty");

    const std::size_t n1 = v_values.size(), n2 = axis2_values.size();
    const std::size_t n_cells = n1 * n2;
    const std::size_t n_traj = static_cast<std::size_t>(cfg.n_trajectories);

    std::vector<EmissionProblem> problems;
    problems.reserve(n_cells);
    for (std::size_t i = 0; i < n1; ++i) {
        for (std::size_t j = 0; j < n2; ++j) {
            OUParams ou;
            if (mode == SweepMode::v_vs_lambda) {
                ou.amplitude = axis2_values[j];
                ou.correlation_time = fixed_value;
            } else {
                if (axis2_values[j] <= 0.0)
                    throw InvalidArgument("inverse correlation times must be positive");
                ou.amplitude = fixed_value;
                ou.correlation_time = 1.0 / axis2_values[j];
            }
            ou.dt = cfg.dt;
            problems.push_back(
                make_emission_problem(n_sites, initial, v_values[i], ou, cfg.t_final));
        }
    }

    std::vector<TrajectoryOutcome> outcomes(n_cells * n_traj);
    run_indexed(outcomes.size(), exec, workers, [&](std::size_t w) {
        std::size_t cell = w / n_traj;
        std::size_t traj = w % n_traj;
        outcomes[w] = run_trajectory(problems[cell], cfg.base_seed, cell, traj);
    });

    SweepResult result;
    result.axis1 = v_values;
    result.axis2 = axis2_values;
    result.n_per_cell = cfg.n_trajectories;
    result.mean.resize(n_cells);
    result.stderr_.resize(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        std::vector<TrajectoryOutcome> slice(outcomes.begin() + cell * n_traj,
                                             outcomes.begin() + (cell + 1) * n_traj);
        EnsembleStats stats = reduce_trajectories(slice);
        result.mean[cell] = stats.mean;
        result.stderr_[cell] = stats.stderr_;
    }

    result.meta.experiment = "noise-sweep";
    result.meta.axis1_name = "V_dd";
    result.meta.axis2_name = mode == SweepMode::v_vs_lambda ? "Lambda" : "inv_tau_c";
    result.meta.base_seed = cfg.base_seed;
    result.meta.t_final = cfg.t_final;
    result.meta.dt = cfg.dt;
    result.meta.fixed[mode == SweepMode::v_vs_lambda ? "tau_c" : "Lambda"] = fixed_value;
    result.meta.fixed["n_sites"] = n_sites;
    result.meta.fixed["m0"] = initial.excitations;
    result.meta.fixed["ladder"] = initial.ladder;
    result.meta.code_version = kVersion;
    return result;
}

SweepResult disorder_pr_scan(int n_sites, int n_excitations, const std::vector<double>& v_values,
                             const std::vector<double>& lambda_values, int n_realizations,
                             std::uint64_t seed, Exec exec, int workers) {
    if (v_values.empty() || lambda_values.empty())
        throw InvalidArgument("scan grids must be non-empty");
    if (n_realizations < 1) throw InvalidArgument("n_realizations must be >= 1");

    SectorPtr sector = make_sector(SiteKind::spin, n_sites, n_excitations);
    const Eigen::Index dim = static_cast<Eigen::Index>(sector->size());
    Eigen::MatrixXd hop_unit =
        build_hamiltonian(sector, uniform_coupling_spec(n_sites, 1.0)).dense().real();
    Eigen::MatrixXd occ = Eigen::MatrixXd::Zero(n_sites, dim);
    for (std::size_t c = 0; c < sector->size(); ++c)
        for (int s = 0; s < n_sites; ++s) occ(s, static_cast<Eigen::Index>(c)) = sector->occupation(c, s);

    const std::size_t n1 = v_values.size(), n2 = lambda_values.size();
    const std::size_t n_cells = n1 * n2;
    const std::size_t n_real = static_cast<std::size_t>(n_realizations);
    constexpr double kLambdaFloor = 1e-8;

    std::vector<double> slots(n_cells * n_real);
    run_indexed(slots.size(), exec, workers, [&](std::size_t w) {
        std::size_t cell = w / n_real;
        std::size_t real_idx = w % n_real;
        double v = v_values[cell / n2];
        double lambda = std::max(lambda_values[cell % n2], kLambdaFloor);

        Eigen::VectorXd delta(n_sites);
        for (int s = 0; s < n_sites; ++s) {
            RngStream stream(seed, cell, real_idx, static_cast<std::uint64_t>(s));
            delta[s] = lambda * stream.normal();
        }
        Eigen::MatrixXd h = v * hop_unit;
        h.diagonal() += occ.transpose() * delta;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);

        double pr_sum = 0.0;
        for (Eigen::Index e = 0; e < dim; ++e) {
            double s4 = 0.0;
            for (Eigen::Index i = 0; i < dim; ++i) {
                double p = es.eigenvectors()(i, e) * es.eigenvectors()(i, e);
                s4 += p * p;
            }
            pr_sum += 1.0 / s4;
        }
        slots[w] = pr_sum / double(dim);
    });

    SweepResult result;
    result.axis1 = v_values;
    result.axis2 = lambda_values;
    result.n_per_cell = n_realizations;
    result.mean.resize(n_cells);
    result.stderr_.resize(n_cells);
    for (std::size_t cell = 0; cell < n_cells; ++cell) {
        std::span<const double> slice(slots.data() + cell * n_real, n_real);
        MeanStderr ms = mean_and_stderr(slice);
        result.mean[cell] = ms.mean;
        result.stderr_[cell] = ms.stderr_;
    }

    result.meta.experiment = "disorder-pr";
    result.meta.axis1_name = "V_dd";
    result.meta.axis2_name = "Lambda";
    result.meta.base_seed = seed;
    result.meta.fixed["n_sites"] = n_sites;
    result.meta.fixed["n_excitations"] = n_excitations;
    result.meta.fixed["lambda_floor"] = kLambdaFloor;
    result.meta.code_version = kVersion;
    return result;
}

}  // namespace ceeat
