#include "ceeat/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

#include "ceeat/rates.hpp"
#include "ceeat/sweep_io.hpp"
#include "ceeat/version.hpp"

namespace ceeat {

namespace {

nlohmann::json echo_params(const ExperimentConfig& cfg) {
    nlohmann::json j;
    j["experiment"] = cfg.experiment;
    j["seed"] = cfg.seed;
    j["workers"] = cfg.workers;
    std::visit(
        [&j](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Table1Params>) {
                j["spin_n_max"] = p.spin_n_max;
                j["ho_n_max"] = p.ho_n_max;
                j["ho_r_max"] = p.ho_r_max;
                j["ho_dark_sum_max"] = p.ho_dark_sum_max;
                j["tolerance"] = p.tolerance;
            } else if constexpr (std::is_same_v<T, LadderParams>) {
                j["kind"] = p.kind == SiteKind::spin ? "spin" : "ho";
                j["n_sites"] = p.n_sites;
                j["initial_levels"] = p.initial_levels;
                j["max_level"] = p.max_level;
                j["t_final"] = p.t_final;
                j["n_steps"] = p.n_steps;
            } else if constexpr (std::is_same_v<T, NoiseSweepParams>) {
                j["mode"] = p.mode == SweepMode::v_vs_lambda ? "v-vs-lambda" : "v-vs-inv-tau-c";
                j["n_sites"] = p.n_sites;
                j["m0"] = p.m0;
                j["v_grid"] = p.v_grid;
                j["axis2_grid"] = p.axis2_grid;
                j["fixed_value"] = p.fixed_value;
                j["n_traj"] = p.traj.n_trajectories;
                j["t_final"] = p.traj.t_final;
                j["dt"] = p.traj.dt;
            } else if constexpr (std::is_same_v<T, DisorderPrParams>) {
                j["n_sites"] = p.n_sites;
                j["n_excitations"] = p.n_excitations;
                j["n_realizations"] = p.n_realizations;
                j["v_grid"] = p.v_grid;
                j["lambda_grid"] = p.lambda_grid;
            } else if constexpr (std::is_same_v<T, AnharmonicParams>) {
                j["n_sites"] = p.n_sites;
                j["n_excitations"] = p.n_excitations;
                j["u_grid"] = p.u_grid;
            }
        },
        cfg.params);
    return j;
}

class OutputWriter {
public:
    explicit OutputWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
        std::filesystem::create_directories(dir_);
    }

    void write(const std::string& name, const std::string& contents) {
        atomic_write_file(dir_ / name, contents);
        names_.push_back(name);
    }

    std::vector<OutputRecord> records() const {
        std::vector<OutputRecord> out;
        for (const auto& name : names_) {
            std::string bytes = read_file(dir_ / name);
            out.push_back({name, bytes.size(), fnv1a64_hex(bytes)});
        }
        return out;
    }

    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
    std::vector<std::string> names_;
};

void run_table1(const Table1Params& p, OutputWriter& out) {
    auto rows = table1_rows(p.spin_n_max, p.ho_n_max, p.ho_r_max, p.ho_dark_sum_max);
    std::ostringstream csv;
    write_table1_csv(rows, csv);
    out.write("table1.csv", csv.str());

    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.closed_form - r.oracle));
    if (worst > p.tolerance) {
        std::ostringstream msg;
        msg << "closed-form vs oracle mismatch: max |diff| = " << worst << " > tolerance "
            << p.tolerance;
        throw InvariantViolation(msg.str());
    }
}

void run_example4site(OutputWriter& out) {
    struct Case {
        SpinDickeLabel label;
        int deg;
        double expected;
    };
    const std::vector<Case> cases = {
        {{4, 4, 1}, 0, 4.0},
        {{4, 4, 2}, 0, 6.0},
        {{4, 3, 1}, 0, 0.0},
    };
    std::ostringstream csv;
    csv << "# energies in gamma0, times in 1/gamma0\n";
    csv << "label,N,l,m,deg,closed_form,oracle\n";
    csv.precision(17);
    double worst = 0.0;
    for (const auto& c : cases) {
        AggregateSpec donor = AggregateSpec::spin(c.label, c.deg);
        double closed = closed_form_enhancement(Process::SR, donor, AggregateSpec::field()).value;
        double oracle = oracle_enhancement(Process::SR, donor, AggregateSpec::field()).value;
        csv << 'N' << c.label.n_sites << "_l" << c.label.ladder << "_m" << c.label.excitations
            << "_d" << c.deg << ',' << c.label.n_sites << ',' << c.label.ladder << ','
            << c.label.excitations << ',' << c.deg << ',' << closed << ',' << oracle << '\n';
        worst = std::max({worst, std::abs(closed - c.expected), std::abs(oracle - c.expected)});
    }
    out.write("example4site.csv", csv.str());
    if (worst > 1e-12)
        throw InvariantViolation("four-site rates off by " + std::to_string(worst));
}

void run_ladder(const LadderParams& p, OutputWriter& out) {
    LadderSpec spec = ladder_rates(p.kind, p.n_sites, p.max_level);
    for (int level : p.initial_levels) {
        PopulationTrajectory traj = evolve_cascade(spec, level, p.t_final, p.n_steps);
        std::ostringstream csv;
        write_cascade_csv(traj, csv);
        std::ostringstream name;
        name << "ladder_" << (p.kind == SiteKind::spin ? "spin" : "ho") << "_N" << p.n_sites
             << "_m" << level << ".csv";
        out.write(name.str(), csv.str());
    }
}

void run_noise_sweep(const NoiseSweepParams& p, const ExperimentConfig& cfg, Exec exec,
                     OutputWriter& out) {
    TrajectoryConfig traj = p.traj;
    traj.base_seed = cfg.seed;
    SpinDickeLabel initial{p.n_sites, p.n_sites, p.m0};
    SweepResult result = noise_sweep(p.mode, p.n_sites, initial, p.v_grid, p.axis2_grid,
                                     p.fixed_value, traj, exec, cfg.workers);
    std::ostringstream csv;
    write_sweep_csv(result, csv);
    out.write("noise_sweep.csv", csv.str());
    out.write("noise_sweep_meta.json", sweep_sidecar_json(result).dump(2) + "\n");
}

void run_disorder_pr(const DisorderPrParams& p, const ExperimentConfig& cfg, Exec exec,
                     OutputWriter& out) {
    SweepResult result = disorder_pr_scan(p.n_sites, p.n_excitations, p.v_grid, p.lambda_grid,
                                          p.n_realizations, cfg.seed, exec, cfg.workers);
    std::ostringstream csv;
    write_sweep_csv(result, csv);
    out.write("disorder_pr.csv", csv.str());
    out.write("disorder_pr_meta.json", sweep_sidecar_json(result).dump(2) + "\n");

    double max_pr = binomial(p.n_sites, p.n_excitations);
    for (double m : result.mean)
        if (m < 1.0 - 1e-9 || m > max_pr + 1e-9)
            throw InvariantViolation("participation ratio outside [1, C(N,m)]");
}

void run_anharmonic(const AnharmonicParams& p, OutputWriter& out) {
    std::ostringstream csv;
    csv << "# energies in gamma0, times in 1/gamma0; U in units of the hopping\n";
    csv << "u_over_v,rate_over_gamma0,eig_index\n";
    csv.precision(17);
    for (double u : p.u_grid) {
        AnharmonicRate r = anharmonic_sr_rate(p.n_sites, u, p.n_excitations);
        csv << u << ',' << r.value << ',' << r.eigenstate_index << '\n';
    }
    out.write("anharmonic.csv", csv.str());
}

}  // namespace

nlohmann::json manifest_json(const RunManifest& manifest) {
    nlohmann::json j;
    j["experiment"] = manifest.experiment;
    j["config"] = manifest.config_echo;
    j["code_version"] = manifest.code_version;
    j["duration_seconds"] = manifest.duration_seconds;
    j["outputs"] = nlohmann::json::array();
    for (const auto& o : manifest.outputs)
        j["outputs"].push_back({{"file", o.file}, {"bytes", o.bytes}, {"fnv1a64", o.fnv1a64}});
    return j;
}

RunManifest run_experiment(const ExperimentConfig& cfg, Exec exec) {
    auto start = std::chrono::steady_clock::now();
    OutputWriter out(cfg.out_dir);

    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Table1Params>) run_table1(p, out);
            else if constexpr (std::is_same_v<T, Example4SiteParams>) run_example4site(out);
            else if constexpr (std::is_same_v<T, LadderParams>) run_ladder(p, out);
            else if constexpr (std::is_same_v<T, NoiseSweepParams>)
                run_noise_sweep(p, cfg, exec, out);
            else if constexpr (std::is_same_v<T, DisorderPrParams>)
                run_disorder_pr(p, cfg, exec, out);
            else if constexpr (std::is_same_v<T, AnharmonicParams>) run_anharmonic(p, out);
        },
        cfg.params);

    RunManifest manifest;
    manifest.experiment = cfg.experiment;
    manifest.config_echo = echo_params(cfg);
    manifest.code_version = kVersion;
    manifest.outputs = out.records();
    manifest.duration_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    atomic_write_file(out.dir() / "manifest.json", manifest_json(manifest).dump(2) + "\n");
    return manifest;
}

}  // namespace ceeat
