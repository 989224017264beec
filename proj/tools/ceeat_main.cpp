// ceeat: reproducible experiment runner for collective emission, absorption
// and transfer rates. See README.md for the config grammar.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "ceeat/runner.hpp"
#include "ceeat/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitInvariant = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ceeat::ConfigError("cannot open config file '" + path + "'");
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ceeat: collective emission/absorption/transfer experiments"};
    app.set_version_flag("--version", std::string(ceeat::kVersion));

    std::string experiment;
    std::string config_path;
    std::uint64_t seed = 0;
    bool seed_given = false;
    int workers = -1;
    std::string out_dir;

    std::ostringstream experiments;
    for (const auto& name : ceeat::known_experiments()) experiments << ' ' << name;
    app.add_option("experiment", experiment, "one of:" + experiments.str())->required();
    app.add_option("--config", config_path, "config file (key = value lines)");
    app.add_option("--seed", seed, "override the base seed")->each([&](const std::string&) {
        seed_given = true;
    });
    app.add_option("--workers", workers, "worker threads (0 = all available)");
    app.add_option("--out", out_dir, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitConfig;
    }

    try {
        std::string text = config_path.empty() ? "" : slurp(config_path);
        ceeat::ExperimentConfig cfg = ceeat::validate_config(text, experiment);
        if (seed_given) cfg.seed = seed;
        if (workers >= 0) cfg.workers = workers;
        if (!out_dir.empty()) cfg.out_dir = out_dir;

        ceeat::RunManifest manifest = ceeat::run_experiment(cfg);
        std::cout << "wrote " << manifest.outputs.size() << " file(s) to " << cfg.out_dir << " in "
                  << manifest.duration_seconds << " s\n";
        return kExitOk;
    } catch (const ceeat::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ceeat::InvalidArgument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ceeat::InvariantViolation& e) {
        std::cerr << "invariant check failed: " << e.what() << '\n';
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvariant;
    }
}
