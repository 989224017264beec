#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "ceeat/runner.hpp"
#include "ceeat/sweep_io.hpp"

using namespace ceeat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag)
        : path(fs::temp_directory_path() / ("ceeat_test_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("validate_config fills documented defaults") {
    ExperimentConfig cfg = validate_config(
        "experiment = noise-sweep\n"
        "n_sites = 4\n"
        "v_grid = 0, 1, 10\n"
        "lambda_grid = 0.1, 1\n");
    const auto& p = std::get<NoiseSweepParams>(cfg.params);
    CHECK(p.traj.t_final == 1.0);
    CHECK(p.traj.n_trajectories == 200);
    CHECK(p.traj.dt == 0.0);
    CHECK(p.m0 == 2);  // half filling
    CHECK(p.fixed_value == 0.33);
    CHECK(cfg.seed == 1234);
    CHECK(cfg.workers == 0);
}

TEST_CASE("validate_config rejects bad input") {
    SUBCASE("negative correlation time names the precondition") {
        CHECK_THROWS_WITH_AS(validate_config("experiment = noise-sweep\n"
                                             "v_grid = 1\nlambda_grid = 1\n"
                                             "tau_c = -0.5\n"),
                             doctest::Contains("tau_c > 0"), ConfigError);
    }
    SUBCASE("unknown keys list the valid ones") {
        CHECK_THROWS_WITH_AS(validate_config("experiment = table1\nfoo = 3\n"),
                             doctest::Contains("unknown key 'foo'"), ConfigError);
        try {
            validate_config("experiment = table1\nfoo = 3\n");
        } catch (const ConfigError& e) {
            CHECK(std::string(e.what()).find("spin_n_max") != std::string::npos);
        }
    }
    SUBCASE("malformed lines carry their line number") {
        CHECK_THROWS_WITH_AS(validate_config("experiment = table1\nnot a pair\n"),
                             doctest::Contains("line 2"), ConfigError);
    }
    SUBCASE("duplicate keys are rejected") {
        CHECK_THROWS_AS(validate_config("experiment = table1\nseed = 1\nseed = 2\n"),
                        ConfigError);
    }
    SUBCASE("experiment mismatch against the CLI argument") {
        CHECK_THROWS_AS(validate_config("experiment = table1\n", "ladder"), ConfigError);
    }
    SUBCASE("unknown experiment") {
        CHECK_THROWS_AS(validate_config("experiment = frobnicate\n"), ConfigError);
    }
    SUBCASE("missing required keys") {
        CHECK_THROWS_WITH_AS(validate_config("experiment = noise-sweep\n"),
                             doctest::Contains("v_grid"), ConfigError);
    }
}

TEST_CASE("list grammar") {
    ExperimentConfig cfg = validate_config(
        "experiment = disorder-pr\n"
        "v_grid = linspace(0, 10, 3)\n"
        "lambda_grid = logspace(0.1, 10, 3)\n");
    const auto& p = std::get<DisorderPrParams>(cfg.params);
    CHECK(p.v_grid == std::vector<double>{0.0, 5.0, 10.0});
    REQUIRE(p.lambda_grid.size() == 3);
    CHECK(p.lambda_grid[0] == doctest::Approx(0.1));
    CHECK(p.lambda_grid[1] == doctest::Approx(1.0));
    CHECK(p.lambda_grid[2] == doctest::Approx(10.0));
}

TEST_CASE("example4site experiment reproduces the pinned rates") {
    TempDir dir("example4site");
    ExperimentConfig cfg = validate_config("experiment = example4site\n");
    cfg.out_dir = dir.path.string();
    RunManifest manifest = run_experiment(cfg);

    REQUIRE(manifest.outputs.size() == 1);
    CHECK(manifest.outputs[0].file == "example4site.csv");

    std::string csv = read_file(dir.path / "example4site.csv");
    CHECK(csv.find("# energies in gamma0") != std::string::npos);
    CHECK(csv.find("N4_l4_m1_d0,4,4,1,0,4,4\n") != std::string::npos);
    CHECK(csv.find("N4_l4_m2_d0,4,4,2,0,6,") != std::string::npos);
    CHECK(csv.find("N4_l3_m1_d0,4,3,1,0,0,") != std::string::npos);

    SUBCASE("manifest checksums match the files on disk") {
        for (const auto& rec : manifest.outputs) {
            std::string bytes = read_file(dir.path / rec.file);
            CHECK(rec.bytes == bytes.size());
            CHECK(rec.fnv1a64 == fnv1a64_hex(bytes));
        }
        nlohmann::json m = nlohmann::json::parse(read_file(dir.path / "manifest.json"));
        CHECK(m["experiment"] == "example4site");
        CHECK(m["outputs"].size() == 1);
    }
}

TEST_CASE("table1 experiment is self-verifying") {
    TempDir dir("table1");
    ExperimentConfig cfg = validate_config(
        "experiment = table1\nspin_n_max = 3\nho_n_max = 2\nho_r_max = 2\nho_dark_sum_max = 1\n");
    cfg.out_dir = dir.path.string();
    RunManifest manifest = run_experiment(cfg);
    CHECK(manifest.outputs.size() == 1);
    std::string csv = read_file(dir.path / "table1.csv");
    CHECK(csv.find("process,donor_kind,acceptor_kind") != std::string::npos);
    CHECK(csv.find("SR,spin,field") != std::string::npos);
    CHECK(csv.find("ST,ho,spin") != std::string::npos);
}

TEST_CASE("ladder experiment writes one file per initial level") {
    TempDir dir("ladder");
    ExperimentConfig cfg = validate_config(
        "experiment = ladder\nkind = spin\nn_sites = 8\ninitial_levels = 3, 8\n"
        "t_final = 3\nn_steps = 200\n");
    cfg.out_dir = dir.path.string();
    RunManifest manifest = run_experiment(cfg);
    CHECK(manifest.outputs.size() == 2);
    CHECK(fs::exists(dir.path / "ladder_spin_N8_m3.csv"));
    CHECK(fs::exists(dir.path / "ladder_spin_N8_m8.csv"));

    // the fully excited start must show an interior gamma peak
    std::istringstream csv(read_file(dir.path / "ladder_spin_N8_m8.csv"));
    std::string line;
    std::getline(csv, line);  // units comment
    std::getline(csv, line);  // header
    double max_gamma = 0.0, first_gamma = -1.0;
    while (std::getline(csv, line)) {
        std::size_t c1 = line.find(',');
        std::size_t c2 = line.find(',', c1 + 1);
        double g = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
        if (first_gamma < 0) first_gamma = g;
        max_gamma = std::max(max_gamma, g);
    }
    CHECK(max_gamma > first_gamma + 1.0);
}

TEST_CASE("determinism across reruns and worker counts") {
    const std::string config_text =
        "experiment = noise-sweep\n"
        "n_sites = 4\n"
        "v_grid = 0, 5\n"
        "lambda_grid = 0.5, 5\n"
        "n_traj = 10\n";

    auto run = [&](const std::string& tag, int workers) {
        TempDir dir(tag);
        ExperimentConfig cfg = validate_config(config_text);
        cfg.workers = workers;
        cfg.out_dir = dir.path.string();
        run_experiment(cfg);
        return std::pair{read_file(dir.path / "noise_sweep.csv"),
                         read_file(dir.path / "noise_sweep_meta.json")};
    };

    auto [csv1, meta1] = run("det_a", 1);
    auto [csv2, meta2] = run("det_b", 1);
    auto [csv4, meta4] = run("det_c", 4);
    CHECK(csv1 == csv2);
    CHECK(csv1 == csv4);
    CHECK(meta1 == meta2);
    CHECK(meta1 == meta4);
}

TEST_CASE("anharmonic and disorder-pr experiments write sane files") {
    SUBCASE("anharmonic") {
        TempDir dir("anharmonic");
        ExperimentConfig cfg =
            validate_config("experiment = anharmonic\nu_grid = 0, 1, 1e4\n");
        cfg.out_dir = dir.path.string();
        run_experiment(cfg);
        std::string csv = read_file(dir.path / "anharmonic.csv");
        CHECK(csv.find("u_over_v,rate_over_gamma0,eig_index") != std::string::npos);
        CHECK(csv.find("\n0,8,") != std::string::npos);  // U=0 rate is exactly N*n
    }
    SUBCASE("disorder-pr") {
        TempDir dir("disorderpr");
        ExperimentConfig cfg = validate_config(
            "experiment = disorder-pr\nv_grid = 0, 10\nlambda_grid = 1\nn_realizations = 20\n");
        cfg.out_dir = dir.path.string();
        run_experiment(cfg);
        CHECK(fs::exists(dir.path / "disorder_pr.csv"));
        nlohmann::json meta =
            nlohmann::json::parse(read_file(dir.path / "disorder_pr_meta.json"));
        CHECK(meta["axis1"]["name"] == "V_dd");
        CHECK(meta["fixed"]["lambda_floor"].get<double>() == 1e-8);
    }
}

TEST_CASE("atomic writes leave no temporaries behind") {
    TempDir dir("atomic");
    atomic_write_file(dir.path / "x.csv", "hello\n");
    CHECK(read_file(dir.path / "x.csv") == "hello\n");
    CHECK(!fs::exists(dir.path / "x.csv.tmp"));
}
