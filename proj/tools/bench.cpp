// Compares the serial reference kernels against the OpenMP ones on a
// representative workload and reports timings plus a bitwise equality check.

#include <chrono>
#include <cstdio>

#include <omp.h>

#include "ceeat/noise_lab.hpp"

using namespace ceeat;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool identical(const SweepResult& a, const SweepResult& b) {
    if (a.mean.size() != b.mean.size()) return false;
    for (std::size_t i = 0; i < a.mean.size(); ++i) {
        if (a.mean[i] != b.mean[i] || a.stderr_[i] != b.stderr_[i]) return false;
    }
    return true;
}

}  // namespace

int main() {
    const int n_sites = 4;
    const SpinDickeLabel initial{4, 4, 2};
    const std::vector<double> v_grid = {0.0, 1.0, 10.0, 50.0};
    const std::vector<double> lambda_grid = {0.1, 1.0, 5.0};
    TrajectoryConfig cfg;
    cfg.n_trajectories = 60;
    cfg.base_seed = 99;

    std::printf("noise_sweep: %zux%zu grid, %d trajectories, %d threads available\n",
                v_grid.size(), lambda_grid.size(), cfg.n_trajectories, omp_get_max_threads());

    auto t0 = std::chrono::steady_clock::now();
    SweepResult serial = noise_sweep(SweepMode::v_vs_lambda, n_sites, initial, v_grid,
                                     lambda_grid, 0.33, cfg, Exec::serial);
    double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SweepResult parallel = noise_sweep(SweepMode::v_vs_lambda, n_sites, initial, v_grid,
                                       lambda_grid, 0.33, cfg, Exec::openmp);
    double t_parallel = seconds_since(t0);

    std::printf("  serial reference: %8.3f s\n", t_serial);
    std::printf("  openmp          : %8.3f s  (speedup %.2fx)\n", t_parallel,
                t_serial / t_parallel);
    std::printf("  results bitwise identical: %s\n", identical(serial, parallel) ? "yes" : "NO");

    t0 = std::chrono::steady_clock::now();
    SweepResult pr_serial = disorder_pr_scan(4, 2, {0.0, 1.0, 10.0, 100.0},
                                             {0.1, 1.0, 5.0}, 400, 7, Exec::serial);
    double t_pr_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    SweepResult pr_parallel = disorder_pr_scan(4, 2, {0.0, 1.0, 10.0, 100.0},
                                               {0.1, 1.0, 5.0}, 400, 7, Exec::openmp);
    double t_pr_parallel = seconds_since(t0);

    std::printf("disorder_pr_scan: 4x3 grid, 400 realizations\n");
    std::printf("  serial reference: %8.3f s\n", t_pr_serial);
    std::printf("  openmp          : %8.3f s  (speedup %.2fx)\n", t_pr_parallel,
                t_pr_serial / t_pr_parallel);
    std::printf("  results bitwise identical: %s\n",
                identical(pr_serial, pr_parallel) ? "yes" : "NO");
    return 0;
}
