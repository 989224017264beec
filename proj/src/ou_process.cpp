#include "ceeat/ou_process.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>

#include "ceeat/errors.hpp"

namespace ceeat {

void OUParams::validate() const {
    if (amplitude < 0.0) throw InvalidArgument("OU amplitude must be non-negative");
    if (correlation_time <= 0.0) throw InvalidArgument("OU correlation time must be positive");
    if (dt < 0.0) throw InvalidArgument("OU dt must be positive (or 0 for the default rule)");
}

double recommended_dt(double tau_c, double v_dd, double lambda) {
    double scale = std::min({tau_c, 1.0 / std::max(std::abs(v_dd), 1e-30),
                             1.0 / std::max(lambda, 1e-30), 1.0});
    return scale / 20.0;
}

std::vector<double> ou_path(const OUParams& params, double t_final, RngStream& stream) {
    params.validate();
    if (params.dt <= 0.0) throw InvalidArgument("ou_path requires an explicit dt");
    if (t_final <= 0.0) throw InvalidArgument("t_final must be positive");
    if (params.dt > params.correlation_time / 10.0) {
        static std::atomic<bool> warned{false};
        if (!warned.exchange(true)) {
            std::fprintf(stderr,
                         "warning: OU dt = %g exceeds tau_c/10 = %g; the path is exact at the "
                         "sample points but the frozen-noise propagation will be coarse\n",
                         params.dt, params.correlation_time / 10.0);
        }
    }

    const std::size_t n_steps =
        static_cast<std::size_t>(std::ceil(t_final / params.dt - 1e-12));
    std::vector<double> path(n_steps + 1);

    const double decay = std::exp(-params.dt / params.correlation_time);
    const double kick = params.amplitude * std::sqrt(1.0 - decay * decay);

    path[0] = params.amplitude * stream.normal();  // stationary marginal
    for (std::size_t k = 1; k <= n_steps; ++k)
        path[k] = path[k - 1] * decay + kick * stream.normal();
    return path;
}

}  // namespace ceeat
