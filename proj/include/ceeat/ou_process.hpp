#pragma once

#include <vector>

#include "ceeat/rng.hpp"

namespace ceeat {

/// Ornstein-Uhlenbeck site-energy process. `amplitude` is the stationary
/// RMS of the fluctuation (an energy, units of gamma0), `correlation_time`
/// its exponential autocorrelation time (units 1/gamma0).
struct OUParams {
    double amplitude = 0.0;         // Lambda
    double correlation_time = 1.0;  // tau_c
    double dt = 0.0;                // 0 = derive from recommended_dt

    void validate() const;
};

/// dt small enough that piecewise-frozen propagation resolves the noise,
/// the coupling, and the fluctuation scale.
double recommended_dt(double tau_c, double v_dd, double lambda);

/// Stationary-start exact discretization, sampled at k*dt for
/// k = 0..ceil(t_final/dt). Distribution-exact for any dt.
std::vector<double> ou_path(const OUParams& params, double t_final, RngStream& stream);

}  // namespace ceeat
