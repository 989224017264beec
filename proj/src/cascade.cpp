#include "ceeat/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

namespace ceeat {

namespace {

// Dormand-Prince 5(4) pair.
struct Rk45 {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
};

using Vec = std::vector<double>;

void axpy(Vec& y, double a, const Vec& x) {
    for (std::size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
}

}  // namespace

LadderSpec ladder_rates(SiteKind kind, int n_sites, int max_level) {
    if (n_sites < 1) throw InvalidArgument("n_sites must be >= 1");
    LadderSpec spec;
    spec.kind = kind;
    spec.n_sites = n_sites;
    if (kind == SiteKind::spin) {
        spec.max_level = max_level < 0 ? n_sites : max_level;
        if (spec.max_level > n_sites)
            throw InvalidArgument("spin ladder level cannot exceed n_sites");
    } else {
        if (max_level < 0) throw InvalidArgument("HO ladder requires an explicit max level");
        spec.max_level = max_level;
    }
    spec.rates.resize(static_cast<std::size_t>(spec.max_level) + 1, 0.0);
    for (int level = 1; level <= spec.max_level; ++level) {
        spec.rates[static_cast<std::size_t>(level)] =
            kind == SiteKind::spin ? double(level) * double(n_sites - level + 1)
                                   : double(n_sites) * double(level);
    }
    return spec;
}

PopulationTrajectory evolve_cascade(const LadderSpec& spec, int initial_level, double t_final,
                                    int n_steps) {
    if (initial_level < 0 || initial_level > spec.max_level)
        throw InvalidArgument("initial level outside the ladder");
    if (t_final <= 0.0) throw InvalidArgument("t_final must be positive");
    if (n_steps < 1) throw InvalidArgument("n_steps must be >= 1");

    const std::size_t n = static_cast<std::size_t>(spec.max_level) + 1;
    // State: populations plus the cumulative emission integral.
    Vec y(n + 1, 0.0);
    y[static_cast<std::size_t>(initial_level)] = 1.0;

    auto deriv = [&spec, n](const Vec& state, Vec& out) {
        double emitted = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            double outflow = spec.rates[m] * state[m];
            double inflow = m + 1 < n ? spec.rates[m + 1] * state[m + 1] : 0.0;
            out[m] = inflow - outflow;
            emitted += outflow;
        }
        out[n] = emitted;
    };

    const double abstol = 1e-10;
    PopulationTrajectory traj;
    traj.times.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.populations.reserve(static_cast<std::size_t>(n_steps) + 1);
    traj.gamma.reserve(static_cast<std::size_t>(n_steps) + 1);

    auto record = [&](double t) {
        traj.times.push_back(t);
        Vec p(y.begin(), y.begin() + static_cast<long>(n));
        double g = 0.0, total = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            g += spec.rates[m] * p[m];
            total += p[m];
        }
        if (std::abs(total - 1.0) > 1e-8)
            throw InvariantViolation("cascade populations lost probability: sum=" +
                                     std::to_string(total));
        traj.populations.push_back(std::move(p));
        traj.gamma.push_back(g);
    };

    record(0.0);

    double max_rate = *std::max_element(spec.rates.begin(), spec.rates.end());
    double h = max_rate > 0.0 ? 0.1 / max_rate : t_final;
    Vec k1(n + 1), k2(n + 1), k3(n + 1), k4(n + 1), k5(n + 1), k6(n + 1), k7(n + 1);
    Vec tmp(n + 1), y5(n + 1);

    double t = 0.0;
    for (int step = 1; step <= n_steps; ++step) {
        double t_target = t_final * double(step) / double(n_steps);
        while (t < t_target - 1e-14 * t_final) {
            double hs = std::min(h, t_target - t);
            deriv(y, k1);
            tmp = y;
            axpy(tmp, hs * Rk45::a21, k1);
            deriv(tmp, k2);
            tmp = y;
            axpy(tmp, hs * Rk45::a31, k1);
            axpy(tmp, hs * Rk45::a32, k2);
            deriv(tmp, k3);
            tmp = y;
            axpy(tmp, hs * Rk45::a41, k1);
            axpy(tmp, hs * Rk45::a42, k2);
            axpy(tmp, hs * Rk45::a43, k3);
            deriv(tmp, k4);
            tmp = y;
            axpy(tmp, hs * Rk45::a51, k1);
            axpy(tmp, hs * Rk45::a52, k2);
            axpy(tmp, hs * Rk45::a53, k3);
            axpy(tmp, hs * Rk45::a54, k4);
            deriv(tmp, k5);
            tmp = y;
            axpy(tmp, hs * Rk45::a61, k1);
            axpy(tmp, hs * Rk45::a62, k2);
            axpy(tmp, hs * Rk45::a63, k3);
            axpy(tmp, hs * Rk45::a64, k4);
            axpy(tmp, hs * Rk45::a65, k5);
            deriv(tmp, k6);
            y5 = y;
            axpy(y5, hs * Rk45::b1, k1);
            axpy(y5, hs * Rk45::b3, k3);
            axpy(y5, hs * Rk45::b4, k4);
            axpy(y5, hs * Rk45::b5, k5);
            axpy(y5, hs * Rk45::b6, k6);
            deriv(y5, k7);

            double err = 0.0;
            for (std::size_t i = 0; i <= n; ++i) {
                double e = hs * (Rk45::e1 * k1[i] + Rk45::e3 * k3[i] + Rk45::e4 * k4[i] +
                                 Rk45::e5 * k5[i] + Rk45::e6 * k6[i] + Rk45::e7 * k7[i]);
                err = std::max(err, std::abs(e));
            }
            if (err <= abstol) {
                t += hs;
                y = y5;
            }
            double shrink = err > 0.0 ? 0.9 * std::pow(abstol / err, 0.2) : 5.0;
            h = hs * std::clamp(shrink, 0.1, 5.0);
            if (h < 1e-15 * t_final)
                throw InvariantViolation("cascade integrator step size underflow");
        }
        t = t_target;
        record(t);
    }
    traj.integrated_emission = y[n];
    return traj;
}

std::optional<double> peak_time(const PopulationTrajectory& trajectory) {
    if (trajectory.gamma.empty()) throw InvalidArgument("empty trajectory");
    std::size_t best = 0;
    for (std::size_t i = 1; i < trajectory.gamma.size(); ++i)
        if (trajectory.gamma[i] > trajectory.gamma[best]) best = i;
    if (best == 0) return std::nullopt;
    return trajectory.times[best];
}

void write_cascade_csv(const PopulationTrajectory& trajectory, std::ostream& out) {
    out << "# energies in gamma0, times in 1/gamma0\n";
    out << "t,gamma_over_gamma0";
    if (!trajectory.populations.empty())
        for (std::size_t m = 0; m < trajectory.populations.front().size(); ++m)
            out << ",p_" << m;
    out << '\n';
    out.precision(17);
    for (std::size_t i = 0; i < trajectory.times.size(); ++i) {
        out << trajectory.times[i] << ',' << trajectory.gamma[i];
        for (double p : trajectory.populations[i]) out << ',' << p;
        out << '\n';
    }
}

}  // namespace ceeat
