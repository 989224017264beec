#pragma once

#include <complex>

#include <Eigen/Dense>
#include <nlohmann/json_fwd.hpp>

#include "ceeat/basis.hpp"

namespace ceeat {

using cplx = std::complex<double>;

/// Complex amplitude vector over a basis sector, unit-normalised unless
/// explicitly flagged as an unnormalised intermediate.
class StateVector {
public:
    StateVector(SectorPtr sector, Eigen::VectorXcd amplitudes, bool require_normalized = true);

    const BasisSector& sector() const { return *sector_; }
    const SectorPtr& sector_ptr() const { return sector_; }
    const Eigen::VectorXcd& amplitudes() const { return amps_; }
    Eigen::VectorXcd& amplitudes() { return amps_; }

    double norm() const { return amps_.norm(); }
    StateVector normalized() const;

    // [[config...], re, im] triples, for debugging and cross-implementation
    // comparison.
    nlohmann::json to_json() const;

    static StateVector basis_state(SectorPtr sector, std::size_t index);

private:
    SectorPtr sector_;
    Eigen::VectorXcd amps_;
};

constexpr double kNormTolerance = 1e-12;

}  // namespace ceeat
