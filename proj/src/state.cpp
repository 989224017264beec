#include "ceeat/state.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

namespace ceeat {

StateVector::StateVector(SectorPtr sector, Eigen::VectorXcd amplitudes, bool require_normalized)
    : sector_(std::move(sector)), amps_(std::move(amplitudes)) {
    if (!sector_) throw InvalidArgument("StateVector requires a sector");
    if (static_cast<std::size_t>(amps_.size()) != sector_->size())
        throw SectorMismatch("amplitude vector length does not match sector size");
    if (require_normalized && std::abs(amps_.norm() - 1.0) > kNormTolerance)
        throw InvalidArgument("state is not normalized (flag it as an intermediate instead)");
}

StateVector StateVector::normalized() const {
    double n = amps_.norm();
    if (n == 0.0) throw InvalidArgument("cannot normalize the zero vector");
    return StateVector(sector_, amps_ / n);
}

nlohmann::json StateVector::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (std::size_t i = 0; i < sector_->size(); ++i) {
        out.push_back({sector_->config(i), amps_[static_cast<Eigen::Index>(i)].real(),
                       amps_[static_cast<Eigen::Index>(i)].imag()});
    }
    return out;
}

StateVector StateVector::basis_state(SectorPtr sector, std::size_t index) {
    if (index >= sector->size()) throw InvalidArgument("basis index out of range");
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(sector->size()));
    v[static_cast<Eigen::Index>(index)] = 1.0;
    return StateVector(std::move(sector), std::move(v));
}

}  // namespace ceeat
