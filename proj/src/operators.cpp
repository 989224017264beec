#include "ceeat/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace ceeat {

namespace {

SectorPtr lowered_sector(const BasisSector& s) {
    if (s.n_excitations() == 0)
        throw InvalidArgument("cannot lower below the vacuum sector");
    if (s.kind() == SiteKind::spin)
        return make_sector(SiteKind::spin, s.n_sites(), s.n_excitations() - 1);
    int cutoff = std::min(s.per_site_cutoff(), std::max(s.n_excitations() - 1, 1));
    return make_sector(SiteKind::ho, s.n_sites(), s.n_excitations() - 1, cutoff);
}

SectorPtr raised_sector(const BasisSector& s) {
    if (s.kind() == SiteKind::spin) {
        if (s.n_excitations() >= s.n_sites())
            throw InvalidArgument("cannot raise a fully excited spin sector");
        return make_sector(SiteKind::spin, s.n_sites(), s.n_excitations() + 1);
    }
    // Exact sectors (cutoff >= n) stay exact after raising; deliberately
    // truncated sectors keep their cutoff and the operator clips.
    int cutoff = s.per_site_cutoff() >= s.n_excitations()
                     ? std::max(s.per_site_cutoff(), s.n_excitations() + 1)
                     : s.per_site_cutoff();
    return make_sector(SiteKind::ho, s.n_sites(), s.n_excitations() + 1, cutoff);
}

}  // namespace

SparseOperator::SparseOperator(SectorPtr domain, SectorPtr codomain,
                               std::vector<SparseEntry> entries)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), entries_(std::move(entries)) {
    if (!domain_ || !codomain_) throw InvalidArgument("operator requires sectors");
    for (const auto& e : entries_) {
        if (e.row >= codomain_->size() || e.col >= domain_->size())
            throw InvalidArgument("operator entry outside sector bounds");
    }
    std::sort(entries_.begin(), entries_.end(), [](const SparseEntry& a, const SparseEntry& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });
    // merge duplicates
    std::vector<SparseEntry> merged;
    merged.reserve(entries_.size());
    for (const auto& e : entries_) {
        if (!merged.empty() && merged.back().row == e.row && merged.back().col == e.col)
            merged.back().value += e.value;
        else
            merged.push_back(e);
    }
    entries_.swap(merged);
}

Eigen::VectorXcd SparseOperator::apply(const Eigen::VectorXcd& v) const {
    if (static_cast<std::size_t>(v.size()) != domain_->size())
        throw SectorMismatch("vector length does not match operator domain");
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(codomain_->size()));
    for (const auto& e : entries_)
        out[static_cast<Eigen::Index>(e.row)] += e.value * v[static_cast<Eigen::Index>(e.col)];
    return out;
}

StateVector SparseOperator::apply_unnormalized(const StateVector& state) const {
    if (!state.sector().compatible(*domain_))
        throw SectorMismatch("state sector does not match operator domain");
    return StateVector(codomain_, apply(state.amplitudes()), false);
}

SparseOperator SparseOperator::adjoint() const {
    std::vector<SparseEntry> adj;
    adj.reserve(entries_.size());
    for (const auto& e : entries_) adj.push_back({e.col, e.row, std::conj(e.value)});
    return SparseOperator(codomain_, domain_, std::move(adj));
}

Eigen::MatrixXcd SparseOperator::dense() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(codomain_->size()),
                                                static_cast<Eigen::Index>(domain_->size()));
    for (const auto& e : entries_)
        m(static_cast<Eigen::Index>(e.row), static_cast<Eigen::Index>(e.col)) += e.value;
    return m;
}

SparseOperator collective_op(const SectorPtr& sector, CollectiveOp which, int k) {
    const BasisSector& s = *sector;
    const int n = s.n_sites();
    std::vector<SparseEntry> entries;

    auto require_kind = [&](SiteKind kind, const char* name) {
        if (s.kind() != kind)
            throw InvalidArgument(std::string(name) + " requires a " +
                                  (kind == SiteKind::spin ? "spin" : "HO") + " sector");
    };

    switch (which) {
        case CollectiveOp::j_minus: {
            require_kind(SiteKind::spin, "j_minus");
            SectorPtr codomain = lowered_sector(s);
            for (std::size_t idx = 0; idx < s.size(); ++idx) {
                std::uint32_t m = s.mask(idx);
                for (int site = 0; site < n; ++site) {
                    std::uint32_t bit = 1u << (n - 1 - site);
                    if (m & bit)
                        entries.push_back({codomain->index_of_mask(m & ~bit), idx, 1.0});
                }
            }
            return SparseOperator(sector, codomain, std::move(entries));
        }
        case CollectiveOp::j_plus: {
            require_kind(SiteKind::spin, "j_plus");
            SectorPtr codomain = raised_sector(s);
            for (std::size_t idx = 0; idx < s.size(); ++idx) {
                std::uint32_t m = s.mask(idx);
                for (int site = 0; site < n; ++site) {
                    std::uint32_t bit = 1u << (n - 1 - site);
                    if (!(m & bit))
                        entries.push_back({codomain->index_of_mask(m | bit), idx, 1.0});
                }
            }
            return SparseOperator(sector, codomain, std::move(entries));
        }
        case CollectiveOp::a_lower:
        case CollectiveOp::c_k: {
            require_kind(SiteKind::ho, "a_lower/c_k");
            if (which == CollectiveOp::c_k && (k < 1 || k > n))
                throw InvalidArgument("mode index k must be in [1, n_sites]");
            SectorPtr codomain = lowered_sector(s);
            const double scale = which == CollectiveOp::c_k ? 1.0 / std::sqrt(double(n)) : 1.0;
            for (std::size_t idx = 0; idx < s.size(); ++idx) {
                std::vector<int> c = s.config(idx);
                for (int site = 0; site < n; ++site) {
                    if (c[site] == 0) continue;
                    cplx phase = 1.0;
                    if (which == CollectiveOp::c_k) {
                        double arg = 2.0 * std::numbers::pi * double(k) * double(site) / double(n);
                        phase = std::polar(1.0, arg);
                    }
                    std::vector<int> t = c;
                    t[site] -= 1;
                    entries.push_back(
                        {codomain->index_of(t), idx, scale * phase * std::sqrt(double(c[site]))});
                }
            }
            return SparseOperator(sector, codomain, std::move(entries));
        }
        case CollectiveOp::a_raise:
        case CollectiveOp::c_k_dagger: {
            require_kind(SiteKind::ho, "a_raise/c_k_dagger");
            if (which == CollectiveOp::c_k_dagger && (k < 1 || k > n))
                throw InvalidArgument("mode index k must be in [1, n_sites]");
            SectorPtr codomain = raised_sector(s);
            const double scale =
                which == CollectiveOp::c_k_dagger ? 1.0 / std::sqrt(double(n)) : 1.0;
            for (std::size_t idx = 0; idx < s.size(); ++idx) {
                std::vector<int> c = s.config(idx);
                for (int site = 0; site < n; ++site) {
                    if (c[site] + 1 > codomain->per_site_cutoff()) continue;  // clipped
                    cplx phase = 1.0;
                    if (which == CollectiveOp::c_k_dagger) {
                        double arg = -2.0 * std::numbers::pi * double(k) * double(site) / double(n);
                        phase = std::polar(1.0, arg);
                    }
                    std::vector<int> t = c;
                    t[site] += 1;
                    entries.push_back(
                        {codomain->index_of(t), idx, scale * phase * std::sqrt(double(c[site] + 1))});
                }
            }
            return SparseOperator(sector, codomain, std::move(entries));
        }
    }
    throw InvalidArgument("unknown collective operator");
}

SparseOperator jz_operator(const SectorPtr& sector) {
    if (sector->kind() != SiteKind::spin) throw InvalidArgument("jz requires a spin sector");
    const double value = sector->n_excitations() - 0.5 * sector->n_sites();
    std::vector<SparseEntry> entries;
    entries.reserve(sector->size());
    for (std::size_t i = 0; i < sector->size(); ++i) entries.push_back({i, i, value});
    return SparseOperator(sector, sector, std::move(entries));
}

HamiltonianSpec uniform_coupling_spec(int n_sites, double v) {
    HamiltonianSpec spec;
    spec.site_energies = Eigen::VectorXd::Zero(n_sites);
    spec.coupling = Eigen::MatrixXd::Constant(n_sites, n_sites, v);
    spec.coupling.diagonal().setZero();
    return spec;
}

SparseOperator build_hamiltonian(const SectorPtr& sector, const HamiltonianSpec& spec) {
    const BasisSector& s = *sector;
    const int n = s.n_sites();
    if (spec.site_energies.size() != n || spec.coupling.rows() != n || spec.coupling.cols() != n)
        throw SectorMismatch("Hamiltonian spec dimensions do not match the sector");
    if ((spec.coupling - spec.coupling.transpose()).cwiseAbs().maxCoeff() > 1e-12)
        throw InvalidArgument("coupling matrix must be symmetric");
    if (spec.coupling.diagonal().cwiseAbs().maxCoeff() > 0.0)
        throw InvalidArgument("coupling matrix must have zero diagonal");

    std::vector<SparseEntry> entries;
    for (std::size_t idx = 0; idx < s.size(); ++idx) {
        std::vector<int> c = s.config(idx);
        double diag = 0.0;
        for (int site = 0; site < n; ++site) diag += spec.site_energies[site] * c[site];
        if (diag != 0.0) entries.push_back({idx, idx, diag});
        // hop_ij: move one excitation from j to i, amplitude V_ij * sqrt factors
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (i == j || spec.coupling(i, j) == 0.0 || c[j] == 0) continue;
                if (c[i] + 1 > s.per_site_cutoff()) continue;
                std::vector<int> t = c;
                t[j] -= 1;
                t[i] += 1;
                double amp = spec.coupling(i, j);
                if (s.kind() == SiteKind::ho)
                    amp *= std::sqrt(double(c[j])) * std::sqrt(double(c[i] + 1));
                entries.push_back({s.index_of(t), idx, amp});
            }
        }
    }
    return SparseOperator(sector, sector, std::move(entries));
}

StateVector evolve_step(const StateVector& state, const SparseOperator& hamiltonian, double dt) {
    if (dt <= 0.0) throw InvalidArgument("dt must be positive");
    if (!hamiltonian.domain().compatible(state.sector()) ||
        !hamiltonian.codomain().compatible(state.sector()))
        throw SectorMismatch("Hamiltonian does not act on the state's sector");

    Eigen::MatrixXcd h = hamiltonian.dense();
    double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
        throw InvalidArgument("Hamiltonian must be Hermitian");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::VectorXcd rotated = es.eigenvectors().adjoint() * state.amplitudes();
    for (Eigen::Index i = 0; i < rotated.size(); ++i)
        rotated[i] *= std::polar(1.0, -es.eigenvalues()[i] * dt);
    Eigen::VectorXcd out = es.eigenvectors() * rotated;

    StateVector result(state.sector_ptr(), std::move(out), false);
    if (std::abs(result.norm() - state.norm()) > 1e-10)
        throw InvariantViolation("propagator failed to preserve the norm");
    return result;
}

double expectation_emission(const StateVector& state) {
    const BasisSector& s = state.sector();
    if (s.n_excitations() == 0) return 0.0;
    SectorPtr sector = state.sector_ptr();
    SparseOperator lower = collective_op(
        sector, s.kind() == SiteKind::spin ? CollectiveOp::j_minus : CollectiveOp::a_lower);
    return lower.apply(state.amplitudes()).squaredNorm();
}

}  // namespace ceeat
