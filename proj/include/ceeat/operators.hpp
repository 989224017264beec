#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ceeat/state.hpp"

namespace ceeat {

struct SparseEntry {
    std::size_t row;  // codomain index
    std::size_t col;  // domain index
    cplx value;
};

/// Sparse linear map between two basis sectors.
class SparseOperator {
public:
    SparseOperator(SectorPtr domain, SectorPtr codomain, std::vector<SparseEntry> entries);

    const BasisSector& domain() const { return *domain_; }
    const BasisSector& codomain() const { return *codomain_; }
    const SectorPtr& domain_ptr() const { return domain_; }
    const SectorPtr& codomain_ptr() const { return codomain_; }
    const std::vector<SparseEntry>& entries() const { return entries_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const;
    StateVector apply_unnormalized(const StateVector& state) const;

    SparseOperator adjoint() const;
    Eigen::MatrixXcd dense() const;

private:
    SectorPtr domain_;
    SectorPtr codomain_;
    std::vector<SparseEntry> entries_;  // sorted by (row, col), duplicates merged
};

enum class CollectiveOp {
    j_minus,     // sum_i sigma_i^-
    j_plus,      // sum_i sigma_i^+
    a_lower,     // sum_i a_i = sqrt(N) c_N
    a_raise,     // sum_i a_i^dagger
    c_k,         // collective HO mode k (k = N is the bright mode)
    c_k_dagger,
};

/// Collective ladder operator mapping the sector to the adjacent excitation
/// sector. For HO raising operators the codomain cutoff is widened so the
/// default (exact) truncation never clips.
SparseOperator collective_op(const SectorPtr& sector, CollectiveOp which, int k = 0);

/// Jz restricted to a spin sector: diagonal with eigenvalue m - N/2.
SparseOperator jz_operator(const SectorPtr& sector);

/// Site detunings plus symmetric hopping, in the rotating frame of the
/// common site energy.
struct HamiltonianSpec {
    Eigen::VectorXd site_energies;  // detunings delta_i, units of gamma0
    Eigen::MatrixXd coupling;       // symmetric V_ij, zero diagonal, units of gamma0
};

HamiltonianSpec uniform_coupling_spec(int n_sites, double v);

SparseOperator build_hamiltonian(const SectorPtr& sector, const HamiltonianSpec& spec);

/// exp(-i H dt) |psi> via diagonalization of the frozen Hamiltonian.
StateVector evolve_step(const StateVector& state, const SparseOperator& hamiltonian, double dt);

/// <J+ J-> for spin states, <A' A> for HO states; non-negative real.
double expectation_emission(const StateVector& state);

}  // namespace ceeat
