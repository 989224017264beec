#pragma once

// Test-only brute-force helpers, kept independent of the library's
// factorized golden-rule path.

#include <Eigen/Dense>

#include "ceeat/operators.hpp"

namespace ceeat::testing {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Eigen::VectorXcd kron_vec(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    Eigen::VectorXcd out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a[i] * b;
    return out;
}

/// Transfer rate on the explicit donor (x) acceptor product space:
/// || (C_D (x) C_A) |psi_D psi_A> ||^2, no factorization assumed.
inline double product_space_transfer_rate(const StateVector& donor,
                                          const SparseOperator& donor_coupling,
                                          const StateVector& acceptor,
                                          const SparseOperator& acceptor_coupling) {
    Eigen::MatrixXcd coupling = kron(donor_coupling.dense(), acceptor_coupling.dense());
    Eigen::VectorXcd initial = kron_vec(donor.amplitudes(), acceptor.amplitudes());
    return (coupling * initial).squaredNorm();
}

}  // namespace ceeat::testing
