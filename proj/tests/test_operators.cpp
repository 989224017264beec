#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ceeat/operators.hpp"

using namespace ceeat;

namespace {

StateVector make_state(SectorPtr sector, std::vector<cplx> amps) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(amps.size()));
    for (std::size_t i = 0; i < amps.size(); ++i) v[static_cast<Eigen::Index>(i)] = amps[i];
    return StateVector(std::move(sector), std::move(v));
}

}  // namespace

TEST_CASE("j_minus on symmetric and alternating four-site states") {
    SectorPtr sector = make_sector(SiteKind::spin, 4, 1);
    // configs in decreasing lex order: 1000, 0100, 0010, 0001
    StateVector sym = make_state(sector, {0.5, 0.5, 0.5, 0.5});
    StateVector alt = make_state(sector, {0.5, -0.5, 0.5, -0.5});

    SparseOperator jm = collective_op(sector, CollectiveOp::j_minus);
    CHECK(jm.apply(sym.amplitudes()).squaredNorm() == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(jm.apply(alt.amplitudes()).squaredNorm() == doctest::Approx(0.0).epsilon(1e-14));

    SectorPtr pairs = make_sector(SiteKind::spin, 4, 2);
    double amp = 1.0 / std::sqrt(6.0);
    StateVector pair_sym = make_state(pairs, {amp, amp, amp, amp, amp, amp});
    SparseOperator jm2 = collective_op(pairs, CollectiveOp::j_minus);
    CHECK(jm2.apply(pair_sym.amplitudes()).squaredNorm() == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("a_lower on the symmetric two-HO state") {
    SectorPtr sector = make_sector(SiteKind::ho, 2, 1);
    double s = 1.0 / std::sqrt(2.0);
    StateVector bright = make_state(sector, {s, s});
    SparseOperator a = collective_op(sector, CollectiveOp::a_lower);
    Eigen::VectorXcd lowered = a.apply(bright.amplitudes());
    CHECK(lowered.size() == 1);
    CHECK(std::abs(lowered[0] - cplx(std::sqrt(2.0), 0.0)) < 1e-14);
    CHECK(lowered.squaredNorm() == doctest::Approx(2.0).epsilon(1e-14));  // N * R
}

TEST_CASE("raising and lowering are exact adjoints") {
    SUBCASE("spins") {
        for (int n = 2; n <= 5; ++n) {
            for (int m = 1; m <= n; ++m) {
                SectorPtr sec = make_sector(SiteKind::spin, n, m);
                SparseOperator jm = collective_op(sec, CollectiveOp::j_minus);
                SparseOperator jp = collective_op(jm.codomain_ptr(), CollectiveOp::j_plus);
                CHECK((jm.dense() - jp.dense().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
            }
        }
    }
    SUBCASE("HO collective modes") {
        for (int n = 2; n <= 3; ++n) {
            for (int k = 1; k <= n; ++k) {
                SectorPtr sec = make_sector(SiteKind::ho, n, 2);
                SparseOperator ck = collective_op(sec, CollectiveOp::c_k, k);
                SparseOperator ckd =
                    collective_op(ck.codomain_ptr(), CollectiveOp::c_k_dagger, k);
                CHECK((ck.dense() - ckd.dense().adjoint()).cwiseAbs().maxCoeff() < 1e-15);
            }
        }
    }
}

TEST_CASE("[J+, J-] equals 2 Jz on every sector, N <= 5") {
    for (int n = 1; n <= 5; ++n) {
        for (int m = 0; m <= n; ++m) {
            SectorPtr sec = make_sector(SiteKind::spin, n, m);
            Eigen::Index dim = static_cast<Eigen::Index>(sec->size());
            Eigen::MatrixXcd plus_minus = Eigen::MatrixXcd::Zero(dim, dim);
            Eigen::MatrixXcd minus_plus = Eigen::MatrixXcd::Zero(dim, dim);
            if (m > 0) {
                SparseOperator jm = collective_op(sec, CollectiveOp::j_minus);
                SparseOperator jp = collective_op(jm.codomain_ptr(), CollectiveOp::j_plus);
                plus_minus = jp.dense() * jm.dense();
            }
            if (m < n) {
                SparseOperator jp = collective_op(sec, CollectiveOp::j_plus);
                SparseOperator jm = collective_op(jp.codomain_ptr(), CollectiveOp::j_minus);
                minus_plus = jm.dense() * jp.dense();
            }
            Eigen::MatrixXcd commutator = plus_minus - minus_plus;
            Eigen::MatrixXcd expected = 2.0 * jz_operator(sec).dense();
            CHECK((commutator - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("collective HO modes are independent bosons below the cutoff") {
    // [c_k, c_k'^dagger] = delta_kk' as long as raising cannot clip
    const int n = 3;
    SectorPtr sec = make_sector(SiteKind::ho, n, 2, 4);
    for (int k = 1; k <= n; ++k) {
        for (int kp = 1; kp <= n; ++kp) {
            SparseOperator ckd = collective_op(sec, CollectiveOp::c_k_dagger, kp);
            SparseOperator ck_up = collective_op(ckd.codomain_ptr(), CollectiveOp::c_k, k);
            SparseOperator ck_dn = collective_op(sec, CollectiveOp::c_k, k);
            SparseOperator ckd_dn = collective_op(ck_dn.codomain_ptr(), CollectiveOp::c_k_dagger, kp);
            Eigen::MatrixXcd comm = ck_up.dense() * ckd.dense() - ckd_dn.dense() * ck_dn.dense();
            Eigen::MatrixXcd expected =
                (k == kp) ? Eigen::MatrixXcd::Identity(comm.rows(), comm.cols()).eval()
                          : Eigen::MatrixXcd::Zero(comm.rows(), comm.cols()).eval();
            CHECK((comm - expected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("a_lower equals sqrt(N) times the bright mode") {
    const int n = 4;
    SectorPtr sec = make_sector(SiteKind::ho, n, 3);
    Eigen::MatrixXcd a = collective_op(sec, CollectiveOp::a_lower).dense();
    Eigen::MatrixXcd cn = collective_op(sec, CollectiveOp::c_k, n).dense();
    CHECK((a - std::sqrt(double(n)) * cn).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("build_hamiltonian") {
    SUBCASE("zero spec gives the zero matrix") {
        SectorPtr sec = make_sector(SiteKind::spin, 3, 1);
        HamiltonianSpec spec = uniform_coupling_spec(3, 0.0);
        CHECK(build_hamiltonian(sec, spec).dense().cwiseAbs().maxCoeff() == 0.0);
    }
    SUBCASE("two coupled spins split into +-V") {
        SectorPtr sec = make_sector(SiteKind::spin, 2, 1);
        HamiltonianSpec spec = uniform_coupling_spec(2, 0.7);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(build_hamiltonian(sec, spec).dense());
        CHECK(es.eigenvalues()[0] == doctest::Approx(-0.7).epsilon(1e-14));
        CHECK(es.eigenvalues()[1] == doctest::Approx(0.7).epsilon(1e-14));
    }
    SUBCASE("decoupled detuned sites are diagonal") {
        SectorPtr sec = make_sector(SiteKind::spin, 2, 1);
        HamiltonianSpec spec = uniform_coupling_spec(2, 0.0);
        spec.site_energies << 1.5, -2.5;
        Eigen::MatrixXcd h = build_hamiltonian(sec, spec).dense();
        // config order: (1,0), (0,1)
        CHECK(std::abs(h(0, 0) - cplx(1.5, 0)) < 1e-15);
        CHECK(std::abs(h(1, 1) - cplx(-2.5, 0)) < 1e-15);
        CHECK(std::abs(h(0, 1)) == 0.0);
    }
    SUBCASE("HO hopping carries bosonic factors") {
        SectorPtr sec = make_sector(SiteKind::ho, 2, 2);
        HamiltonianSpec spec = uniform_coupling_spec(2, 1.0);
        Eigen::MatrixXcd h = build_hamiltonian(sec, spec).dense();
        // <11| a_1^dag a_2 |02> = sqrt(2)*sqrt(1)
        std::size_t from = sec->index_of({0, 2});
        std::size_t to = sec->index_of({1, 1});
        CHECK(std::abs(h(to, from) - cplx(std::sqrt(2.0), 0)) < 1e-14);
        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    }
    SUBCASE("rejects asymmetric or nonzero-diagonal couplings") {
        SectorPtr sec = make_sector(SiteKind::spin, 2, 1);
        HamiltonianSpec spec = uniform_coupling_spec(2, 1.0);
        spec.coupling(0, 1) = 2.0;
        CHECK_THROWS_AS(build_hamiltonian(sec, spec), InvalidArgument);
        spec = uniform_coupling_spec(2, 1.0);
        spec.coupling(0, 0) = 1.0;
        CHECK_THROWS_AS(build_hamiltonian(sec, spec), InvalidArgument);
    }
}

TEST_CASE("evolve_step") {
    SectorPtr sec = make_sector(SiteKind::spin, 2, 1);

    SUBCASE("zero Hamiltonian is the identity") {
        StateVector psi = make_state(sec, {0.6, 0.8});
        StateVector out = evolve_step(psi, build_hamiltonian(sec, uniform_coupling_spec(2, 0.0)),
                                      0.37);
        CHECK((out.amplitudes() - psi.amplitudes()).norm() < 1e-14);
    }

    SUBCASE("eigenstates only pick up a phase") {
        double v = 1.3;
        SparseOperator h = build_hamiltonian(sec, uniform_coupling_spec(2, v));
        double s = 1.0 / std::sqrt(2.0);
        StateVector plus = make_state(sec, {s, s});  // eigenvalue +v
        double dt = 0.81;
        StateVector out = evolve_step(plus, h, dt);
        cplx expected_phase = std::polar(1.0, -v * dt);
        CHECK(std::abs(out.amplitudes()[0] - expected_phase * s) < 1e-12);
        CHECK(std::abs(out.amplitudes()[1] - expected_phase * s) < 1e-12);
    }

    SUBCASE("half Rabi period swaps the excitation") {
        double v = 2.4;
        SparseOperator h = build_hamiltonian(sec, uniform_coupling_spec(2, v));
        StateVector start = StateVector::basis_state(sec, 0);  // |10>
        StateVector out = evolve_step(start, h, std::numbers::pi / (2.0 * v));
        CHECK(std::abs(out.amplitudes()[0]) < 1e-12);
        CHECK(std::abs(out.amplitudes()[1]) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(out.norm() - 1.0) < 1e-12);
    }

    SUBCASE("three coupled sites match the projector solution") {
        // all-to-all V in the one-excitation sector of three spins:
        // exp(-iHt) = e^{-2iVt} P_bright + e^{+iVt} (1 - P_bright)
        SectorPtr three = make_sector(SiteKind::spin, 3, 1);
        double v = 0.9, dt = 0.67;
        SparseOperator h = build_hamiltonian(three, uniform_coupling_spec(3, v));
        StateVector start = StateVector::basis_state(three, 0);
        StateVector out = evolve_step(start, h, dt);
        cplx bright_phase = std::polar(1.0, -2.0 * v * dt);
        cplx dark_phase = std::polar(1.0, v * dt);
        CHECK(std::abs(out.amplitudes()[0] - (bright_phase / 3.0 + 2.0 * dark_phase / 3.0)) <
              1e-12);
        for (int i : {1, 2})
            CHECK(std::abs(out.amplitudes()[i] - (bright_phase / 3.0 - dark_phase / 3.0)) <
                  1e-12);
    }

    SUBCASE("rejects non-positive dt") {
        StateVector psi = StateVector::basis_state(sec, 0);
        SparseOperator h = build_hamiltonian(sec, uniform_coupling_spec(2, 1.0));
        CHECK_THROWS_AS(evolve_step(psi, h, 0.0), InvalidArgument);
        CHECK_THROWS_AS(evolve_step(psi, h, -0.1), InvalidArgument);
    }
}

TEST_CASE("expectation_emission") {
    SUBCASE("vacuum emits nothing") {
        StateVector vac = StateVector::basis_state(make_sector(SiteKind::spin, 3, 0), 0);
        CHECK(expectation_emission(vac) == 0.0);
    }
    SUBCASE("localized two-excitation state emits 2") {
        SectorPtr sec = make_sector(SiteKind::spin, 4, 2);
        StateVector psi = StateVector::basis_state(sec, sec->index_of({1, 1, 0, 0}));
        CHECK(expectation_emission(psi) == doctest::Approx(2.0).epsilon(1e-14));
    }
}

TEST_CASE("operator preconditions") {
    CHECK_THROWS_AS(collective_op(make_sector(SiteKind::spin, 3, 0), CollectiveOp::j_minus),
                    InvalidArgument);
    CHECK_THROWS_AS(collective_op(make_sector(SiteKind::spin, 3, 3), CollectiveOp::j_plus),
                    InvalidArgument);
    CHECK_THROWS_AS(collective_op(make_sector(SiteKind::spin, 3, 1), CollectiveOp::a_lower),
                    InvalidArgument);
    CHECK_THROWS_AS(collective_op(make_sector(SiteKind::ho, 3, 1), CollectiveOp::c_k, 0),
                    InvalidArgument);
    CHECK_THROWS_AS(collective_op(make_sector(SiteKind::ho, 3, 1), CollectiveOp::c_k, 4),
                    InvalidArgument);

    SectorPtr a = make_sector(SiteKind::spin, 3, 1);
    SectorPtr b = make_sector(SiteKind::spin, 4, 1);
    SparseOperator jm = collective_op(a, CollectiveOp::j_minus);
    CHECK_THROWS_AS(jm.apply_unnormalized(StateVector::basis_state(b, 0)), SectorMismatch);
}
