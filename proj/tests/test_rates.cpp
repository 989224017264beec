#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ceeat/rates.hpp"
#include "support.hpp"

using namespace ceeat;

TEST_CASE("closed-form enhancements") {
    AggregateSpec field = AggregateSpec::field();

    CHECK(closed_form_enhancement(Process::SR, AggregateSpec::spin({4, 4, 2}), field).value ==
          6.0);
    CHECK(closed_form_enhancement(Process::SA, field, AggregateSpec::ho({3, 0, {0, 0}})).value ==
          3.0);
    // donor factor (2+1-2)(2-1+1) = 2, acceptor factor (2+1-2+1)(2-1) = 2
    CHECK(closed_form_enhancement(Process::ST, AggregateSpec::spin({2, 2, 1}),
                                  AggregateSpec::spin({2, 2, 1}))
              .value == 4.0);

    SUBCASE("dark transitions are exactly zero") {
        CHECK(closed_form_enhancement(Process::SR, AggregateSpec::spin({4, 3, 1}), field).value ==
              0.0);
        CHECK(closed_form_enhancement(Process::SA, field, AggregateSpec::spin({4, 4, 4})).value ==
              0.0);
    }

    SUBCASE("unsupported combinations are rejected") {
        CHECK_THROWS_AS(closed_form_enhancement(Process::SR, field, field), InvalidArgument);
        CHECK_THROWS_AS(
            closed_form_enhancement(Process::SA, AggregateSpec::spin({2, 2, 1}), field),
            InvalidArgument);
        CHECK_THROWS_AS(closed_form_enhancement(Process::ST, AggregateSpec::spin({2, 2, 1}), field),
                        InvalidArgument);
    }
}

TEST_CASE("golden rule on explicit states") {
    SUBCASE("four-site single excitation, symmetric") {
        StateVector psi = spin_dicke_state({4, 4, 1});
        SparseOperator jm = collective_op(psi.sector_ptr(), CollectiveOp::j_minus);
        CHECK(golden_rule_enhancement(psi, jm).value == doctest::Approx(4.0).epsilon(1e-13));
    }
    SUBCASE("four-site alternating state is dark") {
        // the l = 3 multiplet at m = 1 is dark for every degeneracy index
        for (int deg = 0; deg < 3; ++deg) {
            StateVector psi = spin_dicke_state({4, 3, 1}, deg);
            SparseOperator jm = collective_op(psi.sector_ptr(), CollectiveOp::j_minus);
            CHECK(golden_rule_enhancement(psi, jm).value < 1e-12);
        }
    }
    SUBCASE("two-HO bright state") {
        StateVector psi = ho_collective_state({2, 1, {0}});
        SparseOperator a = collective_op(psi.sector_ptr(), CollectiveOp::a_lower);
        CHECK(golden_rule_enhancement(psi, a).value == doctest::Approx(2.0).epsilon(1e-13));
    }
    SUBCASE("reference element rescales the ratio") {
        StateVector psi = spin_dicke_state({4, 4, 1});
        SparseOperator jm = collective_op(psi.sector_ptr(), CollectiveOp::j_minus);
        CHECK(golden_rule_enhancement(psi, jm, 2.0).value == doctest::Approx(1.0));
        CHECK_THROWS_AS(golden_rule_enhancement(psi, jm, 0.0), InvalidArgument);
    }
}

TEST_CASE("oracle equivalence across the rate table") {
    // the central theorem-check at reduced size; the acceptance suite runs
    // the full N <= 6 / HO N <= 4 sweep
    auto rows = table1_rows(4, 3, 3, 1);
    CHECK(rows.size() > 1000);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, std::abs(r.closed_form - r.oracle));
    CHECK(worst < 1e-9);

    SUBCASE("dark equivalence is two-sided") {
        for (const auto& r : rows) {
            if (r.closed_form == 0.0) CHECK(r.oracle < 1e-12);
            if (r.oracle < 1e-12) CHECK(r.closed_form == 0.0);
        }
    }
}

TEST_CASE("time reversal links absorption to emission one rung up") {
    for (int n = 1; n <= 6; ++n) {
        for (int l = (n + 1) / 2; l <= n; ++l) {
            for (int m = n - l; m < l; ++m) {
                AggregateSpec at_m = AggregateSpec::spin({n, l, m});
                AggregateSpec at_m1 = AggregateSpec::spin({n, l, m + 1});
                double sa =
                    closed_form_enhancement(Process::SA, AggregateSpec::field(), at_m).value;
                double sr =
                    closed_form_enhancement(Process::SR, at_m1, AggregateSpec::field()).value;
                CHECK(sa == sr);
            }
        }
    }
}

TEST_CASE("transfer rates factorize on product states") {
    struct SpinPair {
        SpinDickeLabel d, a;
        int deg_d, deg_a;
    };
    const std::vector<SpinPair> pairs = {
        {{2, 2, 1}, {2, 2, 1}, 0, 0},
        {{4, 4, 2}, {3, 3, 1}, 0, 0},
        {{4, 3, 2}, {4, 4, 1}, 1, 0},
        {{3, 2, 1}, {4, 3, 2}, 0, 2},
    };
    for (const auto& p : pairs) {
        StateVector d = spin_dicke_state(p.d, p.deg_d);
        StateVector a = spin_dicke_state(p.a, p.deg_a);
        SparseOperator d_low = collective_op(d.sector_ptr(), CollectiveOp::j_minus);
        SparseOperator a_raise = collective_op(a.sector_ptr(), CollectiveOp::j_plus);
        double brute = testing::product_space_transfer_rate(d, d_low, a, a_raise);
        double factorized = golden_rule_enhancement(d, d_low, a, a_raise).value;
        double closed = closed_form_enhancement(Process::ST, AggregateSpec::spin(p.d, p.deg_d),
                                                AggregateSpec::spin(p.a, p.deg_a))
                            .value;
        CHECK(brute == doctest::Approx(factorized).epsilon(1e-12));
        CHECK(brute == doctest::Approx(closed).epsilon(1e-10));
    }

    SUBCASE("mixed spin donor, HO acceptor") {
        StateVector d = spin_dicke_state({3, 3, 2});
        StateVector a = ho_collective_state({2, 1, {1}});
        SparseOperator d_low = collective_op(d.sector_ptr(), CollectiveOp::j_minus);
        SparseOperator a_raise = collective_op(a.sector_ptr(), CollectiveOp::a_raise);
        double brute = testing::product_space_transfer_rate(d, d_low, a, a_raise);
        double closed = closed_form_enhancement(Process::ST, AggregateSpec::spin({3, 3, 2}),
                                                AggregateSpec::ho({2, 1, {1}}))
                            .value;
        CHECK(brute == doctest::Approx(closed).epsilon(1e-10));
        CHECK(closed == 16.0);  // (3+2-3)(3-2+1) * 2*(1+1) = 4 * 4
    }
}

TEST_CASE("maxima") {
    MaxEnhancement sr_spin = max_enhancement(Process::SR, AggregateKind::spin,
                                             AggregateKind::field, 4, 0);
    CHECK(!sr_spin.unbounded);
    CHECK(sr_spin.value == 6.0);

    SUBCASE("even N follows (N/2)(N/2+1)") {
        for (int n = 2; n <= 8; n += 2) {
            MaxEnhancement m =
                max_enhancement(Process::SR, AggregateKind::spin, AggregateKind::field, n, 0);
            CHECK(m.value == double(n / 2) * double(n / 2 + 1));
        }
    }
    SUBCASE("odd N uses floor(N/2)") {
        MaxEnhancement m =
            max_enhancement(Process::SR, AggregateKind::spin, AggregateKind::field, 5, 0);
        CHECK(m.value == 2.0 * 4.0);  // m=2: 2*(5-2+1)
    }
    SUBCASE("spin-spin transfer multiplies per-aggregate maxima") {
        MaxEnhancement m =
            max_enhancement(Process::ST, AggregateKind::spin, AggregateKind::spin, 2, 2);
        CHECK(m.value == 4.0);
    }
    SUBCASE("any HO participant is unbounded") {
        CHECK(max_enhancement(Process::SR, AggregateKind::ho, AggregateKind::field, 3, 0)
                  .unbounded);
        CHECK(max_enhancement(Process::SA, AggregateKind::field, AggregateKind::ho, 0, 2)
                  .unbounded);
        CHECK(max_enhancement(Process::ST, AggregateKind::spin, AggregateKind::ho, 4, 2)
                  .unbounded);
    }
    SUBCASE("rejects nonsense combinations") {
        CHECK_THROWS_AS(
            max_enhancement(Process::SR, AggregateKind::field, AggregateKind::field, 0, 0),
            InvalidArgument);
    }
}

TEST_CASE("net flux") {
    // symmetric donor/acceptor with equal fillings: forward and backward
    // closed forms coincide
    AggregateSpec x = AggregateSpec::spin({4, 4, 2});
    double forward = closed_form_enhancement(Process::ST, x, x).value;
    double backward = closed_form_enhancement(Process::ST, x, x).value;
    CHECK(net_flux(forward, backward) == 0.0);

    CHECK(net_flux(5.0, 0.0) == 5.0);
    CHECK(net_flux(6.0, 2.0) == 4.0);
    CHECK(net_flux(1.0, 3.0) == -2.0);
    CHECK_THROWS_AS(net_flux(-1.0, 0.0), InvalidArgument);
}

TEST_CASE("anharmonic interpolation") {
    SUBCASE("harmonic limit") {
        AnharmonicRate r = anharmonic_sr_rate(4, 0.0, 2);
        CHECK(r.value == doctest::Approx(8.0).epsilon(1e-10));
    }
    SUBCASE("hard-core limit approaches the spin value") {
        AnharmonicRate r = anharmonic_sr_rate(4, 1e6, 2);
        CHECK(r.value == doctest::Approx(6.0).epsilon(1e-4));
    }
    SUBCASE("single site is unit rate for any U") {
        for (double u : {0.0, 1.0, 1e3}) {
            CHECK(anharmonic_sr_rate(1, u, 1).value == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
    SUBCASE("monotone non-increasing in U, bounded by the two limits") {
        const int n_sites = 4, n_exc = 2;
        double spin_limit = double(n_exc) * double(n_sites - n_exc + 1);
        double ho_limit = double(n_sites) * double(n_exc);
        double prev = ho_limit + 1e-9;
        for (double u : {0.0, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0, 1e4, 1e6}) {
            double v = anharmonic_sr_rate(n_sites, u, n_exc).value;
            CHECK(v <= prev + 1e-9);
            CHECK(v >= spin_limit - 1e-9);
            CHECK(v <= ho_limit + 1e-9);
            prev = v;
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(anharmonic_sr_rate(0, 1.0, 1), InvalidArgument);
        CHECK_THROWS_AS(anharmonic_sr_rate(2, -1.0, 1), InvalidArgument);
        CHECK_THROWS_AS(anharmonic_sr_rate(2, 1.0, 0), InvalidArgument);
    }
}
