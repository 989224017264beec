#pragma once

#include <iosfwd>
#include <vector>

#include "ceeat/dicke.hpp"

namespace ceeat {

enum class Process { SR, SA, ST };

enum class AggregateKind { spin, ho, field };

/// One side of a transition: a spin aggregate, an HO aggregate, or a field.
struct AggregateSpec {
    AggregateKind kind = AggregateKind::field;
    SpinDickeLabel spin_label{};
    int spin_degeneracy = 0;
    HODickeLabel ho_label{};

    static AggregateSpec spin(SpinDickeLabel label, int degeneracy_index = 0);
    static AggregateSpec ho(HODickeLabel label);
    static AggregateSpec field();

    int n_sites() const;
};

struct RateEnhancement {
    double value = 0.0;  // gamma / gamma0
};

/// Closed-form enhancement for the given process. Spins emit with
/// (l+m-N)(l-m+1) and absorb with (l+m-N+1)(l-m); HOs emit with N*R and
/// absorb with N*(R+1); transfer multiplies the donor emission factor by
/// the acceptor absorption factor.
RateEnhancement closed_form_enhancement(Process process, const AggregateSpec& donor,
                                        const AggregateSpec& acceptor);

/// Golden-rule rate from an explicit state: sum_f |<f|C|i>|^2 / |ref|^2,
/// evaluated by completeness as ||C|i>||^2 / |ref|^2.
RateEnhancement golden_rule_enhancement(const StateVector& initial, const SparseOperator& coupling,
                                        double reference_element = 1.0);

/// Transfer variant for product donor (x) acceptor states: the squared norm
/// factorizes into donor-emission and acceptor-absorption expectations.
RateEnhancement golden_rule_enhancement(const StateVector& donor,
                                        const SparseOperator& donor_coupling,
                                        const StateVector& acceptor,
                                        const SparseOperator& acceptor_coupling,
                                        double reference_element = 1.0);

/// Brute-force enhancement for a (process, donor, acceptor) combination,
/// constructing the states in the site basis and applying the site-summed
/// coupling operators. Independent of the closed forms above.
RateEnhancement oracle_enhancement(Process process, const AggregateSpec& donor,
                                   const AggregateSpec& acceptor);

struct MaxEnhancement {
    bool unbounded = false;
    double value = 0.0;  // meaningful only when bounded
};

/// Table maxima: spins evaluated at l = N, m = floor(N/2); any HO
/// participant is unbounded.
MaxEnhancement max_enhancement(Process process, AggregateKind donor_kind,
                               AggregateKind acceptor_kind, int n_donor, int n_acceptor);

/// Forward minus backward rate; may be negative.
double net_flux(double forward_rate, double backward_rate);

struct AnharmonicRate {
    double value = 0.0;
    int eigenstate_index = 0;  // index (ascending energy) of the reporting eigenstate
};

/// Emission enhancement of the maximal-emission eigenstate of an aggregate
/// of anharmonic sites: on-site penalty U per excitation pair on top of
/// symmetric unit hopping, diagonalized in the n-excitation sector. U is
/// measured in units of the hopping.
AnharmonicRate anharmonic_sr_rate(int n_sites, double u_over_v, int n_excitations);

/// One row of the rate-enhancement report: closed form next to the oracle.
struct Table1Row {
    Process process;
    AggregateSpec donor;
    AggregateSpec acceptor;
    double closed_form = 0.0;
    double oracle = 0.0;
};

/// Every supported (process, donor, acceptor) combination within the given
/// size bounds, with both the closed-form and the oracle value.
std::vector<Table1Row> table1_rows(int spin_n_max, int ho_n_max, int ho_r_max,
                                   int ho_dark_sum_max);

void write_table1_csv(const std::vector<Table1Row>& rows, std::ostream& out);

}  // namespace ceeat
