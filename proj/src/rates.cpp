#include "ceeat/rates.hpp"

#include <cmath>
#include <ostream>
#include <sstream>
#include <string>

#include <Eigen/Eigenvalues>

namespace ceeat {

namespace {

double spin_emit_factor(const SpinDickeLabel& s) {
    return double(s.ladder + s.excitations - s.n_sites) * double(s.ladder - s.excitations + 1);
}

double spin_absorb_factor(const SpinDickeLabel& s) {
    return double(s.ladder + s.excitations - s.n_sites + 1) * double(s.ladder - s.excitations);
}

double ho_emit_factor(const HODickeLabel& h) { return double(h.n_sites) * double(h.bright); }

double ho_absorb_factor(const HODickeLabel& h) {
    return double(h.n_sites) * double(h.bright + 1);
}

double closed_emit(const AggregateSpec& a) {
    return a.kind == AggregateKind::spin ? spin_emit_factor(a.spin_label)
                                         : ho_emit_factor(a.ho_label);
}

double closed_absorb(const AggregateSpec& a) {
    return a.kind == AggregateKind::spin ? spin_absorb_factor(a.spin_label)
                                         : ho_absorb_factor(a.ho_label);
}

void validate_aggregate(const AggregateSpec& a) {
    if (a.kind == AggregateKind::spin) a.spin_label.validate();
    if (a.kind == AggregateKind::ho) a.ho_label.validate();
}

StateVector build_state(const AggregateSpec& a) {
    if (a.kind == AggregateKind::spin)
        return spin_dicke_state(a.spin_label, a.spin_degeneracy);
    return ho_collective_state(a.ho_label);
}

// Squared norm of the site-summed lowering operator applied to the
// aggregate state (zero when there is nothing to emit).
double brute_emit(const AggregateSpec& a) {
    StateVector psi = build_state(a);
    if (psi.sector().n_excitations() == 0) return 0.0;
    CollectiveOp op =
        a.kind == AggregateKind::spin ? CollectiveOp::j_minus : CollectiveOp::a_lower;
    return collective_op(psi.sector_ptr(), op).apply(psi.amplitudes()).squaredNorm();
}

double brute_absorb(const AggregateSpec& a) {
    StateVector psi = build_state(a);
    if (a.kind == AggregateKind::spin &&
        psi.sector().n_excitations() == psi.sector().n_sites())
        return 0.0;  // fully excited spins absorb nothing
    CollectiveOp op =
        a.kind == AggregateKind::spin ? CollectiveOp::j_plus : CollectiveOp::a_raise;
    return collective_op(psi.sector_ptr(), op).apply(psi.amplitudes()).squaredNorm();
}

void check_combination(Process process, const AggregateSpec& donor,
                       const AggregateSpec& acceptor) {
    auto is_aggregate = [](const AggregateSpec& a) { return a.kind != AggregateKind::field; };
    bool ok = false;
    switch (process) {
        case Process::SR: ok = is_aggregate(donor) && acceptor.kind == AggregateKind::field; break;
        case Process::SA: ok = donor.kind == AggregateKind::field && is_aggregate(acceptor); break;
        case Process::ST: ok = is_aggregate(donor) && is_aggregate(acceptor); break;
    }
    if (!ok) throw InvalidArgument("unsupported process/kind combination");
    validate_aggregate(donor);
    validate_aggregate(acceptor);
}

std::string kind_name(AggregateKind k) {
    switch (k) {
        case AggregateKind::spin: return "spin";
        case AggregateKind::ho: return "ho";
        case AggregateKind::field: return "field";
    }
    return "?";
}

std::string process_name(Process p) {
    switch (p) {
        case Process::SR: return "SR";
        case Process::SA: return "SA";
        case Process::ST: return "ST";
    }
    return "?";
}

}  // namespace

AggregateSpec AggregateSpec::spin(SpinDickeLabel label, int degeneracy_index) {
    AggregateSpec a;
    a.kind = AggregateKind::spin;
    a.spin_label = label;
    a.spin_degeneracy = degeneracy_index;
    return a;
}

AggregateSpec AggregateSpec::ho(HODickeLabel label) {
    AggregateSpec a;
    a.kind = AggregateKind::ho;
    a.ho_label = std::move(label);
    return a;
}

AggregateSpec AggregateSpec::field() { return AggregateSpec{}; }

int AggregateSpec::n_sites() const {
    switch (kind) {
        case AggregateKind::spin: return spin_label.n_sites;
        case AggregateKind::ho: return ho_label.n_sites;
        case AggregateKind::field: return 0;
    }
    return 0;
}

RateEnhancement closed_form_enhancement(Process process, const AggregateSpec& donor,
                                        const AggregateSpec& acceptor) {
    check_combination(process, donor, acceptor);
    switch (process) {
        case Process::SR: return {closed_emit(donor)};
        case Process::SA: return {closed_absorb(acceptor)};
        case Process::ST: return {closed_emit(donor) * closed_absorb(acceptor)};
    }
    throw InvalidArgument("unknown process");
}

RateEnhancement golden_rule_enhancement(const StateVector& initial,
                                        const SparseOperator& coupling,
                                        double reference_element) {
    if (reference_element == 0.0) throw InvalidArgument("reference element must be nonzero");
    if (!coupling.domain().compatible(initial.sector()))
        throw SectorMismatch("coupling does not act on the initial sector");
    double num = coupling.apply(initial.amplitudes()).squaredNorm();
    return {num / (reference_element * reference_element)};
}

RateEnhancement golden_rule_enhancement(const StateVector& donor,
                                        const SparseOperator& donor_coupling,
                                        const StateVector& acceptor,
                                        const SparseOperator& acceptor_coupling,
                                        double reference_element) {
    if (reference_element == 0.0) throw InvalidArgument("reference element must be nonzero");
    if (!donor_coupling.domain().compatible(donor.sector()) ||
        !acceptor_coupling.domain().compatible(acceptor.sector()))
        throw SectorMismatch("coupling does not act on the given sectors");
    double d = donor_coupling.apply(donor.amplitudes()).squaredNorm();
    double a = acceptor_coupling.apply(acceptor.amplitudes()).squaredNorm();
    return {d * a / (reference_element * reference_element)};
}

RateEnhancement oracle_enhancement(Process process, const AggregateSpec& donor,
                                   const AggregateSpec& acceptor) {
    check_combination(process, donor, acceptor);
    switch (process) {
        case Process::SR: return {brute_emit(donor)};
        case Process::SA: return {brute_absorb(acceptor)};
        case Process::ST: return {brute_emit(donor) * brute_absorb(acceptor)};
    }
    throw InvalidArgument("unknown process");
}

MaxEnhancement max_enhancement(Process process, AggregateKind donor_kind,
                               AggregateKind acceptor_kind, int n_donor, int n_acceptor) {
    AggregateSpec d, a;
    d.kind = donor_kind;
    a.kind = acceptor_kind;
    auto spin_max_emit = [](int n) {
        int m = n / 2;
        return double(m) * double(n - m + 1);
    };
    auto spin_max_absorb = [](int n) {
        int m = n / 2;
        return double(m + 1) * double(n - m);
    };
    auto check = [&](const AggregateSpec& x, int n) {
        if (x.kind != AggregateKind::field && n < 1)
            throw InvalidArgument("aggregate size must be >= 1");
    };
    check(d, n_donor);
    check(a, n_acceptor);

    switch (process) {
        case Process::SR:
            if (donor_kind == AggregateKind::field || acceptor_kind != AggregateKind::field)
                throw InvalidArgument("unsupported process/kind combination");
            if (donor_kind == AggregateKind::ho) return {true, 0.0};
            return {false, spin_max_emit(n_donor)};
        case Process::SA:
            if (donor_kind != AggregateKind::field || acceptor_kind == AggregateKind::field)
                throw InvalidArgument("unsupported process/kind combination");
            if (acceptor_kind == AggregateKind::ho) return {true, 0.0};
            return {false, spin_max_absorb(n_acceptor)};
        case Process::ST:
            if (donor_kind == AggregateKind::field || acceptor_kind == AggregateKind::field)
                throw InvalidArgument("unsupported process/kind combination");
            if (donor_kind == AggregateKind::ho || acceptor_kind == AggregateKind::ho)
                return {true, 0.0};
            return {false, spin_max_emit(n_donor) * spin_max_absorb(n_acceptor)};
    }
    throw InvalidArgument("unknown process");
}

double net_flux(double forward_rate, double backward_rate) {
    if (forward_rate < 0.0 || backward_rate < 0.0)
        throw InvalidArgument("rates must be non-negative");
    return forward_rate - backward_rate;
}

AnharmonicRate anharmonic_sr_rate(int n_sites, double u_over_v, int n_excitations) {
    if (n_sites < 1) throw InvalidArgument("n_sites must be >= 1");
    if (n_excitations < 1) throw InvalidArgument("n_excitations must be >= 1");
    if (u_over_v < 0.0) throw InvalidArgument("anharmonicity must be non-negative");

    SectorPtr sector = make_sector(SiteKind::ho, n_sites, n_excitations);
    if (n_excitations > n_sites * sector->per_site_cutoff())
        throw InvalidArgument("n_excitations exceeds sector capacity");
    const Eigen::Index dim = static_cast<Eigen::Index>(sector->size());

    // Hopping of -1 puts the bright collective mode at the bottom of the
    // sector, so the on-site penalty pushes multi-occupancy levels away from
    // it instead of through it and the interpolation stays monotone.
    Eigen::MatrixXcd h =
        build_hamiltonian(sector, uniform_coupling_spec(n_sites, -1.0)).dense();
    for (std::size_t i = 0; i < sector->size(); ++i) {
        double anh = 0.0;
        for (int s = 0; s < n_sites; ++s) {
            double v = sector->occupation(i, s);
            anh += 0.5 * u_over_v * v * (v - 1.0);
        }
        h(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) += anh;
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    Eigen::MatrixXcd lowered =
        collective_op(sector, CollectiveOp::a_lower).dense() * es.eigenvectors();

    // Max emission over eigenstates; degenerate eigenvalue clusters are
    // scanned jointly so the result does not depend on the solver's choice
    // of basis within a cluster.
    double span = es.eigenvalues()[dim - 1] - es.eigenvalues()[0];
    double tol = 1e-9 * std::max(1.0, span) + 1e-12;
    AnharmonicRate best{-1.0, 0};
    Eigen::Index start = 0;
    while (start < dim) {
        Eigen::Index stop = start + 1;
        while (stop < dim && es.eigenvalues()[stop] - es.eigenvalues()[stop - 1] < tol) ++stop;
        Eigen::MatrixXcd w = lowered.middleCols(start, stop - start);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> gram(w.adjoint() * w);
        double top = gram.eigenvalues().maxCoeff();
        if (top > best.value) best = {top, static_cast<int>(start)};
        start = stop;
    }
    return best;
}

std::vector<Table1Row> table1_rows(int spin_n_max, int ho_n_max, int ho_r_max,
                                   int ho_dark_sum_max) {
    struct Entry {
        AggregateSpec spec;
        double emit_closed, absorb_closed;
        double emit_oracle, absorb_oracle;
    };
    std::vector<Entry> entries;

    for (int n = 1; n <= spin_n_max; ++n) {
        for (int l = (n + 1) / 2; l <= n; ++l) {
            int mult = multiplet_multiplicity(n, l);
            for (int m = n - l; m <= l; ++m) {
                auto basis = spin_multiplet_basis(n, l, m);
                for (int deg = 0; deg < mult; ++deg) {
                    AggregateSpec spec = AggregateSpec::spin({n, l, m}, deg);
                    Entry e{spec, closed_emit(spec), closed_absorb(spec), 0.0, 0.0};
                    const StateVector& psi = basis[deg];
                    e.emit_oracle =
                        m == 0 ? 0.0
                               : collective_op(psi.sector_ptr(), CollectiveOp::j_minus)
                                     .apply(psi.amplitudes())
                                     .squaredNorm();
                    e.absorb_oracle =
                        m == n ? 0.0
                               : collective_op(psi.sector_ptr(), CollectiveOp::j_plus)
                                     .apply(psi.amplitudes())
                                     .squaredNorm();
                    entries.push_back(std::move(e));
                }
            }
        }
    }

    // all dark vectors of length n-1 with sum <= ho_dark_sum_max
    auto dark_vectors = [&](int n) {
        std::vector<std::vector<int>> out;
        std::vector<int> cur(std::max(n - 1, 0), 0);
        auto rec = [&](auto&& self, int pos, int budget) -> void {
            if (pos == n - 1) {
                out.push_back(cur);
                return;
            }
            for (int v = 0; v <= budget; ++v) {
                cur[pos] = v;
                self(self, pos + 1, budget - v);
            }
        };
        rec(rec, 0, ho_dark_sum_max);
        return out;
    };

    for (int n = 1; n <= ho_n_max; ++n) {
        for (int r = 0; r <= ho_r_max; ++r) {
            for (const auto& dark : dark_vectors(n)) {
                AggregateSpec spec = AggregateSpec::ho({n, r, dark});
                Entry e{spec, closed_emit(spec), closed_absorb(spec), 0.0, 0.0};
                StateVector psi = ho_collective_state(spec.ho_label);
                e.emit_oracle =
                    spec.ho_label.total_excitations() == 0
                        ? 0.0
                        : collective_op(psi.sector_ptr(), CollectiveOp::a_lower)
                              .apply(psi.amplitudes())
                              .squaredNorm();
                e.absorb_oracle = collective_op(psi.sector_ptr(), CollectiveOp::a_raise)
                                      .apply(psi.amplitudes())
                                      .squaredNorm();
                entries.push_back(std::move(e));
            }
        }
    }

    std::vector<Table1Row> rows;
    AggregateSpec field = AggregateSpec::field();
    for (const auto& e : entries) {
        rows.push_back({Process::SR, e.spec, field, e.emit_closed, e.emit_oracle});
        rows.push_back({Process::SA, field, e.spec, e.absorb_closed, e.absorb_oracle});
    }
    for (const auto& d : entries) {
        for (const auto& a : entries) {
            rows.push_back({Process::ST, d.spec, a.spec, d.emit_closed * a.absorb_closed,
                            d.emit_oracle * a.absorb_oracle});
        }
    }
    return rows;
}

void write_table1_csv(const std::vector<Table1Row>& rows, std::ostream& out) {
    auto agg_fields = [](const AggregateSpec& a) {
        std::ostringstream s;
        if (a.kind == AggregateKind::spin) {
            s << a.spin_label.n_sites << ',' << a.spin_label.ladder << ','
              << a.spin_label.excitations << ',' << a.spin_degeneracy << ",,";
        } else if (a.kind == AggregateKind::ho) {
            s << a.ho_label.n_sites << ",,,," << a.ho_label.bright << ',';
            for (std::size_t i = 0; i < a.ho_label.dark.size(); ++i) {
                if (i) s << ';';
                s << a.ho_label.dark[i];
            }
        } else {
            s << ",,,,,";
        }
        return s.str();
    };
    out << "# energies in gamma0, times in 1/gamma0\n";
    out << "process,donor_kind,acceptor_kind,"
           "N_D,l_D,m_D,deg_D,R_D,dark_D,"
           "N_A,l_A,m_A,deg_A,R_A,dark_A,"
           "closed_form,oracle,abs_diff\n";
    out.precision(17);
    for (const auto& r : rows) {
        out << process_name(r.process) << ',' << kind_name(r.donor.kind) << ','
            << kind_name(r.acceptor.kind) << ',' << agg_fields(r.donor) << ','
            << agg_fields(r.acceptor) << ',' << r.closed_form << ',' << r.oracle << ','
            << std::abs(r.closed_form - r.oracle) << '\n';
    }
}

}  // namespace ceeat
