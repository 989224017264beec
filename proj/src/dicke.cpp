#include "ceeat/dicke.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/Sparse>

namespace ceeat {

namespace {

constexpr int kMaxFullSpaceSites = 14;

using SpMat = Eigen::SparseMatrix<cplx>;

// J+ on the direct sum of all excitation sectors of N spins, assembled from
// the per-sector collective operators.
SpMat full_space_j_plus(int n, const std::vector<SectorPtr>& sectors,
                        const std::vector<std::size_t>& offsets, std::size_t dim) {
    std::vector<Eigen::Triplet<cplx>> trips;
    for (int m = 0; m < n; ++m) {
        SparseOperator jp = collective_op(sectors[m], CollectiveOp::j_plus);
        for (const auto& e : jp.entries()) {
            trips.emplace_back(static_cast<int>(offsets[m + 1] + e.row),
                               static_cast<int>(offsets[m] + e.col), e.value);
        }
    }
    SpMat jp(static_cast<int>(dim), static_cast<int>(dim));
    jp.setFromTriplets(trips.begin(), trips.end());
    return jp;
}

struct SectorLayout {
    std::vector<SectorPtr> sectors;
    std::vector<std::size_t> offsets;
    std::size_t dim = 0;
};

SectorLayout spin_layout(int n) {
    SectorLayout lay;
    lay.offsets.resize(n + 2, 0);
    for (int m = 0; m <= n; ++m) {
        lay.sectors.push_back(make_sector(SiteKind::spin, n, m));
        lay.offsets[m + 1] = lay.offsets[m] + lay.sectors[m]->size();
    }
    lay.dim = lay.offsets[n + 1];
    return lay;
}

}  // namespace

void SpinDickeLabel::validate() const {
    if (n_sites < 1) throw InvalidArgument("spin label requires n_sites >= 1");
    if (2 * ladder < n_sites || ladder > n_sites)
        throw NoSuchMultiplet("spin label requires N >= l >= N/2, got l=" +
                              std::to_string(ladder) + " for N=" + std::to_string(n_sites));
    if (excitations < n_sites - ladder || excitations > ladder)
        throw NoSuchMultiplet("spin label requires N - l <= m <= l");
}

int HODickeLabel::total_excitations() const {
    return bright + std::accumulate(dark.begin(), dark.end(), 0);
}

void HODickeLabel::validate() const {
    if (n_sites < 1) throw InvalidArgument("HO label requires n_sites >= 1");
    if (bright < 0) throw InvalidArgument("bright occupation must be non-negative");
    if (static_cast<int>(dark.size()) != n_sites - 1)
        throw InvalidArgument("dark occupation vector must have length N - 1");
    for (int d : dark)
        if (d < 0) throw InvalidArgument("dark occupations must be non-negative");
}

int multiplet_multiplicity(int n_sites, int ladder) {
    if (2 * ladder < n_sites || ladder > n_sites) return 0;
    int k = n_sites - ladder;
    return static_cast<int>(binomial(n_sites, k) - binomial(n_sites, k - 1));
}

Eigen::MatrixXcd j_squared_sector(int n_sites, int n_excitations) {
    if (n_sites < 1 || n_sites > kMaxFullSpaceSites)
        throw InvalidArgument("J^2 construction supports up to " +
                              std::to_string(kMaxFullSpaceSites) + " sites");
    if (n_excitations < 0 || n_excitations > n_sites)
        throw InvalidArgument("n_excitations out of range");

    SectorLayout lay = spin_layout(n_sites);
    SpMat jp = full_space_j_plus(n_sites, lay.sectors, lay.offsets, lay.dim);
    SpMat jm = SpMat(jp.adjoint());

    SpMat jz(static_cast<int>(lay.dim), static_cast<int>(lay.dim));
    {
        std::vector<Eigen::Triplet<cplx>> trips;
        for (int m = 0; m <= n_sites; ++m) {
            double v = m - 0.5 * n_sites;
            for (std::size_t i = 0; i < lay.sectors[m]->size(); ++i) {
                int g = static_cast<int>(lay.offsets[m] + i);
                trips.emplace_back(g, g, v);
            }
        }
        jz.setFromTriplets(trips.begin(), trips.end());
    }

    SpMat jx = 0.5 * (jp + jm);
    SpMat jy = cplx(0.0, -0.5) * (jp - jm);
    SpMat jsq = SpMat(jx * jx) + SpMat(jy * jy) + SpMat(jz * jz);

    // The m-sector block; blocks coupling m to m +- 2 cancel between Jx^2
    // and Jy^2 and are dropped here.
    std::size_t off = lay.offsets[n_excitations];
    std::size_t d = lay.sectors[n_excitations]->size();
    Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(d, d);
    for (int col = 0; col < jsq.outerSize(); ++col) {
        for (SpMat::InnerIterator it(jsq, col); it; ++it) {
            std::size_t r = static_cast<std::size_t>(it.row());
            std::size_t c = static_cast<std::size_t>(it.col());
            if (r >= off && r < off + d && c >= off && c < off + d)
                block(r - off, c - off) = it.value();
        }
    }
    return block;
}

std::vector<StateVector> spin_multiplet_basis(int n_sites, int ladder, int n_excitations) {
    SpinDickeLabel label{n_sites, ladder, n_excitations};
    label.validate();

    SectorPtr sector = make_sector(SiteKind::spin, n_sites, n_excitations);
    const Eigen::Index dim = static_cast<Eigen::Index>(sector->size());
    const int mult = multiplet_multiplicity(n_sites, ladder);

    if (ladder == n_sites) {
        // Fully symmetric ladder: the unique flat superposition.
        Eigen::VectorXcd v = Eigen::VectorXcd::Constant(dim, 1.0 / std::sqrt(double(dim)));
        return {StateVector(sector, std::move(v))};
    }

    Eigen::MatrixXcd jsq = j_squared_sector(n_sites, n_excitations);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(jsq);

    const double lp = ladder - 0.5 * n_sites;
    const double target = lp * (lp + 1.0);
    Eigen::MatrixXcd sel(dim, mult);
    int found = 0;
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (std::abs(es.eigenvalues()[i] - target) < 1e-6) {
            if (found == mult) throw InvariantViolation("J^2 eigenvalue multiplicity too large");
            sel.col(found++) = es.eigenvectors().col(i);
        }
    }
    if (found != mult)
        throw InvariantViolation("J^2 eigenvalue multiplicity mismatch for l=" +
                                 std::to_string(ladder));

    // Deterministic orthonormal basis of the eigenspace: project site-basis
    // vectors through the (rotation-invariant) eigenprojector, Gram-Schmidt
    // in config order, then fix the phase of the first sizable amplitude.
    Eigen::MatrixXcd projector = sel * sel.adjoint();
    std::vector<StateVector> basis;
    std::vector<Eigen::VectorXcd> accepted;
    for (Eigen::Index alpha = 0; alpha < dim && static_cast<int>(accepted.size()) < mult;
         ++alpha) {
        Eigen::VectorXcd w = projector.col(alpha);
        for (const auto& u : accepted) w -= u.dot(w) * u;
        double nrm = w.norm();
        if (nrm < 1e-6) continue;
        w /= nrm;
        for (Eigen::Index i = 0; i < dim; ++i) {
            if (std::abs(w[i]) > 1e-9) {
                w *= std::conj(w[i]) / std::abs(w[i]);
                break;
            }
        }
        accepted.push_back(w);
    }
    if (static_cast<int>(accepted.size()) != mult)
        throw InvariantViolation("failed to span the multiplet eigenspace");
    basis.reserve(accepted.size());
    for (auto& w : accepted) basis.emplace_back(sector, std::move(w));
    return basis;
}

std::map<int, std::vector<StateVector>> spin_sector_multiplets(int n_sites, int n_excitations) {
    std::map<int, std::vector<StateVector>> out;
    int l_min = (n_sites + 1) / 2;
    for (int l = l_min; l <= n_sites; ++l) {
        if (n_excitations < n_sites - l || n_excitations > l) continue;
        out[l] = spin_multiplet_basis(n_sites, l, n_excitations);
    }
    return out;
}

StateVector spin_dicke_state(const SpinDickeLabel& label, int degeneracy_index) {
    label.validate();
    int mult = multiplet_multiplicity(label.n_sites, label.ladder);
    if (degeneracy_index < 0 || degeneracy_index >= mult)
        throw NoSuchMultiplet("degeneracy index " + std::to_string(degeneracy_index) +
                              " exceeds multiplicity " + std::to_string(mult));
    auto basis = spin_multiplet_basis(label.n_sites, label.ladder, label.excitations);
    return basis[static_cast<std::size_t>(degeneracy_index)];
}

StateVector ho_collective_state(const HODickeLabel& label) {
    label.validate();
    const int n = label.n_sites;

    SectorPtr sector = make_sector(SiteKind::ho, n, 0);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(1);
    amps[0] = 1.0;

    double log_norm = 0.0;  // accumulate factorials as 1/sqrt(R! prod d_k!)
    auto raise_mode = [&](int k, int count) {
        for (int step = 0; step < count; ++step) {
            SparseOperator op = collective_op(sector, CollectiveOp::c_k_dagger, k);
            amps = op.apply(amps);
            sector = op.codomain_ptr();
        }
        for (int j = 1; j <= count; ++j) log_norm += 0.5 * std::log(double(j));
    };
    raise_mode(n, label.bright);
    for (int k = 1; k <= n - 1; ++k) raise_mode(k, label.dark[k - 1]);

    amps *= std::exp(-log_norm);
    StateVector state(sector, std::move(amps), false);
    if (std::abs(state.norm() - 1.0) > 1e-10)
        throw InvariantViolation("collective HO state construction lost norm");
    return state.normalized();
}

StateVector ho_collective_state(const HODickeLabel& label, int per_site_cutoff) {
    StateVector exact = ho_collective_state(label);
    const BasisSector& src = exact.sector();
    const int total = label.total_excitations();
    if (per_site_cutoff >= total) return exact;

    SectorPtr truncated = make_sector(SiteKind::ho, label.n_sites, total, per_site_cutoff);
    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(truncated->size()));
    for (std::size_t i = 0; i < src.size(); ++i) {
        std::vector<int> c = src.config(i);
        cplx a = exact.amplitudes()[static_cast<Eigen::Index>(i)];
        bool fits = true;
        for (int occ : c)
            if (occ > per_site_cutoff) fits = false;
        if (fits) {
            amps[static_cast<Eigen::Index>(truncated->index_of(c))] = a;
        } else if (std::abs(a) > 1e-12) {
            throw TruncationOverflow("per-site cutoff " + std::to_string(per_site_cutoff) +
                                     " clips amplitudes of the requested collective state");
        }
    }
    return StateVector(truncated, std::move(amps), false).normalized();
}

double participation_ratio(const StateVector& state) {
    double sum4 = 0.0;
    for (Eigen::Index i = 0; i < state.amplitudes().size(); ++i) {
        double p = std::norm(state.amplitudes()[i]);
        sum4 += p * p;
    }
    if (sum4 <= 0.0) throw InvalidArgument("participation ratio of the zero vector");
    return 1.0 / sum4;
}

}  // namespace ceeat
