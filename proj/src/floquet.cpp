#include "kjc/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

namespace kjc {

CMatrix build_floquet(const SectorBasis& basis, const SystemParams& params) {
    params.validate();
    const CMatrix free = unitary_exp(build_h0(basis, params), -params.period_T);
    const CMatrix kick = unitary_exp(build_hopping(basis), params.kick_sign * params.kappa_tau);
    return free * kick;
}

namespace {

// Largest-magnitude amplitude made real positive; first index wins ties.
void fix_phase(Eigen::Ref<CVector> v) {
    Eigen::Index best = 0;
    double best_mag = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double m = std::abs(v(i));
        if (m > best_mag + 1e-12) {
            best_mag = m;
            best = i;
        }
    }
    if (best_mag > 0) v *= std::conj(v(best)) / best_mag;
}

struct Column {
    double key;
    int parity;
    CVector vec;
};

void sort_columns(std::vector<Column>& cols) {
    std::stable_sort(cols.begin(), cols.end(), [](const Column& a, const Column& b) {
        if (a.key != b.key) return a.key < b.key;
        return a.parity > b.parity;
    });
}

}  // namespace

ReferenceBasis h0_reference_basis(const SectorBasis& basis, const SystemParams& params) {
    const CMatrix h0 = build_h0(basis, params);
    const ParitySplit split = parity_split(basis);

    std::vector<Column> cols;
    for (const auto& [iso, parity] : {std::pair{&split.even, 1}, std::pair{&split.odd, -1}}) {
        if (iso->cols() == 0) continue;
        const CMatrix block = iso->adjoint() * h0 * *iso;
        const auto eig = hermitian_eig(block);
        for (Eigen::Index k = 0; k < block.rows(); ++k) {
            CVector v = *iso * eig.eigenvectors.col(k);
            fix_phase(v);
            cols.push_back({eig.eigenvalues(k), parity, std::move(v)});
        }
    }
    sort_columns(cols);

    ReferenceBasis out;
    const auto d = basis.dim();
    out.energies.resize(d);
    out.states.resize(d, d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto& c = cols[static_cast<std::size_t>(k)];
        out.energies(k) = c.key;
        out.states.col(k) = c.vec;
        out.parity.push_back(c.parity);
    }
    return out;
}

double participation(const CVector& psi, const CMatrix& reference, const Tolerances& tol) {
    const auto d = reference.cols();
    if (reference.rows() != psi.size() || d != psi.size()) {
        throw InvalidInput("participation: reference basis must be square with the state's dimension");
    }
    const double ortho = unitarity_defect(reference);
    if (ortho > tol.normalization) {
        std::ostringstream os;
        os.precision(17);
        os << "participation: reference basis is not orthonormal, max|V^dag V - I| = " << ortho;
        throw InvalidInput(os.str());
    }
    const RVector overlaps = (reference.adjoint() * psi).cwiseAbs2();
    return 1.0 / (static_cast<double>(d) * overlaps.squaredNorm());
}

FloquetSpectrum floquet_spectrum(const CMatrix& floquet, const SectorBasis& basis, const SystemParams& params,
                                 const Tolerances& tol, double cluster_tol) {
    detail::require_unitary(floquet, tol, "floquet_spectrum");
    if (floquet.rows() != basis.dim()) throw InvalidInput("floquet_spectrum: operator does not match the sector");

    const CMatrix h0 = build_h0(basis, params);
    const ParitySplit split = parity_split(basis);

    std::vector<Column> cols;
    for (const auto& [iso, parity] : {std::pair{&split.even, 1}, std::pair{&split.odd, -1}}) {
        const auto n = iso->cols();
        if (n == 0) continue;
        const CMatrix block = iso->adjoint() * floquet * *iso;
        auto eig = unitary_eig(block, tol);

        // Group eigenphases into clusters on the circle.
        std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), Eigen::Index{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](Eigen::Index a, Eigen::Index b) { return eig.phases(a) < eig.phases(b); });
        std::vector<std::vector<Eigen::Index>> clusters;
        for (auto idx : order) {
            if (!clusters.empty() &&
                circular_distance(eig.phases(clusters.back().back()), eig.phases(idx)) < cluster_tol) {
                clusters.back().push_back(idx);
            } else {
                clusters.push_back({idx});
            }
        }
        if (clusters.size() > 1 &&
            circular_distance(eig.phases(clusters.front().front()), eig.phases(clusters.back().back())) < cluster_tol) {
            clusters.front().insert(clusters.front().end(), clusters.back().begin(), clusters.back().end());
            clusters.pop_back();
        }

        const CMatrix h0_block = iso->adjoint() * h0 * *iso;
        for (const auto& cluster : clusters) {
            const auto m = static_cast<Eigen::Index>(cluster.size());
            CMatrix q(n, m);
            for (Eigen::Index c = 0; c < m; ++c) q.col(c) = eig.eigenvectors.col(cluster[static_cast<std::size_t>(c)]);
            if (m > 1) {
                const CMatrix proj = q.adjoint() * h0_block * q;
                q = q * hermitian_eig(CMatrix((proj + proj.adjoint()) / 2.0)).eigenvectors;
            }
            for (Eigen::Index c = 0; c < m; ++c) {
                CVector v = *iso * q.col(c);
                fix_phase(v);
                // Rayleigh quotient gives the phase of the rotated vector.
                const std::complex<double> lambda = v.dot(floquet * v);
                cols.push_back({wrap_phase(std::arg(lambda)), parity, std::move(v)});
            }
        }
    }
    sort_columns(cols);

    const ReferenceBasis ref = h0_reference_basis(basis, params);
    FloquetSpectrum out;
    const auto d = basis.dim();
    out.eigenphases.resize(d);
    out.states.resize(d, d);
    out.participation.resize(d);
    for (Eigen::Index k = 0; k < d; ++k) {
        const auto& c = cols[static_cast<std::size_t>(k)];
        out.eigenphases(k) = c.key;
        out.states.col(k) = c.vec;
        out.parity.push_back(c.parity);
        out.participation(k) = participation(c.vec, ref.states, tol);
    }
    return out;
}

FloquetSpectrum floquet_spectrum(const SectorBasis& basis, const SystemParams& params) {
    return floquet_spectrum(build_floquet(basis, params), basis, params);
}

double EvolutionTrace::time_average(Eigen::Index observable, Eigen::Index first) const {
    const auto rows = expectations.rows();
    if (first < 0 || first >= rows) throw InvalidInput("time_average: burn-in leaves no samples");
    return expectations.col(observable).tail(rows - first).mean();
}

double expectation(const CVector& psi, const CMatrix& observable) { return psi.dot(observable * psi).real(); }

EvolutionTrace evolve(const CVector& psi0, const CMatrix& floquet, int n_kicks, const std::vector<CMatrix>& observables,
                      const Tolerances& tol) {
    if (n_kicks < 1) throw InvalidInput("evolve: n_kicks must be >= 1");
    for (const auto& a : observables) {
        if (a.rows() != psi0.size() || a.cols() != psi0.size()) {
            throw InvalidInput("evolve: observable dimension does not match the state");
        }
    }
    EvolutionTrace trace;
    trace.expectations.resize(n_kicks + 1, static_cast<Eigen::Index>(observables.size()));
    trace.norm_residual.resize(n_kicks + 1);

    // apply() validates shape and normalization once; later steps skip the check.
    CVector psi = psi0;
    for (int n = 0; n <= n_kicks; ++n) {
        if (n == 1) {
            psi = apply(floquet, psi, tol);
        } else if (n > 1) {
            psi = floquet * psi;
        }
        for (std::size_t k = 0; k < observables.size(); ++k) {
            trace.expectations(n, static_cast<Eigen::Index>(k)) = expectation(psi, observables[k]);
        }
        trace.norm_residual(n) = std::abs(psi.norm() - 1.0);
    }
    return trace;
}

double random_state_mean(const CMatrix& observable, const Tolerances& tol) {
    detail::require_hermitian(observable, tol, "random_state_mean");
    return observable.trace().real() / static_cast<double>(observable.rows());
}

double random_state_mean_sampled(const CMatrix& observable, int samples, std::uint64_t seed) {
    if (samples < 1) throw InvalidInput("random_state_mean_sampled: samples must be >= 1");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto d = observable.rows();
    CVector psi(d);
    double acc = 0.0;
    for (int s = 0; s < samples; ++s) {
        for (Eigen::Index i = 0; i < d; ++i) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            psi(i) = {re, im};
        }
        psi.normalize();
        acc += expectation(psi, observable);
    }
    return acc / samples;
}

TunnelingResult tunneling_analysis(const FloquetSpectrum& spectrum, const SectorBasis& basis) {
    const CMatrix proj = observable_matrix(Observable::proj_psi2, basis);
    const auto d = spectrum.dim();
    RVector weight(d);
    for (Eigen::Index k = 0; k < d; ++k) weight(k) = expectation(spectrum.states.col(k), proj);

    Eigen::Index top = 0;
    weight.maxCoeff(&top);
    if (weight(top) <= 0.5) return Delocalized{weight(top)};

    std::optional<Eigen::Index> partner;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index k = 0; k < d; ++k) {
        if (k == top || weight(k) <= 0.5) continue;
        if (spectrum.parity[static_cast<std::size_t>(k)] == spectrum.parity[static_cast<std::size_t>(top)]) continue;
        const double dist = circular_distance(spectrum.eigenphases(top), spectrum.eigenphases(k));
        if (dist < best) {
            best = dist;
            partner = k;
        }
    }
    if (!partner) return Delocalized{weight(top)};

    TunnelingReport r;
    r.phi = best;
    r.predicted_period_kicks = best > 0 ? M_PI / best : std::numeric_limits<double>::infinity();
    r.subspace_weight = 0.5 * (weight(top) + weight(*partner));
    r.first = std::min(top, *partner);
    r.second = std::max(top, *partner);
    return r;
}

std::string_view resonance_family_name(ResonanceFamily f) {
    switch (f) {
        case ResonanceFamily::half_sqrt2: return "n*sqrt2/2";
        case ResonanceFamily::one_plus_half_sqrt2: return "n*(1+sqrt2/2)";
        case ResonanceFamily::one_minus_half_sqrt2: return "n*(1-sqrt2/2)";
    }
    return "?";
}

std::vector<ResonanceTime> resonance_times(int n_max, double scale) {
    if (n_max < 1) throw InvalidInput("resonance_times: n_max must be >= 1");
    if (!(scale > 0)) throw InvalidInput("resonance_times: scale must be > 0");
    const double h = std::sqrt(2.0) / 2.0;
    std::vector<ResonanceTime> out;
    for (int n = 1; n <= n_max; ++n) {
        out.push_back({ResonanceFamily::half_sqrt2, n, scale * n * h});
        out.push_back({ResonanceFamily::one_plus_half_sqrt2, n, scale * n * (1.0 + h)});
        out.push_back({ResonanceFamily::one_minus_half_sqrt2, n, scale * n * std::abs(1.0 - h)});
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
    std::vector<ResonanceTime> unique;
    for (const auto& r : out) {
        if (unique.empty() || r.value - unique.back().value > 1e-9) unique.push_back(r);
    }
    return unique;
}

}  // namespace kjc
