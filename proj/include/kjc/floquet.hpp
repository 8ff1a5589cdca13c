#pragma once

// Floquet analysis of the kicked sector: one-period propagator, its spectrum,
// participation numbers against the unkicked eigenbasis, stroboscopic
// evolution, random-state references, doublet tunneling and resonances.

#include "kjc/sector.hpp"

#include <cstdint>
#include <limits>
#include <variant>
#include <vector>

namespace kjc {

// U_f = exp(-i H0 T) exp(kick_sign * i * kappa_tau * K): kick first, then
// free evolution over one period.
CMatrix build_floquet(const SectorBasis& basis, const SystemParams& params);

// Eigenstates of H0 as columns, ascending energy. Each state has definite swap
// parity, so a degenerate swap doublet comes out as its symmetric and
// antisymmetric combinations. Ties list the even state first. Phase: the
// largest-magnitude amplitude is real positive.
struct ReferenceBasis {
    RVector energies;
    CMatrix states;
    std::vector<int> parity;  // +1 even, -1 odd
};
ReferenceBasis h0_reference_basis(const SectorBasis& basis, const SystemParams& params);

// Dimension-normalized participation number (d * sum_i |<psi|ref_i>|^4)^-1,
// in [1/d, 1]. reference must have orthonormal columns spanning the space.
double participation(const CVector& psi, const CMatrix& reference, const Tolerances& tol = {});

struct FloquetSpectrum {
    RVector eigenphases;       // ascending, in (-pi, pi]
    CMatrix states;            // orthonormal columns
    RVector participation;
    std::vector<int> parity;   // swap parity of each Floquet state

    Eigen::Index dim() const { return eigenphases.size(); }
    double mean_participation() const { return participation.mean(); }
};

// Diagonalizes U_f separately in the swap-even and swap-odd subspaces. Exactly
// or nearly degenerate eigenphases (closer than cluster_tol) are resolved by
// diagonalizing H0 inside the cluster, so at kappa_tau = 0 the Floquet states
// coincide with the reference basis.
FloquetSpectrum floquet_spectrum(const CMatrix& floquet, const SectorBasis& basis, const SystemParams& params,
                                 const Tolerances& tol = {}, double cluster_tol = 1e-8);

// Convenience: build_floquet followed by floquet_spectrum.
FloquetSpectrum floquet_spectrum(const SectorBasis& basis, const SystemParams& params);

// Row n holds the expectation values after n periods, n = 0..n_kicks.
struct EvolutionTrace {
    Eigen::MatrixXd expectations;  // (n_kicks + 1) x observables
    RVector norm_residual;         // | |psi_n| - 1 |

    // Mean of one observable over rows [first, last].
    double time_average(Eigen::Index observable, Eigen::Index first) const;
};

EvolutionTrace evolve(const CVector& psi0, const CMatrix& floquet, int n_kicks,
                      const std::vector<CMatrix>& observables, const Tolerances& tol = {});

double expectation(const CVector& psi, const CMatrix& observable);

// Haar-ensemble mean of <psi|A|psi>: Tr(A)/d.
double random_state_mean(const CMatrix& observable, const Tolerances& tol = {});

// Monte-Carlo estimate of the same mean from normalized complex-Gaussian states.
double random_state_mean_sampled(const CMatrix& observable, int samples, std::uint64_t seed);

struct TunnelingReport {
    double phi = 0.0;                     // eigenphase splitting per kick, [0, pi]
    double predicted_period_kicks = 0.0;  // pi / phi, infinite at exact degeneracy
    double subspace_weight = 0.0;         // mean psi2 weight of the pair
    Eigen::Index first = 0;               // Floquet state indices of the pair
    Eigen::Index second = 0;
};

struct Delocalized {
    double max_weight = 0.0;  // largest psi2 weight seen
};

using TunnelingResult = std::variant<TunnelingReport, Delocalized>;

// Pairs the Floquet state with the largest psi2 weight with the opposite-parity
// state of psi2 weight > 0.5 nearest in eigenphase.
TunnelingResult tunneling_analysis(const FloquetSpectrum& spectrum, const SectorBasis& basis);

enum class ResonanceFamily { half_sqrt2, one_plus_half_sqrt2, one_minus_half_sqrt2 };

std::string_view resonance_family_name(ResonanceFamily f);

struct ResonanceTime {
    ResonanceFamily family;
    int n;
    double value;  // scale * base value, i.e. beta*T with the default scale
};

// n sqrt2/2, n (1 + sqrt2/2), n |1 - sqrt2/2| for n = 1..n_max, each times
// scale, sorted ascending, duplicates within 1e-9 removed.
std::vector<ResonanceTime> resonance_times(int n_max, double scale = 2.0 * M_PI);

}  // namespace kjc
