#pragma once

// Semi-classical limit: each cavity is a complex field E coupled to a classical
// Bloch vector (S, Sz). Between kicks the cavities evolve independently under
//   dE/dt  = -i beta S
//   dS/dt  = i delta S + i beta E Sz
//   dSz/dt = 2 i beta (S E* - S* E)
// and each kick mixes (E1, E2).

#include "kjc/jc_core.hpp"

#include <complex>
#include <random>
#include <string_view>
#include <vector>

namespace kjc::classical {

using cplx = std::complex<double>;

struct ClassicalState {
    cplx E1{}, S1{};
    double Sz1 = -1.0;
    cplx E2{}, S2{};
    double Sz2 = -1.0;

    ClassicalState& operator+=(const ClassicalState& o);
    ClassicalState& operator*=(double a);
};

ClassicalState operator+(ClassicalState a, const ClassicalState& b);
ClassicalState operator*(double a, ClassicalState s);

struct ClassicalInvariants {
    double N1 = 0.0;      // |E1|^2 + (Sz1 + 1)/2
    double N2 = 0.0;
    double N_total = 0.0;
    double bloch1 = 0.0;  // Sz1^2 + 4|S1|^2 - 1
    double bloch2 = 0.0;
};

ClassicalInvariants invariants(const ClassicalState& s);

// Field sqrt(N) in cavity 2, nothing in cavity 1, both atoms in the ground state.
ClassicalState canonical_initial_state(double N = 2.0);

// Atom on the Bloch sphere at polar angle theta (Sz = cos theta) and azimuth
// phi, so that Sz^2 + 4|S|^2 = 1.
cplx bloch_coherence(double theta, double phi);

// Random point on the surface N1 + N2 = N_total: the split, both inversions and
// all phases drawn uniformly, Bloch constraints satisfied exactly.
ClassicalState random_initial_state(double N_total, std::mt19937_64& rng);

ClassicalState deriv(const ClassicalState& s, const SystemParams& params);

// Default RK4 substeps per period, fine enough that the invariants hold to
// ~1e-9 over a thousand kicks.
int default_substeps(double beta_T);

// Advances by dt with `substeps` fixed RK4 steps. dt < 0 runs backwards.
ClassicalState integrate(ClassicalState s, const SystemParams& params, double dt, int substeps);

// One inter-kick period T.
ClassicalState step_between_kicks(const ClassicalState& s, const SystemParams& params, int substeps);

enum class KickConvention {
    rotation,  // (E1, E2) -> [[cos k, sin k], [-sin k, cos k]] (E1, E2)
    unitary,   // (E1, E2) -> (cos k E1 - i sin k E2, -i sin k E1 + cos k E2)
};

KickConvention parse_kick_convention(std::string_view name);
std::string_view kick_convention_name(KickConvention c);

ClassicalState kick_map(const ClassicalState& s, const SystemParams& params);
ClassicalState kick_map_quantum_convention(const ClassicalState& s, const SystemParams& params);
ClassicalState kick(const ClassicalState& s, const SystemParams& params, KickConvention convention);

struct StrobeSample {
    int kick = 0;
    ClassicalState state;
    ClassicalInvariants inv;
};

struct StrobeOptions {
    int n_kicks = 200;
    int substeps = 0;  // 0 selects default_substeps(beta T)
    KickConvention convention = KickConvention::rotation;
    double bloch_abort = 1e-6;
};

// Samples at t = nT+ for n = 0..n_kicks (n = 0 is the initial state). Each
// period is free evolution followed by a kick. Throws NumericalAbort when a
// Bloch residual exceeds bloch_abort.
std::vector<StrobeSample> strobe_trajectory(const ClassicalState& init, const SystemParams& params,
                                            const StrobeOptions& opts = {});

// Mean of N2 over the strobed samples n = 1..n_kicks.
double average_N2(const ClassicalState& init, const SystemParams& params, const StrobeOptions& opts = {});

}  // namespace kjc::classical
