#pragma once

// Single-cavity Jaynes-Cummings structure: excitation blocks, dressed states
// and the generalized Rabi frequency.

#include "kjc/operator_core.hpp"

#include <array>

namespace kjc {

// Physical parameters of the kicked two-cavity system. Units are set by beta;
// the dynamics depend only on beta*T, kappa*tau and delta/beta.
struct SystemParams {
    double beta = 1.0;       // atom-photon coupling
    double delta = 0.0;      // atom-photon detuning
    double period_T = 1.0;   // time between kicks
    double kappa_tau = 0.0;  // integrated hopping strength of one kick
    int kick_sign = -1;      // kick propagator exp(kick_sign * i * kappa_tau * K)

    double beta_T() const { return beta * period_T; }

    // Throws InvalidInput naming the offending field.
    void validate() const;

    static SystemParams dimensionless(double beta_T, double kappa_tau, double delta_over_beta = 0.0,
                                      int kick_sign = -1);
};

enum class DressedSign { plus, minus };

struct DressedLevel {
    int l = 0;
    DressedSign sign = DressedSign::plus;
    double theta = 0.0;  // mixing angle in [0, pi/2)
    double chi = 0.0;
    double energy = 0.0; // +-chi - delta/2
};

// One dressed doublet with amplitudes over the bare pair (|g,l>, |e,l-1>).
struct DressedDoublet {
    DressedLevel plus;
    DressedLevel minus;
    std::array<double, 2> plus_amplitudes{};
    std::array<double, 2> minus_amplitudes{};
};

// Generalized Rabi frequency sqrt(beta^2 l + delta^2/4).
double chi(int l, const SystemParams& params);

// Mixing angle from tan(theta) = 2 beta sqrt(l) / (delta + 2 chi), l >= 1.
double mixing_angle(int l, const SystemParams& params);

DressedDoublet dressed_states(int l, const SystemParams& params);

// Bare-basis block of H^JC for l excitations, ordered (|g,l>, |e,l-1>):
// [[0, beta sqrt(l)], [beta sqrt(l), delta]]. For l = 0 the 1x1 zero matrix.
// Its spectrum is delta/2 +- chi(l): the dressed energies +-chi - delta/2
// shifted by the constant delta. The shift is a per-sector global phase.
CMatrix jc_block_hamiltonian(int l, const SystemParams& params);

}  // namespace kjc
