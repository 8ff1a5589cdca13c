#pragma once

// Subcommands. Each writes one CSV document: a '#' comment line with the
// resolved configuration and version, a header row, then data rows. Reals are
// printed with 17 significant digits so equal configs give equal bytes.

#include "kjc/app/config.hpp"

#include <iosfwd>

namespace kjc::app {

// Columns: index, eigenphase_rad, participation, psi2_weight.
void cmd_spectrum(const RunConfig& cfg, std::ostream& out);

// Columns: kick, exp_n1, exp_excitations_cav1, exp_proj_psi2, norm_residual.
void cmd_evolve(const RunConfig& cfg, std::ostream& out);

// quantum / classical: kappa_tau, betaT, value, status.
// observables: kappa_tau, betaT, quantity, value, status, with one row per
// quantity (sz1_pop, n1, szsz, mean_participation and their haar_* references).
void cmd_sweep(const RunConfig& cfg, std::ostream& out);

// Columns: seed_id, kick, re_E1, im_E1, re_E2, im_E2, re_S1, im_S1, re_S2,
// im_S2, Sz1, Sz2, N1, N2, bloch_residual_1, bloch_residual_2. Seed 0 is the
// canonical initial state; the rest are drawn from `seed`.
void cmd_strobe(const RunConfig& cfg, std::ostream& out);

// Columns: family, n, predicted_T.
void cmd_resonances(const RunConfig& cfg, std::ostream& out);

void run_command(const RunConfig& cfg, std::ostream& out);

// Version string stamped into every CSV header.
const char* version();

}  // namespace kjc::app
