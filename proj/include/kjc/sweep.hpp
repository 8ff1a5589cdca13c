#pragma once

// Parameter-grid sweeps over (kappa*tau, beta*T). Cells are pure functions of
// (grid, cell index) and may run on any number of worker threads; results do
// not depend on thread count or evaluation order.

#include "kjc/classical.hpp"
#include "kjc/floquet.hpp"

#include <functional>
#include <string_view>
#include <vector>

namespace kjc {

enum class CellStatus { ok, integration_abort, delocalized, failed };

std::string_view cell_status_name(CellStatus s);

struct SweepGrid {
    std::vector<double> kappa_tau_axis;
    std::vector<double> beta_T_axis;
    double delta_over_beta = 0.0;
    int L = 2;
    int n_kicks = 1000;
    int substeps = 0;  // 0: classical::default_substeps
    int kick_sign = -1;
    classical::KickConvention classical_kick = classical::KickConvention::rotation;

    void validate() const;
    SystemParams params_at(std::size_t i_kappa, std::size_t i_beta) const;
};

// Evenly spaced axis with n points from first to last inclusive.
std::vector<double> linspace(double first, double last, int n);

struct SweepResult {
    SweepGrid grid;
    Eigen::MatrixXd values;           // rows: kappa_tau, cols: beta_T; NaN where a cell failed
    std::vector<CellStatus> status;   // row-major, same shape as values

    CellStatus status_at(std::size_t i_kappa, std::size_t i_beta) const {
        return status[i_kappa * grid.beta_T_axis.size() + i_beta];
    }
};

struct CellOutcome {
    double value;
    CellStatus status;
};

using CellFunction = std::function<CellOutcome(const SystemParams&, const SweepGrid&)>;

// Evaluates fn on every cell with `threads` workers (<= 0: hardware
// concurrency). A throwing cell becomes NaN with a failure status.
SweepResult run_sweep(const SweepGrid& grid, const CellFunction& fn, int threads = 1);

// Mean Floquet participation number per cell.
SweepResult sweep_quantum_participation(const SweepGrid& grid, int threads = 1);

// Strobed average of N2 from the canonical initial state per cell.
SweepResult sweep_classical_localization(const SweepGrid& grid, int threads = 1);

struct ObservableRow {
    double kappa_tau = 0.0;
    double sz1_pop = 0.0;
    double n1 = 0.0;
    double szsz = 0.0;
    double mean_participation = 0.0;
    double haar_sz1_pop = 0.0;
    double haar_n1 = 0.0;
    double haar_szsz = 0.0;
};

// Long-time averages over kicks burn_in..n_kicks for each kappa_tau; params
// supplies everything else.
std::vector<ObservableRow> sweep_observables_vs_kick(const std::vector<double>& kappa_tau_axis,
                                                     const SystemParams& params, int L, const CVector& psi0,
                                                     int n_kicks = 2000, int burn_in = 100, int threads = 1);

}  // namespace kjc
