#include "kjc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>
#include <thread>

namespace kjc {

std::string_view cell_status_name(CellStatus s) {
    switch (s) {
        case CellStatus::ok: return "ok";
        case CellStatus::integration_abort: return "integration-abort";
        case CellStatus::delocalized: return "delocalized";
        case CellStatus::failed: return "failed";
    }
    return "?";
}

namespace {

void validate_axis(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw InvalidInput(std::string("SweepGrid.") + name + " must be nonempty");
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i]) || axis[i] < 0) {
            throw InvalidInput(std::string("SweepGrid.") + name + " values must be finite and >= 0");
        }
        if (i > 0 && !(axis[i] > axis[i - 1])) {
            throw InvalidInput(std::string("SweepGrid.") + name + " must be strictly ascending");
        }
    }
}

// Runs fn(i) for i in [0, n) on a pool of workers pulling indices from a shared counter.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
    std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads) : std::thread::hardware_concurrency();
    workers = std::max<std::size_t>(1, std::min(workers, n));
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        for (std::size_t i = next++; i < n; i = next++) fn(i);
    };
    if (workers == 1) {
        work();
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
}

}  // namespace

void SweepGrid::validate() const {
    validate_axis(kappa_tau_axis, "kappa_tau_axis");
    validate_axis(beta_T_axis, "beta_T_axis");
    if (beta_T_axis.front() <= 0) throw InvalidInput("SweepGrid.beta_T_axis values must be > 0");
    if (!std::isfinite(delta_over_beta)) throw InvalidInput("SweepGrid.delta_over_beta must be finite");
    if (L < 1) throw InvalidInput("SweepGrid.L must be >= 1");
    if (n_kicks < 1) throw InvalidInput("SweepGrid.n_kicks must be >= 1");
    if (substeps < 0) throw InvalidInput("SweepGrid.substeps must be >= 0");
    if (kick_sign != 1 && kick_sign != -1) throw InvalidInput("SweepGrid.kick_sign must be +1 or -1");
}

SystemParams SweepGrid::params_at(std::size_t i_kappa, std::size_t i_beta) const {
    return SystemParams::dimensionless(beta_T_axis.at(i_beta), kappa_tau_axis.at(i_kappa), delta_over_beta, kick_sign);
}

std::vector<double> linspace(double first, double last, int n) {
    if (n < 1) throw InvalidInput("linspace: need at least one point");
    if (n == 1) return {first};
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = first + (last - first) * i / (n - 1);
    return out;
}

SweepResult run_sweep(const SweepGrid& grid, const CellFunction& fn, int threads) {
    grid.validate();
    const std::size_t nk = grid.kappa_tau_axis.size();
    const std::size_t nb = grid.beta_T_axis.size();

    SweepResult result;
    result.grid = grid;
    result.values = Eigen::MatrixXd::Constant(static_cast<Eigen::Index>(nk), static_cast<Eigen::Index>(nb),
                                              std::numeric_limits<double>::quiet_NaN());
    result.status.assign(nk * nb, CellStatus::failed);

    // Each cell writes only its own slot.
    parallel_for(nk * nb, threads, [&](std::size_t cell) {
        const std::size_t ik = cell / nb;
        const std::size_t ib = cell % nb;
        CellOutcome out{std::numeric_limits<double>::quiet_NaN(), CellStatus::failed};
        try {
            out = fn(grid.params_at(ik, ib), grid);
        } catch (const NumericalAbort&) {
            out.status = CellStatus::integration_abort;
        } catch (const std::exception&) {
            out.status = CellStatus::failed;
        }
        result.values(static_cast<Eigen::Index>(ik), static_cast<Eigen::Index>(ib)) = out.value;
        result.status[cell] = out.status;
    });
    return result;
}

SweepResult sweep_quantum_participation(const SweepGrid& grid, int threads) {
    return run_sweep(
        grid,
        [](const SystemParams& p, const SweepGrid& g) {
            const SectorBasis basis(g.L);
            return CellOutcome{floquet_spectrum(basis, p).mean_participation(), CellStatus::ok};
        },
        threads);
}

SweepResult sweep_classical_localization(const SweepGrid& grid, int threads) {
    return run_sweep(
        grid,
        [](const SystemParams& p, const SweepGrid& g) {
            classical::StrobeOptions opts;
            opts.n_kicks = g.n_kicks;
            opts.substeps = g.substeps;
            opts.convention = g.classical_kick;
            const double n = static_cast<double>(g.L);
            return CellOutcome{classical::average_N2(classical::canonical_initial_state(n), p, opts), CellStatus::ok};
        },
        threads);
}

std::vector<ObservableRow> sweep_observables_vs_kick(const std::vector<double>& kappa_tau_axis,
                                                     const SystemParams& params, int L, const CVector& psi0,
                                                     int n_kicks, int burn_in, int threads) {
    if (burn_in < 0 || burn_in >= n_kicks) throw InvalidInput("sweep_observables_vs_kick: need 0 <= burn_in < n_kicks");
    validate_axis(kappa_tau_axis, "kappa_tau_axis");
    params.validate();
    if (std::abs(psi0.norm() - 1.0) > Tolerances{}.normalization) {
        throw InvalidInput("sweep_observables_vs_kick: initial state is not normalized");
    }
    const SectorBasis basis(L);
    if (psi0.size() != basis.dim()) throw InvalidInput("sweep_observables_vs_kick: initial state does not match L");
    const std::vector<CMatrix> obs = {observable_matrix(Observable::sz1_pop, basis),
                                      observable_matrix(Observable::n1, basis),
                                      observable_matrix(Observable::szsz, basis)};

    std::vector<ObservableRow> rows(kappa_tau_axis.size());
    parallel_for(rows.size(), threads, [&](std::size_t i) {
        SystemParams p = params;
        p.kappa_tau = kappa_tau_axis[i];
        const CMatrix uf = build_floquet(basis, p);
        const EvolutionTrace trace = evolve(psi0, uf, n_kicks, obs);
        ObservableRow& r = rows[i];
        r.kappa_tau = p.kappa_tau;
        r.sz1_pop = trace.time_average(0, burn_in);
        r.n1 = trace.time_average(1, burn_in);
        r.szsz = trace.time_average(2, burn_in);
        r.mean_participation = floquet_spectrum(uf, basis, p).mean_participation();
        r.haar_sz1_pop = random_state_mean(obs[0]);
        r.haar_n1 = random_state_mean(obs[1]);
        r.haar_szsz = random_state_mean(obs[2]);
    });
    return rows;
}

}  // namespace kjc
