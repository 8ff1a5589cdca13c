#include "kjc/app/commands.hpp"

#include "kjc/floquet.hpp"
#include "kjc/sweep.hpp"

#include <ostream>
#include <random>
#include <string>

#ifndef KJC_VERSION
#define KJC_VERSION "0.0.0"
#endif

namespace kjc::app {

const char* version() { return KJC_VERSION; }

namespace {

void header_comment(const RunConfig& cfg, std::ostream& out) {
    out << "# kjc " << version();
    for (const auto& [k, v] : cfg.resolved()) out << ' ' << k << '=' << v;
    out << '\n';
}

// Comma-joined row of pre-formatted fields.
template <typename... Fields>
void row(std::ostream& out, const Fields&... fields) {
    bool first = true;
    ((out << (first ? "" : ",") << fields, first = false), ...);
    out << '\n';
}

std::string r(double v) { return format_real(v); }

SweepGrid grid_from(const RunConfig& cfg) {
    SweepGrid g;
    g.kappa_tau_axis = linspace(cfg.kappa_tau_axis.min, cfg.kappa_tau_axis.max, cfg.kappa_tau_axis.points);
    g.beta_T_axis = linspace(cfg.betaT_axis.min, cfg.betaT_axis.max, cfg.betaT_axis.points);
    g.delta_over_beta = cfg.delta / cfg.beta;
    g.L = cfg.L;
    g.n_kicks = cfg.n_kicks;
    g.substeps = cfg.substeps;
    g.kick_sign = cfg.kick_sign;
    g.classical_kick = cfg.classical_kick;
    return g;
}

}  // namespace

void cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
    const SectorBasis basis(cfg.L);
    const SystemParams p = cfg.params();
    const FloquetSpectrum spec = floquet_spectrum(basis, p);
    const CMatrix proj = observable_matrix(Observable::proj_psi2, basis);

    header_comment(cfg, out);
    row(out, "index", "eigenphase_rad", "participation", "psi2_weight");
    for (Eigen::Index k = 0; k < spec.dim(); ++k) {
        row(out, k, r(spec.eigenphases(k)), r(spec.participation(k)), r(expectation(spec.states.col(k), proj)));
    }
}

void cmd_evolve(const RunConfig& cfg, std::ostream& out) {
    const SectorBasis basis(cfg.L);
    const CMatrix uf = build_floquet(basis, cfg.params());
    const std::vector<CMatrix> obs = {observable_matrix(Observable::n1, basis),
                                      observable_matrix(Observable::excitations1, basis),
                                      observable_matrix(Observable::proj_psi2, basis)};
    const EvolutionTrace trace = evolve(basis.ket(cfg.initial_state), uf, cfg.n_kicks, obs);

    header_comment(cfg, out);
    row(out, "kick", "exp_n1", "exp_excitations_cav1", "exp_proj_psi2", "norm_residual");
    for (Eigen::Index n = 0; n < trace.expectations.rows(); ++n) {
        row(out, n, r(trace.expectations(n, 0)), r(trace.expectations(n, 1)), r(trace.expectations(n, 2)),
            r(trace.norm_residual(n)));
    }
}

void cmd_sweep(const RunConfig& cfg, std::ostream& out) {
    const SweepGrid grid = grid_from(cfg);

    if (cfg.kind == SweepKind::observables) {
        const SectorBasis basis(cfg.L);
        const auto rows = sweep_observables_vs_kick(grid.kappa_tau_axis, cfg.params(), cfg.L,
                                                    basis.ket(cfg.initial_state), cfg.n_kicks, cfg.burn_in, cfg.threads);
        header_comment(cfg, out);
        row(out, "kappa_tau", "betaT", "quantity", "value", "status");
        const std::string bt = r(cfg.betaT);
        for (const auto& x : rows) {
            const std::string kt = r(x.kappa_tau);
            row(out, kt, bt, "sz1_pop", r(x.sz1_pop), "ok");
            row(out, kt, bt, "n1", r(x.n1), "ok");
            row(out, kt, bt, "szsz", r(x.szsz), "ok");
            row(out, kt, bt, "mean_participation", r(x.mean_participation), "ok");
            row(out, kt, bt, "haar_sz1_pop", r(x.haar_sz1_pop), "ok");
            row(out, kt, bt, "haar_n1", r(x.haar_n1), "ok");
            row(out, kt, bt, "haar_szsz", r(x.haar_szsz), "ok");
        }
        return;
    }

    const SweepResult res = cfg.kind == SweepKind::quantum ? sweep_quantum_participation(grid, cfg.threads)
                                                           : sweep_classical_localization(grid, cfg.threads);
    header_comment(cfg, out);
    row(out, "kappa_tau", "betaT", "value", "status");
    for (std::size_t i = 0; i < grid.kappa_tau_axis.size(); ++i) {
        for (std::size_t j = 0; j < grid.beta_T_axis.size(); ++j) {
            row(out, r(grid.kappa_tau_axis[i]), r(grid.beta_T_axis[j]),
                r(res.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))),
                cell_status_name(res.status_at(i, j)));
        }
    }
}

void cmd_strobe(const RunConfig& cfg, std::ostream& out) {
    const SystemParams p = cfg.params();
    classical::StrobeOptions opts;
    opts.n_kicks = cfg.n_kicks;
    opts.substeps = cfg.substeps;
    opts.convention = cfg.classical_kick;

    // All trajectories are computed before anything is written, so an
    // integration abort leaves no partial CSV.
    std::mt19937_64 rng(cfg.seed);
    const double n_total = static_cast<double>(cfg.L);
    std::vector<std::vector<classical::StrobeSample>> trajectories;
    for (int id = 0; id < cfg.n_seeds; ++id) {
        const auto init =
            id == 0 ? classical::canonical_initial_state(n_total) : classical::random_initial_state(n_total, rng);
        trajectories.push_back(classical::strobe_trajectory(init, p, opts));
    }

    header_comment(cfg, out);
    row(out, "seed_id", "kick", "re_E1", "im_E1", "re_E2", "im_E2", "re_S1", "im_S1", "re_S2", "im_S2", "Sz1", "Sz2",
        "N1", "N2", "bloch_residual_1", "bloch_residual_2");
    for (std::size_t id = 0; id < trajectories.size(); ++id) {
        for (const auto& smp : trajectories[id]) {
            const auto& s = smp.state;
            row(out, id, smp.kick, r(s.E1.real()), r(s.E1.imag()), r(s.E2.real()), r(s.E2.imag()), r(s.S1.real()),
                r(s.S1.imag()), r(s.S2.real()), r(s.S2.imag()), r(s.Sz1), r(s.Sz2), r(smp.inv.N1), r(smp.inv.N2),
                r(smp.inv.bloch1), r(smp.inv.bloch2));
        }
    }
}

void cmd_resonances(const RunConfig& cfg, std::ostream& out) {
    header_comment(cfg, out);
    row(out, "family", "n", "predicted_T");
    for (const auto& res : resonance_times(cfg.n_max, cfg.resonance_scale)) {
        row(out, resonance_family_name(res.family), res.n, r(res.value / cfg.beta));
    }
}

void run_command(const RunConfig& cfg, std::ostream& out) {
    switch (cfg.command) {
        case Command::spectrum: cmd_spectrum(cfg, out); break;
        case Command::evolve: cmd_evolve(cfg, out); break;
        case Command::sweep: cmd_sweep(cfg, out); break;
        case Command::strobe: cmd_strobe(cfg, out); break;
        case Command::resonances: cmd_resonances(cfg, out); break;
    }
}

}  // namespace kjc::app
