#include "kjc/classical.hpp"

#include "kjc/operator_core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kjc::classical {

ClassicalState& ClassicalState::operator+=(const ClassicalState& o) {
    E1 += o.E1;
    S1 += o.S1;
    Sz1 += o.Sz1;
    E2 += o.E2;
    S2 += o.S2;
    Sz2 += o.Sz2;
    return *this;
}

ClassicalState& ClassicalState::operator*=(double a) {
    E1 *= a;
    S1 *= a;
    Sz1 *= a;
    E2 *= a;
    S2 *= a;
    Sz2 *= a;
    return *this;
}

ClassicalState operator+(ClassicalState a, const ClassicalState& b) { return a += b; }
ClassicalState operator*(double a, ClassicalState s) { return s *= a; }

ClassicalInvariants invariants(const ClassicalState& s) {
    ClassicalInvariants inv;
    inv.N1 = std::norm(s.E1) + 0.5 * (s.Sz1 + 1.0);
    inv.N2 = std::norm(s.E2) + 0.5 * (s.Sz2 + 1.0);
    inv.N_total = inv.N1 + inv.N2;
    inv.bloch1 = s.Sz1 * s.Sz1 + 4.0 * std::norm(s.S1) - 1.0;
    inv.bloch2 = s.Sz2 * s.Sz2 + 4.0 * std::norm(s.S2) - 1.0;
    return inv;
}

ClassicalState canonical_initial_state(double N) {
    if (!(N >= 0)) throw InvalidInput("canonical_initial_state: N must be >= 0");
    ClassicalState s;
    s.E2 = std::sqrt(N);
    return s;
}

cplx bloch_coherence(double theta, double phi) { return 0.5 * std::sin(theta) * std::polar(1.0, phi); }

ClassicalState random_initial_state(double N_total, std::mt19937_64& rng) {
    if (!(N_total >= 0)) throw InvalidInput("random_initial_state: N_total must be >= 0");
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto cavity = [&](double n, cplx& E, cplx& S, double& Sz) {
        // (Sz + 1)/2 <= n keeps |E|^2 non-negative.
        const double sz_max = std::min(1.0, 2.0 * n - 1.0);
        Sz = -1.0 + (sz_max + 1.0) * unit(rng);
        S = bloch_coherence(std::acos(Sz), 2.0 * M_PI * unit(rng));
        E = std::polar(std::sqrt(std::max(0.0, n - 0.5 * (Sz + 1.0))), 2.0 * M_PI * unit(rng));
    };
    const double n1 = N_total * unit(rng);
    ClassicalState s;
    cavity(n1, s.E1, s.S1, s.Sz1);
    cavity(N_total - n1, s.E2, s.S2, s.Sz2);
    return s;
}

namespace {

constexpr cplx I{0.0, 1.0};

// One cavity; the cavities are uncoupled between kicks.
void cavity_rhs(cplx E, cplx S, double Sz, const SystemParams& p, cplx& dE, cplx& dS, double& dSz) {
    dE = -I * p.beta * S;
    dS = I * p.delta * S + I * p.beta * E * Sz;
    // 2 i beta (S E* - S* E) = -4 beta Im(S E*), real by construction.
    dSz = -4.0 * p.beta * std::imag(S * std::conj(E));
}

}  // namespace

ClassicalState deriv(const ClassicalState& s, const SystemParams& params) {
    ClassicalState d;
    cavity_rhs(s.E1, s.S1, s.Sz1, params, d.E1, d.S1, d.Sz1);
    cavity_rhs(s.E2, s.S2, s.Sz2, params, d.E2, d.S2, d.Sz2);
    return d;
}

int default_substeps(double beta_T) {
    return std::max(200, static_cast<int>(std::ceil(500.0 * std::abs(beta_T))));
}

ClassicalState integrate(ClassicalState s, const SystemParams& params, double dt, int substeps) {
    if (substeps < 1) throw InvalidInput("integrate: substeps must be >= 1");
    const double h = dt / substeps;
    for (int k = 0; k < substeps; ++k) {
        const ClassicalState k1 = deriv(s, params);
        const ClassicalState k2 = deriv(s + (0.5 * h) * k1, params);
        const ClassicalState k3 = deriv(s + (0.5 * h) * k2, params);
        const ClassicalState k4 = deriv(s + h * k3, params);
        s += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return s;
}

ClassicalState step_between_kicks(const ClassicalState& s, const SystemParams& params, int substeps) {
    return integrate(s, params, params.period_T, substeps);
}

KickConvention parse_kick_convention(std::string_view name) {
    if (name == "rotation") return KickConvention::rotation;
    if (name == "unitary") return KickConvention::unitary;
    throw InvalidInput("unknown classical kick convention '" + std::string(name) + "' (rotation|unitary)");
}

std::string_view kick_convention_name(KickConvention c) {
    return c == KickConvention::rotation ? "rotation" : "unitary";
}

ClassicalState kick_map(const ClassicalState& s, const SystemParams& params) {
    const double c = std::cos(params.kappa_tau);
    const double sn = std::sin(params.kappa_tau);
    ClassicalState out = s;
    out.E1 = c * s.E1 + sn * s.E2;
    out.E2 = -sn * s.E1 + c * s.E2;
    return out;
}

ClassicalState kick_map_quantum_convention(const ClassicalState& s, const SystemParams& params) {
    const double c = std::cos(params.kappa_tau);
    const double sn = std::sin(params.kappa_tau);
    ClassicalState out = s;
    out.E1 = c * s.E1 - I * sn * s.E2;
    out.E2 = -I * sn * s.E1 + c * s.E2;
    return out;
}

ClassicalState kick(const ClassicalState& s, const SystemParams& params, KickConvention convention) {
    return convention == KickConvention::rotation ? kick_map(s, params) : kick_map_quantum_convention(s, params);
}

std::vector<StrobeSample> strobe_trajectory(const ClassicalState& init, const SystemParams& params,
                                            const StrobeOptions& opts) {
    params.validate();
    if (opts.n_kicks < 1) throw InvalidInput("strobe_trajectory: n_kicks must be >= 1");
    const int substeps = opts.substeps > 0 ? opts.substeps : default_substeps(params.beta_T());

    auto check = [&](int n, const ClassicalState& s) {
        const ClassicalInvariants inv = invariants(s);
        const double worst = std::max(std::abs(inv.bloch1), std::abs(inv.bloch2));
        if (!(worst <= opts.bloch_abort)) {
            std::ostringstream os;
            os.precision(17);
            os << "strobe_trajectory: Bloch constraint violated at kick " << n << " (residuals " << inv.bloch1 << ", "
               << inv.bloch2 << "; limit " << opts.bloch_abort << ", substeps " << substeps << ")";
            throw NumericalAbort(os.str());
        }
        return inv;
    };

    std::vector<StrobeSample> out;
    out.reserve(static_cast<std::size_t>(opts.n_kicks) + 1);
    ClassicalState s = init;
    out.push_back({0, s, check(0, s)});
    for (int n = 1; n <= opts.n_kicks; ++n) {
        s = kick(step_between_kicks(s, params, substeps), params, opts.convention);
        out.push_back({n, s, check(n, s)});
    }
    return out;
}

double average_N2(const ClassicalState& init, const SystemParams& params, const StrobeOptions& opts) {
    const auto traj = strobe_trajectory(init, params, opts);
    double acc = 0.0;
    for (std::size_t k = 1; k < traj.size(); ++k) acc += traj[k].inv.N2;
    return acc / static_cast<double>(traj.size() - 1);
}

}  // namespace kjc::classical
