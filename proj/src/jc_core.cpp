#include "kjc/jc_core.hpp"

#include <cmath>
#include <sstream>

namespace kjc {

namespace {

void require_finite(double v, const char* field) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << "SystemParams." << field << " must be finite, got " << v;
        throw InvalidInput(os.str());
    }
}

}  // namespace

void SystemParams::validate() const {
    require_finite(beta, "beta");
    require_finite(delta, "delta");
    require_finite(period_T, "period_T");
    require_finite(kappa_tau, "kappa_tau");
    if (!(beta > 0)) throw InvalidInput("SystemParams.beta must be > 0");
    if (!(period_T > 0)) throw InvalidInput("SystemParams.period_T must be > 0");
    if (!(kappa_tau >= 0)) throw InvalidInput("SystemParams.kappa_tau must be >= 0");
    if (kick_sign != 1 && kick_sign != -1) throw InvalidInput("SystemParams.kick_sign must be +1 or -1");
}

SystemParams SystemParams::dimensionless(double beta_T, double kappa_tau, double delta_over_beta, int kick_sign) {
    SystemParams p;
    p.beta = 1.0;
    p.period_T = beta_T;
    p.kappa_tau = kappa_tau;
    p.delta = delta_over_beta;
    p.kick_sign = kick_sign;
    return p;
}

double chi(int l, const SystemParams& params) {
    if (l < 0) throw InvalidInput("chi: excitation number must be non-negative");
    return std::sqrt(params.beta * params.beta * l + params.delta * params.delta / 4.0);
}

double mixing_angle(int l, const SystemParams& params) {
    if (l < 1) throw InvalidInput("mixing_angle: needs l >= 1");
    // delta + 2 chi > 0 whenever beta > 0 and l >= 1, so atan2 lands in [0, pi/2).
    return std::atan2(2.0 * params.beta * std::sqrt(static_cast<double>(l)), params.delta + 2.0 * chi(l, params));
}

DressedDoublet dressed_states(int l, const SystemParams& params) {
    if (l < 1) throw InvalidInput("dressed_states: l = 0 has no doublet, only |g,0>");
    const double c = chi(l, params);
    const double theta = mixing_angle(l, params);
    const double s = std::sin(theta);
    const double co = std::cos(theta);

    DressedDoublet d;
    d.plus = {l, DressedSign::plus, theta, c, c - params.delta / 2.0};
    d.minus = {l, DressedSign::minus, theta, c, -c - params.delta / 2.0};
    d.plus_amplitudes = {s, co};
    d.minus_amplitudes = {co, -s};
    return d;
}

CMatrix jc_block_hamiltonian(int l, const SystemParams& params) {
    if (l < 0) throw InvalidInput("jc_block_hamiltonian: excitation number must be non-negative");
    if (l == 0) return CMatrix::Zero(1, 1);
    CMatrix h(2, 2);
    const double g = params.beta * std::sqrt(static_cast<double>(l));
    h << 0.0, g, g, params.delta;
    return h;
}

}  // namespace kjc
