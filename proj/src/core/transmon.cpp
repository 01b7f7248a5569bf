#include "transmon.hpp"

#include <cmath>

#include "constants.hpp"
#include "error.hpp"

namespace skybus::transmon {

void TransmonParams::validate() const {
    require(std::isfinite(ej_max) && ej_max > 0.0, "E_J^max must be positive");
    require(std::isfinite(ec) && ec > 0.0, "E_C must be positive");
    require(std::isfinite(asymmetry) && asymmetry >= 0.0 && asymmetry <= 1.0, "asymmetry must lie in [0, 1]");
    require(std::isfinite(bias_flux) && bias_flux >= 0.0 && bias_flux < constants::pi,
            "bias flux phase must lie in [0, pi)");
    require(s_factor(bias_flux, asymmetry) > 1e-12, "S(phi_b) vanishes: symmetric junctions at phi_b = pi/2");
}

double s_factor(double bias_flux, double asymmetry) {
    const double c = std::cos(bias_flux), s = std::sin(bias_flux);
    return std::sqrt(c * c + asymmetry * asymmetry * s * s);
}

int branch_sign(double bias_flux) { return std::cos(bias_flux) < 0.0 ? -1 : 1; }

TransmonDerived regime_diagnostics(const TransmonParams& p) {
    p.validate();
    TransmonDerived d;
    d.s_factor = s_factor(p.bias_flux, p.asymmetry);
    const double ej = p.ej_max * d.s_factor;
    d.omega_tr = std::sqrt(ej * p.ec) - p.ec;
    d.eta_t = ej / p.ec;
    d.eta_lambda = std::sqrt(p.ec / (2.0 * ej));
    d.zpf_phase = std::pow(2.0 * p.ec / ej, 0.25);
    d.branch_sign = branch_sign(p.bias_flux);
    d.regime_warning = d.eta_t < 10.0;
    return d;
}

double transmon_frequency(const TransmonParams& p) {
    const TransmonDerived d = regime_diagnostics(p);
    if (!(d.omega_tr > 0.0)) fail(ErrorCode::NegativeFrequency, "transmon frequency is not positive");
    return d.omega_tr;
}

SkTransmonCoupling coupling_strengths(const TransmonParams& p, const stray::FluxAmplitude& flux) {
    const TransmonDerived d = regime_diagnostics(p);
    require(std::isfinite(flux.flux_scale) && flux.flux_scale >= 0.0, "flux scale must be non-negative");
    // Phase drop per unit mode flux, pi Phi / Phi_0, with Phi = mu0 M_S R^2 F_Phi / (4 pi).
    const double dphi = constants::pi * flux.flux_scale / constants::flux_quantum;
    const double ej_over_s = p.ej_max / d.s_factor;
    const double s2b = std::sin(2.0 * p.bias_flux);
    SkTransmonCoupling out;
    // delta-odd part, first order in the mode flux: E_J alpha_J / S * dphi * delta, delta = delta_zpf (b + b^dag).
    out.transverse = ej_over_s * p.asymmetry * dphi * d.zpf_phase;
    // delta-even part: E_J (1 - alpha_J^2) sin(2 phi_b) / (2 S) * dphi * delta^2 / 2, which splits e and g by 2 delta_zpf^2.
    out.longitudinal = std::abs(ej_over_s * (1.0 - p.asymmetry * p.asymmetry) * 0.5 * s2b * dphi) * d.zpf_phase *
                       d.zpf_phase;
    out.eta_lambda = d.eta_lambda;
    out.transverse_corrected = (1.0 - d.eta_lambda) * out.transverse;
    out.regime_warning = d.regime_warning;
    return out;
}

}  // namespace skybus::transmon
