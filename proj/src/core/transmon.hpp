#pragma once

// Flux-tunable asymmetric transmon: spectrum, regime diagnostics and the
// transverse/longitudinal couplings to the flux of the gyration mode.
// Energies are carried as angular frequencies (E / hbar).

#include "stray_field.hpp"

namespace skybus::transmon {

struct TransmonParams {
    double ej_max = 0.0;     // rad/s
    double ec = 0.0;         // rad/s
    double asymmetry = 0.0;  // alpha_J in [0, 1]
    double bias_flux = 0.0;  // phi_b = pi Phi_b / Phi_0, in [0, pi)

    void validate() const;
};

double s_factor(double bias_flux, double asymmetry);

// sgn(cos phi_b), with sgn(0) = +1
int branch_sign(double bias_flux);

struct TransmonDerived {
    double s_factor = 0.0;
    double omega_tr = 0.0;       // rad/s
    double eta_t = 0.0;          // E_J S / E_C
    double eta_lambda = 0.0;     // sqrt(E_C / (2 S E_J))
    double zpf_phase = 0.0;      // delta_zpf = (2 E_C / (E_J S))^(1/4)
    int branch_sign = 1;
    bool regime_warning = false; // eta_T < 10
};

TransmonDerived regime_diagnostics(const TransmonParams& p);

// omega_Tr = sqrt(E_J S E_C) - E_C
double transmon_frequency(const TransmonParams& p);

struct SkTransmonCoupling {
    double transverse = 0.0;            // Lambda_ST^T, rad/s
    double longitudinal = 0.0;          // Lambda_ST^L, rad/s
    double transverse_corrected = 0.0;  // (1 - eta_lambda) Lambda_ST^T
    double eta_lambda = 0.0;
    bool regime_warning = false;
};

SkTransmonCoupling coupling_strengths(const TransmonParams& p, const stray::FluxAmplitude& flux);

}  // namespace skybus::transmon
