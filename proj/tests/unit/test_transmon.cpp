#include <doctest.h>

#include "error.hpp"
#include "fixtures.hpp"
#include "transmon.hpp"

using namespace skybus;
using namespace fixtures;

namespace {

transmon::TransmonParams reference_transmon() { return {50 * GHz, 0.2 * GHz, 0.06, pi / 2}; }

// Flux of the reference placement, F_Phi frozen from the contour oracle.
stray::FluxAmplitude reference_flux() {
    stray::FluxAmplitude f;
    f.magnitude = 1.0946854e-4;
    f.reduced = f.magnitude;
    f.flux_scale = mu_0 * 1e6 * (100 * nm) * (100 * nm) * f.magnitude / (4 * pi);
    return f;
}

double transverse_oracle(const transmon::TransmonParams& p, double F) {
    const double S = std::sqrt(std::cos(p.bias_flux) * std::cos(p.bias_flux) +
                               p.asymmetry * p.asymmetry * std::sin(p.bias_flux) * std::sin(p.bias_flux));
    const double R = 100 * nm;
    return mu_0 * 1e6 * R * R * p.asymmetry / (4 * phi_0) *
           std::pow(2 * p.ec * p.ej_max * p.ej_max * p.ej_max / std::pow(S, 5), 0.25) * F;
}

}  // namespace

TEST_CASE("S factor") {
    CHECK(transmon::s_factor(0.0, 0.3) == doctest::Approx(1.0));
    CHECK(transmon::s_factor(pi / 2, 0.3) == doctest::Approx(0.3));
    CHECK(transmon::s_factor(pi / 3, 0.5) == doctest::Approx(std::sqrt(0.25 + 0.25 * 0.75)));
    for (double phi = 0.0; phi < pi; phi += 0.3) CHECK(transmon::s_factor(phi, 1.0) == doctest::Approx(1.0));
    CHECK(transmon::branch_sign(0.0) == 1);
    CHECK(transmon::branch_sign(2.0) == -1);
}

TEST_CASE("transmon frequency") {
    auto p = reference_transmon();
    CHECK(transmon::transmon_frequency(p) / GHz == doctest::Approx(std::sqrt(3.0 * 0.2) - 0.2).epsilon(1e-12));
    CHECK(transmon::transmon_frequency(p) / GHz == doctest::Approx(0.5746).epsilon(1e-4));
    p.bias_flux = 0.0;
    CHECK(transmon::transmon_frequency(p) / GHz == doctest::Approx(2.962).epsilon(1e-4));
    p.asymmetry = 1.0;
    const double w0 = transmon::transmon_frequency(p);
    for (double phi : {0.4, 1.2, 2.9}) {
        p.bias_flux = phi;
        CHECK(transmon::transmon_frequency(p) == doctest::Approx(w0).epsilon(1e-12));
    }
}

TEST_CASE("regime diagnostics") {
    const auto d = transmon::regime_diagnostics(reference_transmon());
    CHECK(d.eta_t == doctest::Approx(15.0));
    CHECK(d.eta_lambda == doctest::Approx(0.182574).epsilon(1e-5));
    CHECK(d.zpf_phase == doctest::Approx(std::pow(2 * 0.2 / 3.0, 0.25)));
    CHECK_FALSE(d.regime_warning);
    auto p = reference_transmon();
    p.asymmetry = 0.03;
    CHECK(transmon::regime_diagnostics(p).regime_warning);
    CHECK(transmon::regime_diagnostics(p).eta_t == doctest::Approx(7.5));
}

TEST_CASE("transverse coupling matches the closed-form prefactor") {
    const auto f = reference_flux();
    for (double a : {0.06, 0.3, 0.8})
        for (double phi : {0.0, 0.7, pi / 2, 2.5}) {
            transmon::TransmonParams p{50 * GHz, 0.2 * GHz, a, phi};
            const auto c = transmon::coupling_strengths(p, f);
            CHECK(c.transverse == doctest::Approx(transverse_oracle(p, f.magnitude)).epsilon(1e-10));
        }
}

TEST_CASE("reference couplings") {
    const auto c = transmon::coupling_strengths(reference_transmon(), reference_flux());
    CHECK(c.transverse / MHz == doctest::Approx(5.05).epsilon(0.1));
    CHECK(c.transverse_corrected / MHz == doctest::Approx(4.14).epsilon(0.02));
    CHECK(c.transverse_corrected == doctest::Approx((1 - c.eta_lambda) * c.transverse));
    CHECK(c.transverse_corrected <= c.transverse);
    CHECK(c.transverse_corrected >= 0.0);
    CHECK(c.longitudinal < 1e-12 * c.transverse);
}

TEST_CASE("longitudinal coupling vanishes at the sweet spots") {
    const auto f = reference_flux();
    transmon::TransmonParams p{50 * GHz, 0.2 * GHz, 0.3, 0.0};
    CHECK(transmon::coupling_strengths(p, f).longitudinal == 0.0);
    p.bias_flux = pi / 2;
    CHECK(transmon::coupling_strengths(p, f).longitudinal < 1e-12 * transmon::coupling_strengths(p, f).transverse);
    p.bias_flux = pi / 4;
    CHECK(transmon::coupling_strengths(p, f).longitudinal > 0.0);
    p.asymmetry = 1.0;
    CHECK(transmon::coupling_strengths(p, f).longitudinal == 0.0);
}

TEST_CASE("transverse coupling is linear in asymmetry at zero bias") {
    const auto f = reference_flux();
    transmon::TransmonParams p{50 * GHz, 0.2 * GHz, 0.1, 0.0};
    const double base = transmon::coupling_strengths(p, f).transverse;
    for (double a : {0.2, 0.5, 0.9}) {
        p.asymmetry = a;
        CHECK(transmon::coupling_strengths(p, f).transverse == doctest::Approx(base * a / 0.1).epsilon(1e-12));
    }
}

TEST_CASE("transverse coupling grows as S shrinks") {
    const auto f = reference_flux();
    transmon::TransmonParams p{50 * GHz, 0.2 * GHz, 0.2, 0.0};
    double prev_s = 2.0, prev = 0.0;
    for (double phi = 0.0; phi <= pi / 2 + 1e-12; phi += pi / 20) {
        p.bias_flux = std::min(phi, pi / 2);
        const double s = transmon::s_factor(p.bias_flux, p.asymmetry);
        const double v = transmon::coupling_strengths(p, f).transverse;
        CHECK(s < prev_s);
        CHECK(v > prev);
        prev_s = s;
        prev = v;
    }
}

TEST_CASE("transmon validation") {
    auto p = reference_transmon();
    p.asymmetry = 1.2;
    CHECK_THROWS_AS(transmon::regime_diagnostics(p), Error);
    p = reference_transmon();
    p.bias_flux = pi;
    CHECK_THROWS_AS(transmon::regime_diagnostics(p), Error);
    p = reference_transmon();
    p.asymmetry = 0.0;
    CHECK_THROWS_AS(transmon::regime_diagnostics(p), Error);
    p = reference_transmon();
    p.ec = 0.0;
    CHECK_THROWS_AS(transmon::regime_diagnostics(p), Error);
    // E_C above E_J S puts the qubit below zero.
    p = {0.1 * GHz, 0.5 * GHz, 1.0, 0.0};
    try {
        transmon::transmon_frequency(p);
        FAIL("expected NegativeFrequency");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NegativeFrequency);
    }
    auto f = reference_flux();
    f.flux_scale = -1.0;
    CHECK_THROWS_AS(transmon::coupling_strengths(reference_transmon(), f), Error);
}
