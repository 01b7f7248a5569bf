#include <doctest.h>

#include <optional>

#include "bp_skyrmion.hpp"
#include "error.hpp"
#include "fixtures.hpp"
#include "thiele.hpp"

using namespace skybus;
using namespace skybus::thiele;
using namespace fixtures;

namespace {

std::vector<double> uniform(double t_end, std::size_t n) {
    std::vector<double> t(n);
    for (std::size_t i = 0; i < n; ++i) t[i] = t_end * static_cast<double>(i) / static_cast<double>(n - 1);
    return t;
}

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return std::nullopt;
}

double omega_cw(const ThieleParams& p) {
    return bp::gyration_frequencies({p.inertial_mass, p.gyrocoupling, p.stiffness}).omega_cw;
}

}  // namespace

TEST_CASE("without gyrocoupling or damping the center is a harmonic oscillator") {
    const ThieleParams p{2.0, 0.0, 8.0, 0.0};
    const double w = 2.0, x0[2] = {0.3, -0.1}, v0[2] = {0.0, 0.4};
    const auto t = uniform(10.0, 2001);
    const auto tr = integrate(p, std::nullopt, x0, v0, t, {.substeps = 10});
    for (std::size_t i = 0; i < t.size(); i += 50) {
        CHECK(tr.x[i] == doctest::Approx(0.3 * std::cos(w * t[i])).epsilon(1e-9).scale(1.0));
        CHECK(tr.y[i] == doctest::Approx(-0.1 * std::cos(w * t[i]) + 0.2 * std::sin(w * t[i])).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("circular eigen-orbit keeps its radius and shows the closed-form peak") {
    const ThieleParams p{1.0, -10.0, 1.0, 0.0};
    const double w = omega_cw(p), r = 1.0;
    const double x0[2] = {r, 0.0}, v0[2] = {0.0, w * r};
    const auto t = uniform(2000.0, 4001);
    const auto tr = integrate(p, std::nullopt, x0, v0, t, {.substeps = 60});
    double worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) worst = std::max(worst, std::abs(std::hypot(tr.x[i], tr.y[i]) - r));
    CHECK(worst < 1e-8);
    const auto s = spectrum(tr);
    const auto res = extract_resonance(s);
    CHECK(std::abs(res.f_peak - w / two_pi) <= s.bin_width);
    CHECK(res.resolution_limited);
}

TEST_CASE("energy is conserved without damping and decays with it") {
    ThieleParams p{1.0, 3.0, 2.0, 0.0};
    const double x0[2] = {1.0, 0.5}, v0[2] = {-0.2, 0.3};
    const auto t = uniform(50.0, 2001);
    auto tr = integrate(p, std::nullopt, x0, v0, t, {.substeps = 20});
    const double e0 = energy(p, x0[0], x0[1], v0[0], v0[1]);
    for (std::size_t i = 0; i < t.size(); ++i)
        CHECK(energy(p, tr.x[i], tr.y[i], tr.vx[i], tr.vy[i]) == doctest::Approx(e0).epsilon(1e-9));
    p.damping = 0.05;
    tr = integrate(p, std::nullopt, x0, v0, t, {.substeps = 20});
    double prev = e0;
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double e = energy(p, tr.x[i], tr.y[i], tr.vx[i], tr.vy[i]);
        CHECK(e <= prev * (1 + 1e-12));
        prev = e;
    }
    CHECK(prev < 0.5 * e0);
}

TEST_CASE("ringdown linewidth equals d / (2 pi M) without gyrocoupling") {
    const double M = 1.0, f0 = 100.0, d = two_pi * 1.0;
    const ThieleParams p{M, 0.0, M * two_pi * f0 * two_pi * f0, d};
    const double x0[2] = {1.0, 0.0}, v0[2] = {0.0, 0.0};
    const auto t = uniform(20.0, 80001);
    const auto tr = integrate(p, std::nullopt, x0, v0, t, {.substeps = 2});
    const auto res = extract_resonance(spectrum(tr, Window::Rectangular));
    CHECK(res.f_peak == doctest::Approx(std::sqrt(f0 * f0 - std::pow(d / (4 * pi * M), 2))).epsilon(1e-3));
    CHECK(res.fwhm == doctest::Approx(d / (two_pi * M)).epsilon(0.03));
    CHECK_FALSE(res.resolution_limited);
}

TEST_CASE("reversing time with the opposite gyrocoupling retraces the orbit") {
    ThieleParams p{1.0, 2.0, 3.0, 0.0};
    const double x0[2] = {0.7, -0.2}, v0[2] = {0.1, 0.5};
    const double w = std::max(omega_cw(p), bp::gyration_frequencies({1.0, 2.0, 3.0}).omega_ccw);
    const std::size_t n = 2001;
    const double T = 1e-3 * (n - 1) / w;
    const auto fwd = integrate(p, std::nullopt, x0, v0, uniform(T, n));
    p.gyrocoupling = -p.gyrocoupling;
    const double x1[2] = {fwd.x.back(), fwd.y.back()}, v1[2] = {-fwd.vx.back(), -fwd.vy.back()};
    const auto back = integrate(p, std::nullopt, x1, v1, uniform(T, n));
    CHECK(back.x.back() == doctest::Approx(x0[0]).epsilon(1e-10));
    CHECK(back.y.back() == doctest::Approx(x0[1]).epsilon(1e-10));
    CHECK(-back.vx.back() == doctest::Approx(v0[0]).epsilon(1e-10));
    CHECK(-back.vy.back() == doctest::Approx(v0[1]).epsilon(1e-10));
}

TEST_CASE("peak frequency is insensitive to weak damping") {
    ThieleParams p{1.0, -10.0, 1.0, 0.0};
    const double w = omega_cw(p);
    const double x0[2] = {1.0, 0.0}, v0[2] = {0.0, w};
    const auto t = uniform(2000.0, 4001);
    const auto ref = extract_resonance(spectrum(integrate(p, std::nullopt, x0, v0, t, {.substeps = 60})));
    for (double ratio : {1e-4, 1e-3, 1e-2}) {
        p.damping = ratio * std::abs(p.gyrocoupling);
        const auto s = spectrum(integrate(p, std::nullopt, x0, v0, t, {.substeps = 60}));
        CHECK(std::abs(extract_resonance(s).f_peak - ref.f_peak) <= s.bin_width);
    }
}

TEST_CASE("sinc pulse drives the center along x") {
    SincPulse pulse{1e-3, 50.0, 0.1, 2.0};
    CHECK(pulse.force(0.1) == doctest::Approx(2e-3));
    CHECK(std::abs(pulse.force(0.1 + 1.0 / 100.0)) < 1e-15);
    const ThieleParams p{1.0, 0.0, 4.0, 0.1};
    const double z[2] = {0.0, 0.0};
    const auto tr = integrate(p, pulse, z, z, uniform(2.0, 2001), {.substeps = 4});
    double ymax = 0.0, xmax = 0.0;
    for (std::size_t i = 0; i < tr.x.size(); ++i) {
        ymax = std::max(ymax, std::abs(tr.y[i]));
        xmax = std::max(xmax, std::abs(tr.x[i]));
    }
    CHECK(xmax > 0.0);
    CHECK(ymax == 0.0);
    pulse.cutoff_frequency = 0.0;
    CHECK_THROWS_AS(pulse.validate(), Error);
}

TEST_CASE("failure modes") {
    const ThieleParams p{1.0, 0.0, 100.0, 0.0};
    const double x0[2] = {1.0, 0.0}, v0[2] = {0.0, 0.0};
    CHECK(code_of([&] { integrate(p, std::nullopt, x0, v0, uniform(100.0, 101)); }) == ErrorCode::StepInstability);
    CHECK(code_of([&] { integrate(p, std::nullopt, x0, v0, {0.0, 0.1, 0.1}); }) == ErrorCode::InvalidArgument);
    CHECK(code_of([&] { integrate({0.0, 0.0, 1.0, 0.0}, std::nullopt, x0, v0, uniform(1.0, 11)); }) ==
          ErrorCode::InvalidArgument);
    CHECK(code_of([&] { integrate({1.0, 0.0, 1.0, -1.0}, std::nullopt, x0, v0, uniform(1.0, 11)); }) ==
          ErrorCode::InvalidArgument);

    const auto short_tr = integrate(p, std::nullopt, x0, v0, uniform(1.0, 1000), {.substeps = 2});
    CHECK(code_of([&] { spectrum(short_tr); }) == ErrorCode::InvalidArgument);

    auto t = uniform(10.0, 2048);
    t[1000] += 1e-4;
    const auto bent = integrate(p, std::nullopt, x0, v0, t, {.substeps = 2});
    CHECK(code_of([&] { spectrum(bent); }) == ErrorCode::NonUniformGrid);

    Spectrum two;
    two.bin_width = 1.0;
    for (int k = 0; k < 64; ++k) {
        two.frequency.push_back(k);
        two.power.push_back(std::exp(-std::pow(k - 15, 2)) + 0.8 * std::exp(-std::pow(k - 40, 2)));
    }
    CHECK(code_of([&] { extract_resonance(two); }) == ErrorCode::MultiPeak);
    for (int k = 0; k < 64; ++k) two.power[k] = std::exp(-std::pow(k - 15, 2) / 9.0);
    const auto one = extract_resonance(two);
    CHECK(one.f_peak == doctest::Approx(15.0));
    CHECK(one.fwhm == doctest::Approx(2 * 3 * std::sqrt(std::log(2.0))).epsilon(0.02));
}
