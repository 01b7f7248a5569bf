#include "thiele.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <boost/numeric/odeint/stepper/runge_kutta4.hpp>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <string>

#include "bp_skyrmion.hpp"
#include "constants.hpp"
#include "error.hpp"

namespace skybus::thiele {

namespace {

using State = std::array<double, 4>;  // x, y, vx, vy
namespace ode = boost::numeric::odeint;

std::mutex& fftw_plan_mutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace

void ThieleParams::validate() const {
    require(std::isfinite(inertial_mass) && inertial_mass > 0.0, "inertial mass must be positive");
    require(std::isfinite(stiffness) && stiffness >= 0.0, "stiffness must be non-negative");
    require(std::isfinite(gyrocoupling), "gyrocoupling must be finite");
    require(std::isfinite(damping) && damping >= 0.0, "damping must be non-negative");
}

void SincPulse::validate() const {
    require(std::isfinite(field_amplitude) && std::isfinite(time_shift) && std::isfinite(susceptibility),
            "pulse parameters must be finite");
    require(std::isfinite(cutoff_frequency) && cutoff_frequency > 0.0, "pulse cutoff frequency must be positive");
}

double SincPulse::force(double t) const {
    const double arg = constants::two_pi * cutoff_frequency * (t - time_shift);
    const double sinc = std::abs(arg) < 1e-8 ? 1.0 - arg * arg / 6.0 : std::sin(arg) / arg;
    return susceptibility * field_amplitude * sinc;
}

double energy(const ThieleParams& p, double x, double y, double vx, double vy) {
    return 0.5 * p.inertial_mass * (vx * vx + vy * vy) + 0.5 * p.stiffness * (x * x + y * y);
}

Trajectory integrate(const ThieleParams& p, const std::optional<SincPulse>& pulse, const double x0[2],
                     const double v0[2], const std::vector<double>& times, const IntegrateOptions& options) {
    p.validate();
    if (pulse) pulse->validate();
    require(times.size() >= 2, "time grid needs at least two points");
    require(options.substeps >= 1, "substeps must be at least one");
    for (std::size_t i = 1; i < times.size(); ++i)
        require(std::isfinite(times[i]) && times[i] > times[i - 1], "time grid must be strictly increasing");
    require(std::isfinite(x0[0]) && std::isfinite(x0[1]) && std::isfinite(v0[0]) && std::isfinite(v0[1]),
            "initial state must be finite");

    const bp::GyrationFrequencies f =
        bp::gyration_frequencies({p.inertial_mass, p.gyrocoupling, p.stiffness});
    const double wmax = std::max(std::abs(f.omega_cw), std::abs(f.omega_ccw));
    double max_dt = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) max_dt = std::max(max_dt, times[i] - times[i - 1]);
    const double h_max = max_dt / options.substeps;
    if (h_max > 0.1 / wmax) {
        char msg[160];
        std::snprintf(msg, sizeof msg, "RK4 step %.3e s exceeds 0.1 / omega_max = %.3e s; raise substeps", h_max,
                      0.1 / wmax);
        fail(ErrorCode::StepInstability, msg);
    }

    const double M = p.inertial_mass, G = p.gyrocoupling, k = p.stiffness, d = p.damping;
    auto rhs = [&](const State& s, State& ds, double t) {
        const double fx = pulse ? pulse->force(t) : 0.0;
        ds[0] = s[2];
        ds[1] = s[3];
        ds[2] = (fx - G * s[3] - k * s[0] - d * s[2]) / M;
        ds[3] = (G * s[2] - k * s[1] - d * s[3]) / M;
    };

    Trajectory tr;
    tr.times = times;
    tr.x.reserve(times.size());
    tr.y.reserve(times.size());
    tr.vx.reserve(times.size());
    tr.vy.reserve(times.size());
    State s{x0[0], x0[1], v0[0], v0[1]};
    auto store = [&](const State& st) {
        tr.x.push_back(st[0]);
        tr.y.push_back(st[1]);
        tr.vx.push_back(st[2]);
        tr.vy.push_back(st[3]);
    };
    store(s);
    ode::runge_kutta4<State> stepper;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double h = (times[i] - times[i - 1]) / options.substeps;
        for (int j = 0; j < options.substeps; ++j) stepper.do_step(rhs, s, times[i - 1] + j * h, h);
        if (!std::isfinite(s[0]) || !std::isfinite(s[1]))
            fail(ErrorCode::StepInstability, "Thiele trajectory diverged");
        // A fully decayed orbit would otherwise crawl through subnormal arithmetic.
        for (double& c : s)
            if (std::abs(c) < 1e-280) c = 0.0;
        store(s);
    }
    return tr;
}

Spectrum spectrum(const Trajectory& traj, Window window) {
    const std::size_t n = traj.times.size();
    require(n >= 1024, "spectrum needs at least 1024 samples");
    require(traj.x.size() == n, "trajectory arrays differ in length");
    const double dt = (traj.times.back() - traj.times.front()) / static_cast<double>(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        if (std::abs(traj.times[i] - traj.times[i - 1] - dt) > 1e-9 * dt)
            fail(ErrorCode::NonUniformGrid, "trajectory time grid is not uniform");
    }

    double mean = 0.0;
    for (double v : traj.x) mean += v;
    mean /= static_cast<double>(n);

    const std::size_t nc = n / 2 + 1;
    double* in = fftw_alloc_real(n);
    fftw_complex* out = fftw_alloc_complex(nc);
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        plan = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, out, FFTW_ESTIMATE);
    }
    for (std::size_t i = 0; i < n; ++i) {
        double w = 1.0;
        if (window == Window::Hann)
            w = 0.5 - 0.5 * std::cos(constants::two_pi * static_cast<double>(i) / static_cast<double>(n - 1));
        in[i] = w * (traj.x[i] - mean);
    }
    fftw_execute(plan);

    Spectrum s;
    s.window = window;
    s.bin_width = 1.0 / (static_cast<double>(n) * dt);
    s.frequency.resize(nc);
    s.power.resize(nc);
    double pmax = 0.0;
    for (std::size_t k = 0; k < nc; ++k) {
        s.frequency[k] = static_cast<double>(k) * s.bin_width;
        s.power[k] = out[k][0] * out[k][0] + out[k][1] * out[k][1];
        pmax = std::max(pmax, s.power[k]);
    }
    {
        std::lock_guard<std::mutex> lock(fftw_plan_mutex());
        fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
    if (pmax > 0.0)
        for (double& v : s.power) v /= pmax;
    return s;
}

Resonance extract_resonance(const Spectrum& s) {
    const std::size_t n = s.power.size();
    require(n >= 8 && s.frequency.size() == n, "spectrum too short");
    const auto& p = s.power;
    std::size_t k = 1;
    for (std::size_t i = 1; i < n; ++i)
        if (p[i] > p[k]) k = i;
    require(p[k] > 0.0, "spectrum carries no power");

    // Main lobe: monotone descent on both sides of the peak.
    std::size_t lo = k, hi = k;
    while (lo > 1 && p[lo - 1] <= p[lo]) --lo;
    while (hi + 1 < n && p[hi + 1] <= p[hi]) ++hi;
    double second = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (i >= lo && i <= hi) continue;
        if (p[i] >= p[i - 1] && p[i] >= p[i + 1]) second = std::max(second, p[i]);
    }
    Resonance r;
    r.peak_ratio = second > 0.0 ? p[k] / second : std::numeric_limits<double>::infinity();
    if (!(r.peak_ratio > 3.0))
        fail(ErrorCode::MultiPeak, "spectrum has competing peaks (ratio " + std::to_string(r.peak_ratio) + ")");

    double offset = 0.0;
    if (k > 0 && k + 1 < n) {
        const double a = p[k - 1], b = p[k], c = p[k + 1];
        const double den = a - 2.0 * b + c;
        if (den < 0.0) offset = 0.5 * (a - c) / den;
    }
    r.f_peak = s.frequency[k] + offset * s.bin_width;

    const double half = 0.5 * p[k];
    std::size_t i = k;
    while (i > 0 && p[i] > half) --i;
    const double f_lo = p[i] > half ? s.frequency[i]
                                    : s.frequency[i] + (half - p[i]) / (p[i + 1] - p[i]) * s.bin_width;
    std::size_t j = k;
    while (j + 1 < n && p[j] > half) ++j;
    const double f_hi = p[j] > half ? s.frequency[j]
                                    : s.frequency[j - 1] + (p[j - 1] - half) / (p[j - 1] - p[j]) * s.bin_width;
    r.fwhm = f_hi - f_lo;
    const double lobe = s.window == Window::Hann ? 1.44 : 0.89;
    r.resolution_limited = r.fwhm < 1.5 * lobe * s.bin_width;
    return r;
}

}  // namespace skybus::thiele
