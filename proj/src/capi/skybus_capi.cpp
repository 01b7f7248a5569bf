#include "skybus/skybus.h"

#include <algorithm>
#include <exception>
#include <memory>
#include <optional>
#include <new>
#include <string>

#include "bp_skyrmion.hpp"
#include "constants.hpp"
#include "dynamics.hpp"
#include "error.hpp"
#include "nv_coupling.hpp"
#include "stray_field.hpp"
#include "thiele.hpp"
#include "transmon.hpp"

using namespace skybus;

struct skb_system {
    bp::Material material;
    bp::SkyrmionConfig config;
};

struct skb_experiment {
    dynamics::TransferResult result;
};

struct skb_trajectory {
    thiele::Trajectory traj;
};

struct skb_spectrum {
    thiele::Spectrum spec;
};

namespace {

thread_local std::string g_last_error;

skb_status to_status(ErrorCode c) {
    switch (c) {
        case ErrorCode::InvalidArgument: return SKB_ERR_INVALID_ARGUMENT;
        case ErrorCode::SingularPoint: return SKB_ERR_SINGULAR_POINT;
        case ErrorCode::NonConvergence: return SKB_ERR_NON_CONVERGENCE;
        case ErrorCode::NegativeFrequency: return SKB_ERR_NEGATIVE_FREQUENCY;
        case ErrorCode::DriveCondition: return SKB_ERR_DRIVE_CONDITION;
        case ErrorCode::StepFailure: return SKB_ERR_STEP_FAILURE;
        case ErrorCode::StepInstability: return SKB_ERR_STEP_INSTABILITY;
        case ErrorCode::NonUniformGrid: return SKB_ERR_NON_UNIFORM_GRID;
        case ErrorCode::MultiPeak: return SKB_ERR_MULTI_PEAK;
    }
    return SKB_ERR_INTERNAL;
}

template <class F>
skb_status guarded(F&& f) {
    try {
        g_last_error.clear();
        f();
        return SKB_OK;
    } catch (const Error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return SKB_ERR_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return SKB_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return SKB_ERR_INTERNAL;
    }
}

template <class... P>
void need(const P*... ptrs) {
    if (((ptrs == nullptr) || ...)) fail(ErrorCode::InvalidArgument, "null pointer argument");
}

skb_complex to_c(cdouble z) { return {z.real(), z.imag()}; }
skb_cvec3 to_c(const CVec3& v) { return {to_c(v[0]), to_c(v[1]), to_c(v[2])}; }

stray::QuadratureSpec to_core(const skb_quadrature* q) {
    stray::QuadratureSpec s;
    if (q == nullptr) return s;
    s.radial_points = q->radial_points;
    s.azimuthal_points = q->azimuthal_points;
    s.thickness_points = q->thickness_points;
    s.loop_radial_points = q->loop_radial_points;
    s.loop_azimuthal_points = q->loop_azimuthal_points;
    s.relative_tolerance = q->relative_tolerance;
    s.scheme = q->scheme == SKB_SCHEME_ADAPTIVE ? stray::Scheme::Adaptive : stray::Scheme::FixedGrid;
    s.max_refinements = q->max_refinements;
    return s;
}

transmon::TransmonParams to_core(const skb_transmon* p) { return {p->ej_max, p->ec, p->asymmetry, p->bias_flux}; }

stray::FluxAmplitude to_core(const skb_flux* f) {
    return {cdouble(f->reduced.re, f->reduced.im), f->magnitude, f->phase, f->flux_scale};
}

dynamics::TripartiteModel to_core(const skb_tripartite* m) {
    dynamics::TripartiteModel t;
    t.omega_gm = m->omega_gm;
    t.omega_nv = m->omega_nv;
    t.omega_tr = m->omega_tr;
    t.lambda_sn = m->lambda_sn;
    t.lambda_st_t = m->lambda_st_t;
    t.lambda_st_l = m->lambda_st_l;
    t.include_longitudinal = m->include_longitudinal != 0;
    require(m->n_drives == 0 || m->n_drives == 2, "n_drives must be 0 or 2");
    for (int i = 0; i < m->n_drives; ++i) t.drives.push_back({m->drive_amplitude[i], m->drive_frequency[i]});
    t.gamma_gm = m->gamma_gm;
    t.gamma_nv_dc = m->gamma_nv_dc;
    t.gamma_nv_dp = m->gamma_nv_dp;
    t.gamma_tr_dc = m->gamma_tr_dc;
    t.gamma_tr_dp = m->gamma_tr_dp;
    return t;
}

thiele::ThieleParams to_core(const skb_thiele* p) {
    return {p->inertial_mass, p->gyrocoupling, p->stiffness, p->damping};
}

}  // namespace

extern "C" {

const char* skb_version(void) { return "1.0.0"; }

const char* skb_last_error(void) { return g_last_error.c_str(); }

const char* skb_status_name(skb_status status) {
    switch (status) {
        case SKB_OK: return "OK";
        case SKB_ERR_INVALID_ARGUMENT: return "InvalidArgument";
        case SKB_ERR_SINGULAR_POINT: return "SingularPoint";
        case SKB_ERR_NON_CONVERGENCE: return "NonConvergence";
        case SKB_ERR_NEGATIVE_FREQUENCY: return "NegativeFrequency";
        case SKB_ERR_DRIVE_CONDITION: return "DriveCondition";
        case SKB_ERR_STEP_FAILURE: return "StepFailure";
        case SKB_ERR_STEP_INSTABILITY: return "StepInstability";
        case SKB_ERR_NON_UNIFORM_GRID: return "NonUniformGrid";
        case SKB_ERR_MULTI_PEAK: return "MultiPeak";
        case SKB_ERR_INTERNAL: return "Internal";
    }
    return "Unknown";
}

void skb_material_default(skb_material* out) {
    if (out) *out = {1e6, 2.0, 0.0};
}

void skb_skyrmion_default(skb_skyrmion* out) {
    if (out) *out = {100e-9, 5e-9, 0.1, constants::pi / 2.0, 1, -1, -1};
}

void skb_quadrature_default(skb_quadrature* out) {
    if (!out) return;
    const stray::QuadratureSpec s;
    *out = {s.radial_points,      s.azimuthal_points, s.thickness_points, s.loop_radial_points,
            s.loop_azimuthal_points, s.relative_tolerance, SKB_SCHEME_FIXED, s.max_refinements};
}

skb_status skb_system_create(const skb_material* material, const skb_skyrmion* sk, skb_system** out) {
    return guarded([&] {
        need(material, sk, out);
        *out = nullptr;
        auto sys = std::make_unique<skb_system>();
        sys->material = {material->saturation_magnetization, material->g_factor, material->gilbert_damping};
        sys->config.geometry = {sk->disk_radius, sk->disk_thickness};
        sys->config.reduced_radius = sk->reduced_radius;
        sys->config.phase = sk->phase;
        sys->config.chirality = sk->chirality;
        sys->config.polarity = sk->polarity;
        sys->config.topological_charge = sk->topological_charge;
        sys->material.validate();
        sys->config.validate();
        *out = sys.release();
    });
}

void skb_system_destroy(skb_system* sys) { delete sys; }

int skb_system_thin_disk_warning(const skb_system* sys) { return sys && sys->config.thin_disk_warning() ? 1 : 0; }

skb_status skb_gyration_radius(const skb_system* sys, double* r_c) {
    return guarded([&] {
        need(sys, r_c);
        *r_c = bp::gyration_radius(sys->config, sys->material);
    });
}

skb_status skb_magnetization(const skb_system* sys, double x, double y, skb_vec3* out) {
    return guarded([&] {
        need(sys, out);
        const Vec3 m = bp::magnetization(x, y, sys->config);
        *out = {m[0], m[1], m[2]};
    });
}

skb_status skb_mode_function(const skb_system* sys, double x, double y, double r_c, skb_cvec3* out) {
    return guarded([&] {
        need(sys, out);
        *out = to_c(bp::mode_function(x, y, sys->config, r_c));
    });
}

skb_status skb_spinwave_amplitude(const skb_system* sys, double x, double y, double r_c, skb_complex* out) {
    return guarded([&] {
        need(sys, out);
        *out = to_c(bp::spinwave_amplitude(x, y, sys->config, sys->material, r_c));
    });
}

skb_status skb_gyration_frequencies_compute(const skb_gyration* p, skb_gyration_frequencies* out) {
    return guarded([&] {
        need(p, out);
        const auto f = bp::gyration_frequencies({p->inertial_mass, p->gyrocoupling, p->stiffness});
        *out = {f.omega0_prime, f.omega, f.omega_cw, f.omega_ccw};
    });
}

double skb_gyrocoupling(double thickness, double saturation_magnetization, int topological_charge) {
    return bp::gyrocoupling(thickness, saturation_magnetization, topological_charge);
}

skb_status skb_field_mode_at(const skb_system* sys, skb_vec3 point, double r_c, const skb_quadrature* quad,
                             skb_cvec3* out) {
    return guarded([&] {
        need(sys, out);
        *out = to_c(stray::field_mode_at({point.x, point.y, point.z}, sys->config, sys->material, r_c, to_core(quad)));
    });
}

skb_status skb_on_axis_components(const skb_system* sys, double z, double r_c, const skb_quadrature* quad,
                                  skb_cvec3* out) {
    return guarded([&] {
        need(sys, out);
        *out = to_c(stray::on_axis_components(z, sys->config, sys->material, r_c, to_core(quad)));
    });
}

skb_status skb_flux_amplitude(const skb_system* sys, const skb_squid* loop, double r_c, const skb_quadrature* quad,
                              skb_flux* out) {
    return guarded([&] {
        need(sys, loop, out);
        const stray::SquidLoop l{{loop->center.x, loop->center.y, loop->center.z}, loop->radius};
        const auto f = stray::flux_amplitude(l, sys->config, sys->material, r_c, to_core(quad));
        *out = {to_c(f.reduced), f.magnitude, f.phase, f.flux_scale};
    });
}

void skb_nv_default(skb_nv* out) {
    if (out) *out = {5e-9, constants::hz_to_angular(2.87e9), 0.0};
}

skb_status skb_nv_qubit_frequency(const skb_nv* nv, double* out) {
    return guarded([&] {
        need(nv, out);
        *out = nv::nv_qubit_frequency({nv->standoff, nv->zero_field_splitting, nv->axial_field});
    });
}

skb_status skb_f_sn_integral(double c, double height_r, double thickness_r, const skb_quadrature* quad,
                             double* modulus, double* phase_x) {
    return guarded([&] {
        need(modulus);
        const auto f = nv::f_sn_integral(c, height_r, thickness_r, to_core(quad));
        *modulus = f.modulus;
        if (phase_x) *phase_x = f.phase_x;
    });
}

skb_status skb_lambda_sn(const skb_system* sys, const skb_nv* nvp, const skb_quadrature* quad, skb_nv_coupling* out) {
    return guarded([&] {
        need(sys, nvp, out);
        const auto r = nv::lambda_sn(sys->config, sys->material,
                                     {nvp->standoff, nvp->zero_field_splitting, nvp->axial_field}, to_core(quad));
        *out = {r.lambda_sn, r.f_sn, r.phase_x, r.phase_y, r.gyration_radius, r.height};
    });
}

double skb_s_factor(double bias_flux, double asymmetry) { return transmon::s_factor(bias_flux, asymmetry); }

skb_status skb_transmon_frequency(const skb_transmon* p, double* omega_tr) {
    return guarded([&] {
        need(p, omega_tr);
        *omega_tr = transmon::transmon_frequency(to_core(p));
    });
}

skb_status skb_regime_diagnostics(const skb_transmon* p, skb_transmon_derived* out) {
    return guarded([&] {
        need(p, out);
        const auto d = transmon::regime_diagnostics(to_core(p));
        *out = {d.s_factor, d.omega_tr, d.eta_t, d.eta_lambda, d.zpf_phase, d.branch_sign, d.regime_warning ? 1 : 0};
    });
}

skb_status skb_coupling_strengths(const skb_transmon* p, const skb_flux* flux, skb_transmon_coupling* out) {
    return guarded([&] {
        need(p, flux, out);
        const auto c = transmon::coupling_strengths(to_core(p), to_core(flux));
        *out = {c.transverse, c.longitudinal, c.transverse_corrected, c.eta_lambda, c.regime_warning ? 1 : 0};
    });
}

skb_status skb_effective_coherent_compute(const skb_tripartite* m, skb_effective_coherent* out) {
    return guarded([&] {
        need(m, out);
        const auto e = dynamics::effective_coherent(to_core(m));
        *out = {e.alpha,    e.beta,     e.lambda_nt, e.omega_nv, e.omega_tr,
                e.gamma_nv, e.gamma_tr, e.dispersive_warning ? 1 : 0};
    });
}

skb_status skb_effective_dissipative_compute(const skb_tripartite* m, skb_effective_dissipative* out) {
    return guarded([&] {
        need(m, out);
        const auto e = dynamics::effective_dissipative(to_core(m));
        *out = {e.reduced_lambda, e.eta,      e.gamma_nt, e.lambda_nt,
                e.omega_nv,       e.omega_tr, e.elimination_warning ? 1 : 0};
    });
}

skb_status skb_tripartite_checks(const skb_tripartite* m, int gm_cutoff, double* commutator_norm,
                                 double* hermiticity_error) {
    return guarded([&] {
        need(m);
        const dynamics::HilbertSpec spec{gm_cutoff};
        const dynamics::Matrix H = dynamics::build_tripartite(to_core(m), spec);
        const dynamics::Matrix N = dynamics::excitation_number(spec);
        if (commutator_norm) *commutator_norm = (H * N - N * H).norm();
        if (hermiticity_error) *hermiticity_error = (H - H.adjoint()).norm();
    });
}

void skb_evolve_options_default(skb_evolve_options* out) {
    if (!out) return;
    const dynamics::EvolveOptions o;
    *out = {o.rel_tol, o.abs_tol, o.max_steps};
}

skb_status skb_transfer_run(const skb_tripartite* m, int gm_cutoff, skb_transfer_kind kind, skb_direction direction,
                            skb_route route, const double* times, size_t n_times, const skb_evolve_options* options,
                            skb_experiment** out) {
    return guarded([&] {
        need(m, times, out);
        *out = nullptr;
        dynamics::EvolveOptions opt;
        if (options) {
            opt.rel_tol = options->rel_tol;
            opt.abs_tol = options->abs_tol;
            opt.max_steps = options->max_steps;
        }
        auto e = std::make_unique<skb_experiment>();
        e->result = dynamics::transfer_experiment(
            kind == SKB_TRANSFER_NONRECIPROCAL ? dynamics::TransferKind::Nonreciprocal : dynamics::TransferKind::Coherent,
            direction == SKB_TR_TO_NV ? dynamics::Direction::TrToNv : dynamics::Direction::NvToTr, to_core(m),
            dynamics::HilbertSpec{gm_cutoff}, std::vector<double>(times, times + n_times),
            route == SKB_ROUTE_EFFECTIVE ? dynamics::Route::Effective : dynamics::Route::Full, opt);
        *out = e.release();
    });
}

void skb_experiment_destroy(skb_experiment* e) { delete e; }

size_t skb_experiment_size(const skb_experiment* e) { return e ? e->result.times.size() : 0; }

skb_status skb_experiment_populations(const skb_experiment* e, double* nv, double* tr, double* gm) {
    return guarded([&] {
        need(e);
        const auto& r = e->result;
        if (nv) std::copy(r.nv.begin(), r.nv.end(), nv);
        if (tr) std::copy(r.tr.begin(), r.tr.end(), tr);
        if (gm) std::copy(r.gm.begin(), r.gm.end(), gm);
    });
}

skb_status skb_experiment_summary(const skb_experiment* e, skb_transfer_summary* out) {
    return guarded([&] {
        need(e, out);
        const auto& r = e->result;
        *out = {r.peak_transfer,
                r.peak_time,
                r.invariants.max_trace_error,
                r.invariants.min_eigenvalue,
                r.invariants.max_hermiticity_error,
                r.invariants.ok() ? 1 : 0,
                r.regime_warning ? 1 : 0};
    });
}

skb_status skb_thiele_integrate(const skb_thiele* p, const skb_sinc_pulse* pulse, const double x0[2],
                                const double v0[2], const double* times, size_t n_times, int substeps,
                                skb_trajectory** out) {
    return guarded([&] {
        need(p, x0, v0, times, out);
        *out = nullptr;
        std::optional<thiele::SincPulse> sp;
        if (pulse)
            sp = thiele::SincPulse{pulse->field_amplitude, pulse->cutoff_frequency, pulse->time_shift,
                                   pulse->susceptibility};
        auto t = std::make_unique<skb_trajectory>();
        t->traj = thiele::integrate(to_core(p), sp, x0, v0, std::vector<double>(times, times + n_times),
                                    thiele::IntegrateOptions{substeps});
        *out = t.release();
    });
}

void skb_trajectory_destroy(skb_trajectory* t) { delete t; }

size_t skb_trajectory_size(const skb_trajectory* t) { return t ? t->traj.times.size() : 0; }

skb_status skb_trajectory_data(const skb_trajectory* t, double* times, double* x, double* y, double* vx, double* vy) {
    return guarded([&] {
        need(t);
        const auto& tr = t->traj;
        if (times) std::copy(tr.times.begin(), tr.times.end(), times);
        if (x) std::copy(tr.x.begin(), tr.x.end(), x);
        if (y) std::copy(tr.y.begin(), tr.y.end(), y);
        if (vx) std::copy(tr.vx.begin(), tr.vx.end(), vx);
        if (vy) std::copy(tr.vy.begin(), tr.vy.end(), vy);
    });
}

skb_status skb_spectrum_compute(const skb_trajectory* t, skb_window window, skb_spectrum** out) {
    return guarded([&] {
        need(t, out);
        *out = nullptr;
        auto s = std::make_unique<skb_spectrum>();
        s->spec = thiele::spectrum(t->traj,
                                   window == SKB_WINDOW_RECTANGULAR ? thiele::Window::Rectangular : thiele::Window::Hann);
        *out = s.release();
    });
}

void skb_spectrum_destroy(skb_spectrum* s) { delete s; }

size_t skb_spectrum_size(const skb_spectrum* s) { return s ? s->spec.frequency.size() : 0; }

skb_status skb_spectrum_data(const skb_spectrum* s, double* frequency, double* power) {
    return guarded([&] {
        need(s);
        if (frequency) std::copy(s->spec.frequency.begin(), s->spec.frequency.end(), frequency);
        if (power) std::copy(s->spec.power.begin(), s->spec.power.end(), power);
    });
}

skb_status skb_spectrum_resonance(const skb_spectrum* s, skb_resonance* out) {
    return guarded([&] {
        need(s, out);
        const auto r = thiele::extract_resonance(s->spec);
        *out = {r.f_peak, r.fwhm, r.peak_ratio, r.resolution_limited ? 1 : 0};
    });
}

}  // extern "C"
