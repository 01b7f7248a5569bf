/*
 * skybus: skyrmion-gyration quantum bus between an NV center and a transmon.
 *
 * C interface. All lengths in metres, fields in tesla, magnetization in A/m,
 * frequencies and rates as angular frequencies (rad/s) unless a name says Hz.
 * Functions return a skb_status; on failure skb_last_error() holds a message
 * for the calling thread. Handles are created by the create and run functions and
 * released with the matching destroy function.
 */
#ifndef SKYBUS_H
#define SKYBUS_H

#include <stddef.h>

#if defined(SKYBUS_BUILDING)
#define SKB_API __attribute__((visibility("default")))
#else
#define SKB_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum skb_status {
    SKB_OK = 0,
    SKB_ERR_INVALID_ARGUMENT = 1,
    SKB_ERR_SINGULAR_POINT = 2,
    SKB_ERR_NON_CONVERGENCE = 3,
    SKB_ERR_NEGATIVE_FREQUENCY = 4,
    SKB_ERR_DRIVE_CONDITION = 5,
    SKB_ERR_STEP_FAILURE = 6,
    SKB_ERR_STEP_INSTABILITY = 7,
    SKB_ERR_NON_UNIFORM_GRID = 8,
    SKB_ERR_MULTI_PEAK = 9,
    SKB_ERR_INTERNAL = 99
} skb_status;

SKB_API const char* skb_version(void);
SKB_API const char* skb_last_error(void);
SKB_API const char* skb_status_name(skb_status status);

typedef struct skb_complex {
    double re, im;
} skb_complex;

typedef struct skb_vec3 {
    double x, y, z;
} skb_vec3;

typedef struct skb_cvec3 {
    skb_complex x, y, z;
} skb_cvec3;

/* ---- texture and material ------------------------------------------------ */

typedef struct skb_material {
    double saturation_magnetization;
    double g_factor;
    double gilbert_damping;
} skb_material;

typedef struct skb_skyrmion {
    double disk_radius;
    double disk_thickness;
    double reduced_radius; /* c = R_Sk / R */
    double phase;          /* Phi_0 */
    int chirality;
    int polarity;
    int topological_charge;
} skb_skyrmion;

typedef enum skb_scheme { SKB_SCHEME_FIXED = 0, SKB_SCHEME_ADAPTIVE = 1 } skb_scheme;

typedef struct skb_quadrature {
    int radial_points;
    int azimuthal_points;
    int thickness_points;
    int loop_radial_points;
    int loop_azimuthal_points;
    double relative_tolerance;
    skb_scheme scheme;
    int max_refinements;
} skb_quadrature;

SKB_API void skb_material_default(skb_material* out);
SKB_API void skb_skyrmion_default(skb_skyrmion* out);
SKB_API void skb_quadrature_default(skb_quadrature* out);

/* A validated material + skyrmion pair. */
typedef struct skb_system skb_system;

SKB_API skb_status skb_system_create(const skb_material* material, const skb_skyrmion* skyrmion, skb_system** out);
SKB_API void skb_system_destroy(skb_system* sys);
SKB_API int skb_system_thin_disk_warning(const skb_system* sys);

SKB_API skb_status skb_gyration_radius(const skb_system* sys, double* r_c);
SKB_API skb_status skb_magnetization(const skb_system* sys, double x, double y, skb_vec3* out);
SKB_API skb_status skb_mode_function(const skb_system* sys, double x, double y, double r_c, skb_cvec3* out);
SKB_API skb_status skb_spinwave_amplitude(const skb_system* sys, double x, double y, double r_c, skb_complex* out);

typedef struct skb_gyration {
    double inertial_mass;
    double gyrocoupling;
    double stiffness;
} skb_gyration;

typedef struct skb_gyration_frequencies {
    double omega0_prime;
    double omega;
    double omega_cw;
    double omega_ccw;
} skb_gyration_frequencies;

SKB_API skb_status skb_gyration_frequencies_compute(const skb_gyration* params, skb_gyration_frequencies* out);
SKB_API double skb_gyrocoupling(double thickness, double saturation_magnetization, int topological_charge);

/* ---- stray field and flux ---------------------------------------------------- */

/* Point measured from the disk center; z = 0 is the disk midplane. */
SKB_API skb_status skb_field_mode_at(const skb_system* sys, skb_vec3 point, double r_c, const skb_quadrature* quad,
                                     skb_cvec3* out);
SKB_API skb_status skb_on_axis_components(const skb_system* sys, double z, double r_c, const skb_quadrature* quad,
                                          skb_cvec3* out);

typedef struct skb_squid {
    skb_vec3 center;
    double radius;
} skb_squid;

typedef struct skb_flux {
    skb_complex reduced; /* in units of R^2, includes r_c / R */
    double magnitude;    /* F_Phi */
    double phase;
    double flux_scale; /* mu0 M_S R^2 F_Phi / (4 pi), Wb */
} skb_flux;

SKB_API skb_status skb_flux_amplitude(const skb_system* sys, const skb_squid* loop, double r_c,
                                      const skb_quadrature* quad, skb_flux* out);

/* ---- NV coupling ----------------------------------------------------------------- */

typedef struct skb_nv {
    double standoff; /* d_G from the top face */
    double zero_field_splitting;
    double axial_field;
} skb_nv;

typedef struct skb_nv_coupling {
    double lambda_sn;
    double f_sn;
    double phase_x;
    double phase_y;
    double gyration_radius;
    double height; /* d_G + h_G / 2 */
} skb_nv_coupling;

SKB_API void skb_nv_default(skb_nv* out);
SKB_API skb_status skb_nv_qubit_frequency(const skb_nv* nv, double* out);
SKB_API skb_status skb_f_sn_integral(double c, double height_r, double thickness_r, const skb_quadrature* quad,
                                     double* modulus, double* phase_x);
SKB_API skb_status skb_lambda_sn(const skb_system* sys, const skb_nv* nv, const skb_quadrature* quad,
                                 skb_nv_coupling* out);

/* ---- transmon ---------------------------------------------------------------------- */

typedef struct skb_transmon {
    double ej_max;
    double ec;
    double asymmetry;
    double bias_flux;
} skb_transmon;

typedef struct skb_transmon_derived {
    double s_factor;
    double omega_tr;
    double eta_t;
    double eta_lambda;
    double zpf_phase;
    int branch_sign;
    int regime_warning;
} skb_transmon_derived;

typedef struct skb_transmon_coupling {
    double transverse;
    double longitudinal;
    double transverse_corrected;
    double eta_lambda;
    int regime_warning;
} skb_transmon_coupling;

SKB_API double skb_s_factor(double bias_flux, double asymmetry);
SKB_API skb_status skb_transmon_frequency(const skb_transmon* p, double* omega_tr);
SKB_API skb_status skb_regime_diagnostics(const skb_transmon* p, skb_transmon_derived* out);
SKB_API skb_status skb_coupling_strengths(const skb_transmon* p, const skb_flux* flux, skb_transmon_coupling* out);

/* ---- dynamics ------------------------------------------------------------------------ */

typedef struct skb_tripartite {
    double omega_gm;
    double omega_nv;
    double omega_tr;
    double lambda_sn;
    double lambda_st_t;
    double lambda_st_l;
    int include_longitudinal;
    int n_drives; /* 0 or 2 */
    double drive_amplitude[2];
    double drive_frequency[2];
    double gamma_gm;
    double gamma_nv_dc;
    double gamma_nv_dp;
    double gamma_tr_dc;
    double gamma_tr_dp;
} skb_tripartite;

typedef struct skb_effective_coherent {
    double alpha, beta;
    double lambda_nt;
    double omega_nv, omega_tr;
    double gamma_nv, gamma_tr;
    int dispersive_warning;
} skb_effective_coherent;

typedef struct skb_effective_dissipative {
    double reduced_lambda;
    double eta;
    double gamma_nt;
    double lambda_nt;
    double omega_nv, omega_tr;
    int elimination_warning;
} skb_effective_dissipative;

SKB_API skb_status skb_effective_coherent_compute(const skb_tripartite* m, skb_effective_coherent* out);
SKB_API skb_status skb_effective_dissipative_compute(const skb_tripartite* m, skb_effective_dissipative* out);

/* Frobenius norms of [H, N_exc] and H - H^dag for the lab-frame model. */
SKB_API skb_status skb_tripartite_checks(const skb_tripartite* m, int gm_cutoff, double* commutator_norm,
                                         double* hermiticity_error);

typedef enum skb_transfer_kind { SKB_TRANSFER_COHERENT = 0, SKB_TRANSFER_NONRECIPROCAL = 1 } skb_transfer_kind;
typedef enum skb_direction { SKB_NV_TO_TR = 0, SKB_TR_TO_NV = 1 } skb_direction;
typedef enum skb_route { SKB_ROUTE_FULL = 0, SKB_ROUTE_EFFECTIVE = 1 } skb_route;

typedef struct skb_evolve_options {
    double rel_tol;
    double abs_tol;
    size_t max_steps;
} skb_evolve_options;

SKB_API void skb_evolve_options_default(skb_evolve_options* out);

typedef struct skb_transfer_summary {
    double peak_transfer;
    double peak_time;
    double max_trace_error;
    double min_eigenvalue;
    double max_hermiticity_error;
    int invariants_ok;
    int regime_warning;
} skb_transfer_summary;

typedef struct skb_experiment skb_experiment;

SKB_API skb_status skb_transfer_run(const skb_tripartite* m, int gm_cutoff, skb_transfer_kind kind,
                                    skb_direction direction, skb_route route, const double* times, size_t n_times,
                                    const skb_evolve_options* options, skb_experiment** out);
SKB_API void skb_experiment_destroy(skb_experiment* e);
SKB_API size_t skb_experiment_size(const skb_experiment* e);
/* Each buffer (may be NULL) receives skb_experiment_size() values. */
SKB_API skb_status skb_experiment_populations(const skb_experiment* e, double* nv, double* tr, double* gm);
SKB_API skb_status skb_experiment_summary(const skb_experiment* e, skb_transfer_summary* out);

/* ---- Thiele dynamics ------------------------------------------------------------------- */

typedef struct skb_thiele {
    double inertial_mass;
    double gyrocoupling;
    double stiffness;
    double damping;
} skb_thiele;

typedef struct skb_sinc_pulse {
    double field_amplitude;
    double cutoff_frequency; /* Hz */
    double time_shift;
    double susceptibility; /* N/T */
} skb_sinc_pulse;

typedef enum skb_window { SKB_WINDOW_HANN = 0, SKB_WINDOW_RECTANGULAR = 1 } skb_window;

typedef struct skb_resonance {
    double f_peak; /* Hz */
    double fwhm;   /* Hz */
    double peak_ratio;
    int resolution_limited;
} skb_resonance;

typedef struct skb_trajectory skb_trajectory;
typedef struct skb_spectrum skb_spectrum;

/* pulse may be NULL. */
SKB_API skb_status skb_thiele_integrate(const skb_thiele* p, const skb_sinc_pulse* pulse, const double x0[2],
                                        const double v0[2], const double* times, size_t n_times, int substeps,
                                        skb_trajectory** out);
SKB_API void skb_trajectory_destroy(skb_trajectory* t);
SKB_API size_t skb_trajectory_size(const skb_trajectory* t);
SKB_API skb_status skb_trajectory_data(const skb_trajectory* t, double* times, double* x, double* y, double* vx,
                                       double* vy);

SKB_API skb_status skb_spectrum_compute(const skb_trajectory* t, skb_window window, skb_spectrum** out);
SKB_API void skb_spectrum_destroy(skb_spectrum* s);
SKB_API size_t skb_spectrum_size(const skb_spectrum* s);
SKB_API skb_status skb_spectrum_data(const skb_spectrum* s, double* frequency, double* power);
SKB_API skb_status skb_spectrum_resonance(const skb_spectrum* s, skb_resonance* out);

#ifdef __cplusplus
}
#endif

#endif /* SKYBUS_H */
