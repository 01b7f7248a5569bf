#pragma once

// Open-system dynamics of the NV / gyration-mode / transmon system:
// model builders, effective two-qubit models, a Lindblad integrator and the
// state-transfer experiments. Basis ordering is GM (x) NV (x) Tr; each qubit
// uses {|g>, |e>} with sigma_z = |e><e| - |g><g|. All rates in rad/s.

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace skybus::dynamics {

using Matrix = Eigen::MatrixXcd;

struct Drive {
    double amplitude = 0.0;  // Omega_i, rad/s
    double frequency = 0.0;  // omega_i, rad/s
};

struct TripartiteModel {
    double omega_gm = 0.0;
    double omega_nv = 0.0;
    double omega_tr = 0.0;
    double lambda_sn = 0.0;
    double lambda_st_t = 0.0;
    double lambda_st_l = 0.0;
    bool include_longitudinal = false;
    std::vector<Drive> drives;  // used only by the driven rotating-frame builder
    double gamma_gm = 0.0;
    double gamma_nv_dc = 0.0;
    double gamma_nv_dp = 0.0;
    double gamma_tr_dc = 0.0;
    double gamma_tr_dp = 0.0;

    void validate() const;
};

struct HilbertSpec {
    int gm_cutoff = 8;  // number of Fock states kept for the gyration mode

    void validate() const;
    int dim() const { return 4 * gm_cutoff; }
};

struct Operators {
    Matrix id, a, adag, n;
    Matrix sm_nv, sp_nv, sz_nv;
    Matrix sm_tr, sp_tr, sz_tr;
};

Operators tripartite_operators(const HilbertSpec& spec);
// NV (x) Tr operators on the 4-dimensional two-qubit space (no mode).
Operators two_qubit_operators();

Matrix excitation_number(const HilbertSpec& spec);

// Lab-frame Hamiltonian minus frame_frequency * N_exc.
Matrix build_tripartite(const TripartiteModel& model, const HilbertSpec& spec, double frame_frequency = 0.0);

// Doubly driven NV in the frame of drive 1 after the dressing rotation (H_JR).
Matrix build_driven_rotating(const TripartiteModel& model, const HilbertSpec& spec);

struct JumpOperator {
    Matrix op;
    double rate = 0.0;
    std::string label;
};

std::vector<JumpOperator> tripartite_jumps(const TripartiteModel& model, const HilbertSpec& spec);

struct EffectiveCoherent {
    double alpha = 0.0;
    double beta = 0.0;
    double lambda_nt = 0.0;  // |coupling|, rad/s
    double lambda_nt_signed = 0.0;
    double omega_nv = 0.0;   // dispersively shifted
    double omega_tr = 0.0;
    double gamma_nv = 0.0;   // total decay
    double gamma_tr = 0.0;
    double gamma_nv_dp = 0.0;
    double gamma_tr_dp = 0.0;
    bool dispersive_warning = false;  // alpha or beta above 0.1
};

EffectiveCoherent effective_coherent(const TripartiteModel& model);
Matrix build_effective_coherent(const EffectiveCoherent& eff, double frame_frequency = 0.0);
std::vector<JumpOperator> effective_coherent_jumps(const EffectiveCoherent& eff);

struct EffectiveDissipative {
    double reduced_lambda = 0.0;  // Lambda_SN / 2
    double eta = 0.0;             // Lambda_ST / reduced_lambda
    double gamma_nt = 0.0;
    double lambda_nt = 0.0;
    double omega_nv = 0.0;        // Omega_2
    double omega_tr = 0.0;        // shifted transmon detuning
    double delta_gm = 0.0;
    double delta_tr = 0.0;
    double mode_occupation_factor = 0.0;  // reduced_lambda^2 / (Delta^2 + gamma^2 / 4)
    bool elimination_warning = false;     // gamma_GM below 5 max(couplings)
};

EffectiveDissipative effective_dissipative(const TripartiteModel& model);
Matrix build_effective_nt(const EffectiveDissipative& eff);
Matrix xi_operator(const EffectiveDissipative& eff);

// ---- Lindblad evolution -------------------------------------------------

struct Observable {
    std::string name;
    Matrix op;
};

struct EvolveOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    bool store_states = false;
    std::size_t max_steps = 5'000'000;
};

struct InvariantReport {
    double max_trace_error = 0.0;
    double min_eigenvalue = 0.0;
    double max_hermiticity_error = 0.0;

    bool trace_ok(double tol = 1e-9) const { return max_trace_error <= tol; }
    bool positivity_ok(double tol = 1e-9) const { return min_eigenvalue >= -tol; }
    bool hermiticity_ok(double tol = 1e-10) const { return max_hermiticity_error <= tol; }
    bool ok() const { return trace_ok() && positivity_ok() && hermiticity_ok(); }
};

struct Evolution {
    std::vector<double> times;
    std::vector<std::vector<double>> expectations;  // [observable][time]
    std::vector<Matrix> states;
    InvariantReport invariants;
};

void validate_density(const Matrix& rho);
Matrix lindblad_rhs(const Matrix& H, const std::vector<JumpOperator>& jumps, const Matrix& rho);

Evolution evolve(const Matrix& H, const std::vector<JumpOperator>& jumps, const Matrix& rho0,
                 const std::vector<double>& times, const std::vector<Observable>& observables,
                 const EvolveOptions& options = {});

// ---- Transfer experiments -------------------------------------------------

enum class TransferKind { Coherent, Nonreciprocal };
enum class Direction { NvToTr, TrToNv };
enum class Route { Full, Effective };

struct TransferResult {
    TransferKind kind = TransferKind::Coherent;
    Direction direction = Direction::NvToTr;
    Route route = Route::Full;
    std::vector<double> times;
    std::vector<double> nv, tr, gm;
    double peak_transfer = 0.0;
    double peak_time = 0.0;
    InvariantReport invariants;
    bool regime_warning = false;
};

TransferResult transfer_experiment(TransferKind kind, Direction direction, const TripartiteModel& model,
                                   const HilbertSpec& spec, const std::vector<double>& times, Route route,
                                   const EvolveOptions& options = {});

}  // namespace skybus::dynamics
