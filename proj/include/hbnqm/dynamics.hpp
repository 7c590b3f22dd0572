#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hbnqm/lambda_model.hpp"
#include "hbnqm/qops.hpp"

namespace hbnqm {

/// One Lindblad collapse channel: the jump operator enters the master
/// equation as C = sqrt(rate) * op.
struct JumpSpec {
    ComplexMatrix op;
    double rate = 0.0;
};

/// Collapse channels implied by a LambdaSystemSpec: one atomic jump
/// sqrt(gamma_ij) |i><j| (x) 1 per decay entry plus, for kappa > 0, the
/// cavity photon loss sqrt(kappa) 1 (x) a with constant kappa.
std::vector<JumpSpec> jump_operators(const LambdaSystemSpec& spec, const HilbertSpace& space);

struct IntegrationConfig {
    double t_start = 0.0;
    double t_end = 0.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0;        // 0 = automatic
    std::size_t sample_count = 0; // 0 = record start and end only

    void validate() const;
};

/// Time-ordered density matrices from one master-equation integration.
struct Trajectory {
    HilbertSpace space;
    std::vector<double> times;
    std::vector<ComplexMatrix> states;

    const ComplexMatrix& final_state() const { return states.back(); }
    double population(std::size_t step, Level l, int photons) const;
    /// populations[b][k] = diagonal entry b at time k, basis order as
    /// HilbertSpace::basis_labels().
    std::vector<std::vector<double>> populations() const;
};

/// Right-hand side of the master equation:
///   -i[H, rho] + sum_j C_j rho C_j^dagger - (1/2){C_j^dagger C_j, rho}.
/// Traceless and Hermiticity-preserving.
ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian,
                           const std::vector<JumpSpec>& jumps);

/// Integrate the master equation for the lambda system from cfg.t_start to
/// cfg.t_end. Every accepted state is re-Hermitized; the trace is
/// renormalized when its drift is below 1e-9 and anything larger aborts
/// with NumericalError.
Trajectory evolve(const DensityMatrix& rho0, const LambdaSystemSpec& spec,
                  const IntegrationConfig& cfg);

/// Probability that the photon initially in |g,1> ends stored in |s,0> at
/// cfg.t_end. The initial state is |g,1><g,1|.
double writing_efficiency(const LambdaSystemSpec& spec, const IntegrationConfig& cfg,
                          const HilbertSpace& space = HilbertSpace(1));

struct KappaMaxResult {
    double kappa_max = 0.0;
    TimeWindow window;
    WindowPolicy policy;
    double survival_threshold = 0.0;
    double p0 = 0.0;
};

/// Largest cavity loss scale k for which the closed-form dark-state
/// population still satisfies d(t_end) >= survival_threshold, with
/// d(t_start) = p0 and the window fixed by the policy. Bisection to
/// relative width 1e-4.
KappaMaxResult find_kappa_max(const PulseProfile& pulse, double g, double survival_threshold,
                              const WindowPolicy& policy, double p0 = 0.999);

struct SweepResult {
    std::vector<double> parameter;    // detuning values, units of g_c
    std::vector<double> efficiency;   // matching writing efficiencies
    double derived = 0.0;             // sigma_delta
    std::string convention;           // how `derived` was extracted
};

struct DetuningSweepConfig {
    double delta_max = 12.0;
    double delta_step = 0.1;
    bool both_signs = false; // also evaluate -delta (diagnostic output)
    unsigned jobs = 0;       // parallel sweep workers, 0 = hardware
};

/// Sweep writing efficiency over the one-photon detuning and locate the
/// half width at half maximum by monotone bracketing plus linear
/// interpolation between grid points. Throws NumericalError when the grid
/// fails to bracket the half maximum.
SweepResult detuning_hwhm(const LambdaSystemSpec& base, const IntegrationConfig& cfg,
                          const DetuningSweepConfig& sweep);

} // namespace hbnqm
