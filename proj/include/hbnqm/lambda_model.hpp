#pragma once

#include <functional>
#include <map>
#include <utility>

#include "hbnqm/qops.hpp"

namespace hbnqm {

// Everything in this module runs in scaled units: the signal coupling g_c
// sets the frequency unit (g_c = 1), times are in 1/g_c, hbar = 1.

/// Sigmoid control pulse Omega(t) = omega0 / (1 + exp((t - t0)/T)).
/// Strictly decreasing from omega0 (t -> -inf) to 0 (t -> +inf); the
/// half-height point sits at t0 (default 0).
struct PulseProfile {
    double omega0 = 10.0; // peak Rabi frequency, units of g_c
    double T = 2.0;       // characteristic time, units of 1/g_c
    double t0 = 0.0;      // midpoint shift, units of 1/g_c

    PulseProfile() = default;
    PulseProfile(double omega0_, double T_, double t0_ = 0.0);
};

double control_pulse(double t, const PulseProfile& pulse);

/// theta = arctan(g / omega), taken in [0, pi/2]. omega = 0 maps to the
/// pi/2 limit.
double mixing_angle(double g, double omega);

/// Instantaneous dark state cos(theta)|g,1> - sin(theta)|s,0>. The relative
/// minus sign is the convention under which the assembled Hamiltonian
/// annihilates the state at zero detuning; tests assert that, not the sign.
StateVector dark_state(double theta, const HilbertSpace& space);

/// Lambda-system model: couplings, detunings, decay channels.
struct LambdaSystemSpec {
    double g = 1.0;         // signal coupling, units of g_c
    PulseProfile pulse;
    // Optional replacement for the sigmoid: any Omega(t). The sigmoid is
    // the only named shape; window policies still derive from `pulse`.
    std::function<double(double)> control_override;
    double delta_one = 0.0; // one-photon detuning on |e>
    double delta_two = 0.0; // two-photon detuning on |s>
    std::map<std::pair<Level, Level>, double> gammas; // (i,j) -> decay rate of |i><j|
    double kappa = 0.0;     // cavity photon loss rate

    double control(double t) const {
        return control_override ? control_override(t) : control_pulse(t, pulse);
    }
    void validate() const; // g, kappa, gammas >= 0
};

/// H(t) = Omega(t)(|s><e| + |e><s|) (x) 1
///      + g (|e><g| (x) a + |g><e| (x) a^dagger)
///      + delta_one |e><e| (x) 1 + delta_two |s><s| (x) 1
/// The photon-exchange term is the excitation-conserving form, which is the
/// one annihilating the dark state; it also makes results independent of
/// the photon cutoff. Hermitian by construction.
ComplexMatrix build_hamiltonian(double t, const LambdaSystemSpec& spec,
                                const HilbertSpace& space);

/// Analytic model of dark-state population loss: d'(t) = -k cos^2(theta(t)) d(t),
/// solved in closed form as d(t) = c1 * exp(-k * F(t)) with F the exact
/// antiderivative of cos^2(theta) and c1 fixed by d(t_start) = p0.
struct DarkStateDecayModel {
    double k = 0.0;        // cavity loss scale, units of g_c
    PulseProfile pulse;
    double g = 1.0;        // coupling, units of g_c
    double p0 = 0.999;     // initial dark-state population
    double t_start = 0.0;
    double c1 = 0.0;       // p0 * exp(k * F(t_start))

    static DarkStateDecayModel with_initial(double k, const PulseProfile& pulse, double g,
                                            double p0, double t_start);
};

/// k * cos^2(theta(t)); the instantaneous photon fraction of the dark state
/// times the loss scale.
double effective_cavity_decay(double t, const DarkStateDecayModel& model);

/// Closed-form d(t). Monotonically non-increasing, d(t_start) = p0.
double dark_state_decay_closed_form(double t, const DarkStateDecayModel& model);

namespace detail {
/// Exact antiderivative of cos^2(theta(t)) for the sigmoid pulse.
double cos2_theta_antiderivative(double t, const PulseProfile& pulse, double g);
} // namespace detail

/// Time at which the dark state reaches metastable overlap p for unit
/// signal coupling: t = t0 + T log(p|omega0| / sqrt(p(1-p)) - 1).
/// Throws std::domain_error when the log argument is not positive.
double metastable_overlap_time(const PulseProfile& pulse, double p);

/// Integration window for the writing process, defined by relative overlap
/// fractions. t_start is where cos^2(theta) has reached fraction p_g of its
/// best achievable value cos^2(theta(-inf)) = omega0^2/(omega0^2+g^2);
/// t_end is where sin^2(theta) = p_s. Both are closed-form inversions.
struct TimeWindow {
    double t_start = 0.0;
    double t_end = 0.0;
};

struct WindowPolicy {
    double p_g = 0.999;
    double p_s = 0.999;
};

TimeWindow window_times(const PulseProfile& pulse, double g, double p_g, double p_s);
TimeWindow window_times(const PulseProfile& pulse, double g, const WindowPolicy& policy);

} // namespace hbnqm
