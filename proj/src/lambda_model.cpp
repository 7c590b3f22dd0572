#include "hbnqm/lambda_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hbnqm {

PulseProfile::PulseProfile(double omega0_, double T_, double t0_)
    : omega0(omega0_), T(T_), t0(t0_) {
    if (!(omega0 > 0.0)) {
        throw std::invalid_argument("PulseProfile: omega0 must be > 0, got " +
                                    std::to_string(omega0));
    }
    if (!(T > 0.0)) {
        throw std::invalid_argument("PulseProfile: T must be > 0, got " + std::to_string(T));
    }
}

double control_pulse(double t, const PulseProfile& pulse) {
    // exp overflow at very late times cleanly yields 0 through the division.
    return pulse.omega0 / (1.0 + std::exp((t - pulse.t0) / pulse.T));
}

double mixing_angle(double g, double omega) {
    if (g < 0.0 || omega < 0.0) {
        throw std::invalid_argument("mixing_angle: couplings must be non-negative");
    }
    return std::atan2(g, omega);
}

StateVector dark_state(double theta, const HilbertSpace& space) {
    std::vector<cplx> amps(space.dim(), cplx(0.0, 0.0));
    amps[space.index(Level::g, 1)] = std::cos(theta);
    amps[space.index(Level::s, 0)] = -std::sin(theta);
    return StateVector(space, std::move(amps));
}

void LambdaSystemSpec::validate() const {
    if (g < 0.0) throw std::invalid_argument("LambdaSystemSpec: g must be >= 0");
    if (kappa < 0.0) throw std::invalid_argument("LambdaSystemSpec: kappa must be >= 0");
    for (const auto& [channel, rate] : gammas) {
        if (rate < 0.0) {
            throw std::invalid_argument(std::string("LambdaSystemSpec: gamma_") +
                                        level_char(channel.first) + level_char(channel.second) +
                                        " must be >= 0");
        }
    }
}

ComplexMatrix build_hamiltonian(double t, const LambdaSystemSpec& spec,
                                const HilbertSpace& space) {
    spec.validate();
    const double omega = spec.control(t);

    ComplexMatrix h = atomic_operator(Level::s, Level::e, space);
    h += atomic_operator(Level::e, Level::s, space);
    h *= cplx(omega, 0.0);

    const ComplexMatrix a = annihilation_operator(space);
    const ComplexMatrix exchange = atomic_operator(Level::e, Level::g, space) * a;
    h.add_scaled(cplx(spec.g, 0.0), exchange);
    h.add_scaled(cplx(spec.g, 0.0), exchange.adjoint());

    if (spec.delta_one != 0.0)
        h.add_scaled(cplx(spec.delta_one, 0.0), atomic_operator(Level::e, Level::e, space));
    if (spec.delta_two != 0.0)
        h.add_scaled(cplx(spec.delta_two, 0.0), atomic_operator(Level::s, Level::s, space));
    return h;
}

DarkStateDecayModel DarkStateDecayModel::with_initial(double k, const PulseProfile& pulse,
                                                      double g, double p0, double t_start) {
    if (k < 0.0) throw std::invalid_argument("DarkStateDecayModel: k must be >= 0");
    if (!(p0 > 0.0 && p0 <= 1.0)) {
        throw std::invalid_argument("DarkStateDecayModel: p0 must be in (0, 1], got " +
                                    std::to_string(p0));
    }
    DarkStateDecayModel m;
    m.k = k;
    m.pulse = pulse;
    m.g = g;
    m.p0 = p0;
    m.t_start = t_start;
    m.c1 = p0 * std::exp(k * detail::cos2_theta_antiderivative(t_start, pulse, g));
    return m;
}

double effective_cavity_decay(double t, const DarkStateDecayModel& model) {
    const double theta = mixing_angle(model.g, control_pulse(t, model.pulse));
    const double c = std::cos(theta);
    return model.k * c * c;
}

namespace detail {

double cos2_theta_antiderivative(double t, const PulseProfile& pulse, double g) {
    // With u = exp((t - t0)/T):
    //   cos^2(theta) = omega0^2 / (omega0^2 + g^2 (1+u)^2)
    //   integral dt  = T omega0^2/(omega0^2+g^2) *
    //                  [ln u - ln(g^2(1+u)^2 + omega0^2)/2
    //                        - (g/omega0) atan(g(1+u)/omega0)]
    // g = 0 degenerates to cos^2 = 1, antiderivative t.
    if (g == 0.0) return t;
    const double w0 = pulse.omega0;
    const double x = std::min((t - pulse.t0) / pulse.T, 350.0); // keep (1+u)^2 finite
    const double u = std::exp(x);
    const double c = g * g + w0 * w0;
    const double term = x - 0.5 * std::log(g * g * (1.0 + u) * (1.0 + u) + w0 * w0) -
                        (g / w0) * std::atan(g * (1.0 + u) / w0);
    return pulse.T * (w0 * w0 / c) * term;
}

} // namespace detail

double dark_state_decay_closed_form(double t, const DarkStateDecayModel& model) {
    if (model.k == 0.0) return model.p0;
    const double exponent =
        model.k * (detail::cos2_theta_antiderivative(t, model.pulse, model.g) -
                   detail::cos2_theta_antiderivative(model.t_start, model.pulse, model.g));
    return model.p0 * std::exp(-exponent);
}

double metastable_overlap_time(const PulseProfile& pulse, double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::domain_error("metastable_overlap_time: p must be in (0, 1), got " +
                                std::to_string(p));
    }
    const double arg = p * std::abs(pulse.omega0) / std::sqrt(p * (1.0 - p)) - 1.0;
    if (!(arg > 0.0)) {
        std::ostringstream msg;
        msg << "metastable_overlap_time: log argument " << arg << " not positive (p = " << p
            << ", omega0 = " << pulse.omega0 << ")";
        throw std::domain_error(msg.str());
    }
    return pulse.t0 + pulse.T * std::log(arg);
}

TimeWindow window_times(const PulseProfile& pulse, double g, double p_g, double p_s) {
    if (!(p_g > 0.0 && p_g < 1.0) || !(p_s > 0.0 && p_s < 1.0)) {
        std::ostringstream msg;
        msg << "window_times: overlap fractions must be in (0, 1), got p_g = " << p_g
            << ", p_s = " << p_s;
        throw std::domain_error(msg.str());
    }
    if (!(g > 0.0)) throw std::domain_error("window_times: g must be > 0");

    const double w0 = pulse.omega0;

    // cos^2(theta(t_start)) = p_g * omega0^2/(omega0^2+g^2) inverted for
    // u = exp((t-t0)/T): (1+u)^2 = ((omega0^2+g^2)/p_g - omega0^2)/g^2.
    const double rhs = ((w0 * w0 + g * g) / p_g - w0 * w0) / (g * g);
    const double u_start = std::sqrt(rhs) - 1.0;
    if (!(u_start > 0.0)) {
        std::ostringstream msg;
        msg << "window_times: ground overlap fraction p_g = " << p_g
            << " is not reachable at finite time";
        throw std::domain_error(msg.str());
    }

    // sin^2(theta(t_end)) = p_s: (1+u) = (omega0/g) sqrt(p_s/(1-p_s)).
    const double u_end = (w0 / g) * std::sqrt(p_s / (1.0 - p_s)) - 1.0;
    if (!(u_end > 0.0)) {
        std::ostringstream msg;
        msg << "window_times: metastable overlap p_s = " << p_s
            << " is not reachable (omega0 = " << w0 << ", g = " << g << ")";
        throw std::domain_error(msg.str());
    }

    TimeWindow w;
    w.t_start = pulse.t0 + pulse.T * std::log(u_start);
    w.t_end = pulse.t0 + pulse.T * std::log(u_end);
    if (!(w.t_start < w.t_end)) {
        std::ostringstream msg;
        msg << "window_times: degenerate window [" << w.t_start << ", " << w.t_end
            << "] from p_g = " << p_g << ", p_s = " << p_s;
        throw std::domain_error(msg.str());
    }
    return w;
}

TimeWindow window_times(const PulseProfile& pulse, double g, const WindowPolicy& policy) {
    return window_times(pulse, g, policy.p_g, policy.p_s);
}

} // namespace hbnqm
