#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hbnqm/lambda_model.hpp"

using namespace hbnqm;

namespace {

/// Test-local fixed-step RK4 for d'(t) = -k cos^2(theta(t)) d(t); kept
/// independent of the closed form it checks.
double integrate_decay_rk4(double k, const PulseProfile& pulse, double g, double p0,
                           double t_start, double t_end, int steps) {
    auto rate = [&](double t) {
        const double om = control_pulse(t, pulse);
        const double c2 = om * om / (om * om + g * g);
        return -k * c2;
    };
    double d = p0;
    const double h = (t_end - t_start) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = t_start + i * h;
        const double k1 = rate(t) * d;
        const double k2 = rate(t + 0.5 * h) * (d + 0.5 * h * k1);
        const double k3 = rate(t + 0.5 * h) * (d + 0.5 * h * k2);
        const double k4 = rate(t + h) * (d + h * k3);
        d += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return d;
}

} // namespace

TEST_CASE("control pulse: midpoint, asymptote, frozen point") {
    const PulseProfile pulse(10.0, 2.0);
    CHECK(control_pulse(0.0, pulse) == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(control_pulse(-1e4, pulse) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(control_pulse(2.0, pulse) == doctest::Approx(2.689414213699951).epsilon(1e-14));
    CHECK(control_pulse(1e9, pulse) == 0.0);

    // strictly decreasing
    double prev = control_pulse(-20.0, pulse);
    for (double t = -19.5; t < 20.0; t += 0.5) {
        const double cur = control_pulse(t, pulse);
        CHECK(cur < prev);
        prev = cur;
    }

    CHECK_THROWS_AS(PulseProfile(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(PulseProfile(10.0, 0.0), std::invalid_argument);
}

TEST_CASE("mixing angle endpoints and limit convention") {
    CHECK(mixing_angle(1.0, 1.0) == doctest::Approx(M_PI / 4).epsilon(1e-14));
    CHECK(mixing_angle(1.0, 1e12) == doctest::Approx(0.0).epsilon(1e-11));
    CHECK(mixing_angle(1.0, 0.0) == doctest::Approx(M_PI / 2).epsilon(1e-14));
    CHECK_THROWS_AS(mixing_angle(-1.0, 1.0), std::invalid_argument);
}

TEST_CASE("dark state endpoints, support and norm") {
    const HilbertSpace space(1);
    const StateVector at_zero = dark_state(0.0, space);
    CHECK(std::abs(at_zero.amplitude(Level::g, 1)) == doctest::Approx(1.0));

    const StateVector at_half_pi = dark_state(M_PI / 2, space);
    CHECK(std::abs(at_half_pi.amplitude(Level::s, 0)) == doctest::Approx(1.0));

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> angles(0.0, M_PI / 2);
    for (int i = 0; i < 10; ++i) {
        const StateVector psi = dark_state(angles(rng), space);
        CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
        for (Level l : {Level::g, Level::e, Level::s})
            for (int n = 0; n <= 1; ++n) {
                const bool support = (l == Level::g && n == 1) || (l == Level::s && n == 0);
                if (!support) CHECK(std::abs(psi.amplitude(l, n)) == 0.0);
            }
    }
}

TEST_CASE("hamiltonian: empty case and matrix elements") {
    const HilbertSpace space(1);
    LambdaSystemSpec spec;
    spec.g = 0.0;
    spec.pulse = PulseProfile(1e-12, 1.0); // omega ~ 0
    ComplexMatrix h = build_hamiltonian(0.0, spec, space);
    CHECK(h.max_abs() < 1e-12);

    spec.g = 1.3;
    spec.pulse = PulseProfile(10.0, 2.0);
    h = build_hamiltonian(0.0, spec, space);
    CHECK(h.is_hermitian(1e-14));
    CHECK(h(space.index(Level::e, 0), space.index(Level::g, 1)).real() ==
          doctest::Approx(1.3).epsilon(1e-14));
}

TEST_CASE("hamiltonian annihilates the dark state at zero detuning") {
    const HilbertSpace space(1);
    LambdaSystemSpec spec;
    spec.g = 1.0;
    spec.pulse = PulseProfile(10.0, 2.0);

    std::mt19937 rng(5);
    std::uniform_real_distribution<double> times(-8.0, 12.0);
    for (int i = 0; i < 20; ++i) {
        const double t = times(rng);
        const double theta = mixing_angle(spec.g, control_pulse(t, spec.pulse));
        const StateVector dark = dark_state(theta, space);
        const ComplexMatrix h = build_hamiltonian(t, spec, space);
        const auto image = h * dark.amplitudes();
        double norm = 0.0;
        for (const cplx& v : image) norm += std::norm(v);
        CHECK(std::sqrt(norm) < 1e-10);
    }
}

TEST_CASE("hamiltonian commutes with the excitation number operator") {
    const HilbertSpace space(2);
    LambdaSystemSpec spec;
    spec.g = 0.7;
    spec.pulse = PulseProfile(10.0, 2.0);
    spec.delta_one = 1.1;
    spec.delta_two = -0.4;
    const ComplexMatrix h = build_hamiltonian(1.0, spec, space);
    const ComplexMatrix n_exc = excitation_number_operator(space);
    CHECK(commutator(h, n_exc).max_abs() < 1e-12);
}

TEST_CASE("effective cavity decay: zero loss, asymptotes, identity") {
    const PulseProfile pulse(10.0, 2.0);
    const auto zero = DarkStateDecayModel::with_initial(0.0, pulse, 1.0, 0.999, -6.0);
    for (double t : {-5.0, 0.0, 5.0}) CHECK(effective_cavity_decay(t, zero) == 0.0);

    const auto model = DarkStateDecayModel::with_initial(0.06, pulse, 1.0, 0.999, -6.0);
    CHECK(effective_cavity_decay(1e4, model) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(effective_cavity_decay(-1e3, model) ==
          doctest::Approx(0.06 * 100.0 / 101.0).epsilon(1e-12));

    // k cos^2(mixing_angle(g, pulse(t))) exactly, random draws
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ts(-10.0, 12.0);
    std::uniform_real_distribution<double> ks(0.0, 0.5);
    std::uniform_real_distribution<double> gs(0.2, 3.0);
    for (int i = 0; i < 25; ++i) {
        const double g = gs(rng);
        const auto m = DarkStateDecayModel::with_initial(ks(rng), pulse, g, 0.999, -6.0);
        const double t = ts(rng);
        const double theta = mixing_angle(g, control_pulse(t, pulse));
        CHECK(effective_cavity_decay(t, m) ==
              doctest::Approx(m.k * std::cos(theta) * std::cos(theta)).epsilon(1e-15));
    }
}

TEST_CASE("closed-form decay: no-loss case and initial condition") {
    const PulseProfile pulse(10.0, 2.0);
    const auto no_loss = DarkStateDecayModel::with_initial(0.0, pulse, 1.0, 0.999, -6.0);
    for (double t : {-6.0, 0.0, 11.5}) CHECK(dark_state_decay_closed_form(t, no_loss) == 0.999);

    const auto model = DarkStateDecayModel::with_initial(0.06, pulse, 1.0, 0.999, -6.018297903);
    CHECK(dark_state_decay_closed_form(model.t_start, model) ==
          doctest::Approx(0.999).epsilon(1e-14));

    // monotonically non-increasing
    double prev = 1.0;
    for (double t = model.t_start; t < 12.0; t += 0.25) {
        const double d = dark_state_decay_closed_form(t, model);
        CHECK(d <= prev + 1e-15);
        CHECK(d > 0.0);
        prev = d;
    }
}

TEST_CASE("closed-form decay matches the independent ODE oracle") {
    const PulseProfile pulse(10.0, 2.0);
    const double t_start = -6.018297903;
    const double t_end = 11.505587213;
    for (double k : {0.02, 0.06, 0.2}) {
        const auto model = DarkStateDecayModel::with_initial(k, pulse, 1.0, 0.999, t_start);
        double max_dev = 0.0;
        for (int i = 1; i <= 8; ++i) {
            const double t = t_start + (t_end - t_start) * i / 8.0;
            const double oracle = integrate_decay_rk4(k, pulse, 1.0, 0.999, t_start, t, 40000);
            max_dev =
                std::max(max_dev, std::abs(oracle - dark_state_decay_closed_form(t, model)));
        }
        CHECK(max_dev <= 1e-6);
    }
}

TEST_CASE("closed-form decay satisfies its own differential equation") {
    const PulseProfile pulse(10.0, 2.0);
    const auto model = DarkStateDecayModel::with_initial(0.06, pulse, 1.0, 0.999, -6.0);
    const double h = 1e-5;
    for (double t : {-4.0, 0.0, 3.0, 8.0}) {
        const double deriv = (dark_state_decay_closed_form(t + h, model) -
                              dark_state_decay_closed_form(t - h, model)) /
                             (2.0 * h);
        const double expected =
            -effective_cavity_decay(t, model) * dark_state_decay_closed_form(t, model);
        CHECK(deriv == doctest::Approx(expected).epsilon(1e-8));
    }
}

TEST_CASE("decay exponent is invariant under the joint rescaling") {
    // {k -> a k, t -> t/a, T -> T/a} with g/omega0 fixed leaves the
    // exponent log(d/p0) unchanged.
    const double alpha = 3.7;
    const PulseProfile pulse(10.0, 2.0);
    const PulseProfile scaled(10.0, 2.0 / alpha);
    const double t_start = -6.0;
    const auto base = DarkStateDecayModel::with_initial(0.06, pulse, 1.0, 0.999, t_start);
    const auto resc =
        DarkStateDecayModel::with_initial(0.06 * alpha, scaled, 1.0, 0.999, t_start / alpha);
    for (double t : {-2.0, 1.0, 6.0, 11.0}) {
        const double e1 = std::log(dark_state_decay_closed_form(t, base) / 0.999);
        const double e2 = std::log(dark_state_decay_closed_form(t / alpha, resc) / 0.999);
        CHECK(e1 == doctest::Approx(e2).epsilon(1e-9));
    }
}

TEST_CASE("metastable overlap time: frozen value, unit case, domain error") {
    CHECK(metastable_overlap_time(PulseProfile(10.0, 2.0), 0.999) ==
          doctest::Approx(11.50558721349121).epsilon(1e-10));
    // p such that the log argument collapses to 1 gives exactly t0
    CHECK(metastable_overlap_time(PulseProfile(2.0, 1.0), 0.5) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK_THROWS_AS(metastable_overlap_time(PulseProfile(0.5, 2.0), 0.5), std::domain_error);
    CHECK_THROWS_AS(metastable_overlap_time(PulseProfile(10.0, 2.0), 1.0), std::domain_error);
}

TEST_CASE("window times: closed-form inversion and policies") {
    const PulseProfile pulse(10.0, 2.0);
    const TimeWindow w = window_times(pulse, 1.0, 0.999, 0.999);
    CHECK(w.t_start == doctest::Approx(-6.018297902990958).epsilon(1e-12));
    // coincides with the metastable overlap time at unit coupling
    CHECK(w.t_end == doctest::Approx(11.50558721349121).epsilon(1e-12));
    CHECK(w.t_start < w.t_end);

    // the window inverts the angle exactly
    const double cos2_start = [&] {
        const double om = control_pulse(w.t_start, pulse);
        return om * om / (om * om + 1.0);
    }();
    CHECK(cos2_start == doctest::Approx(0.999 * 100.0 / 101.0).epsilon(1e-12));
    const double sin2_end = [&] {
        const double om = control_pulse(w.t_end, pulse);
        return 1.0 / (om * om + 1.0);
    }();
    CHECK(sin2_end == doctest::Approx(0.999).epsilon(1e-12));

    CHECK_THROWS_AS(window_times(pulse, 1.0, 1.0, 0.999), std::domain_error);
    // infeasible metastable overlap for a weak pulse
    CHECK_THROWS_AS(window_times(PulseProfile(0.5, 2.0), 1.0, 0.9, 0.5), std::domain_error);

    // monotone: larger p_s pushes t_end later
    double prev = window_times(pulse, 1.0, 0.999, 0.9).t_end;
    for (double ps : {0.95, 0.99, 0.999}) {
        const double cur = window_times(pulse, 1.0, 0.999, ps).t_end;
        CHECK(cur > prev);
        prev = cur;
    }
}

TEST_CASE("pulse midpoint shift translates windows rigidly") {
    const PulseProfile base(10.0, 2.0);
    const PulseProfile shifted(10.0, 2.0, 4.5);
    const TimeWindow w0 = window_times(base, 1.0, 0.999, 0.999);
    const TimeWindow w1 = window_times(shifted, 1.0, 0.999, 0.999);
    CHECK(w1.t_start - w0.t_start == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(w1.t_end - w0.t_end == doctest::Approx(4.5).epsilon(1e-12));
    CHECK(control_pulse(4.5, shifted) == doctest::Approx(5.0).epsilon(1e-14));
}
