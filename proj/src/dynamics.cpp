#include "hbnqm/dynamics.hpp"

#include <cmath>
#include <sstream>

#include "hbnqm/errors.hpp"
#include "hbnqm/kernels.hpp"
#include "hbnqm/ode.hpp"
#include "hbnqm/parallel.hpp"

namespace hbnqm {

std::vector<JumpSpec> jump_operators(const LambdaSystemSpec& spec, const HilbertSpace& space) {
    spec.validate();
    std::vector<JumpSpec> jumps;
    for (const auto& [channel, rate] : spec.gammas) {
        if (rate > 0.0) {
            jumps.push_back({atomic_operator(channel.first, channel.second, space), rate});
        }
    }
    if (spec.kappa > 0.0) jumps.push_back({annihilation_operator(space), spec.kappa});
    return jumps;
}

void IntegrationConfig::validate() const {
    if (!(t_start < t_end)) {
        throw std::invalid_argument("IntegrationConfig: t_start must be < t_end");
    }
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
        throw std::invalid_argument("IntegrationConfig: tolerances must be positive");
    }
}

double Trajectory::population(std::size_t step, Level l, int photons) const {
    const std::size_t i = space.index(l, photons);
    return states.at(step)(i, i).real();
}

std::vector<std::vector<double>> Trajectory::populations() const {
    const std::size_t d = space.dim();
    std::vector<std::vector<double>> out(d, std::vector<double>(states.size()));
    for (std::size_t k = 0; k < states.size(); ++k)
        for (std::size_t b = 0; b < d; ++b) out[b][k] = states[k](b, b).real();
    return out;
}

ComplexMatrix lindblad_rhs(const ComplexMatrix& rho, const ComplexMatrix& hamiltonian,
                           const std::vector<JumpSpec>& jumps) {
    if (!rho.is_square() || rho.rows() != hamiltonian.rows() ||
        hamiltonian.rows() != hamiltonian.cols()) {
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    }
    ComplexMatrix drho = hamiltonian * rho;
    drho -= rho * hamiltonian;
    drho *= cplx(0.0, -1.0);
    for (const JumpSpec& jump : jumps) {
        if (jump.rate < 0.0) throw std::invalid_argument("lindblad_rhs: negative jump rate");
        if (jump.rate == 0.0) continue;
        if (jump.op.rows() != rho.rows() || jump.op.cols() != rho.cols()) {
            throw std::invalid_argument("lindblad_rhs: jump operator dimension mismatch");
        }
        const ComplexMatrix cdag = jump.op.adjoint();
        const ComplexMatrix m = cdag * jump.op; // C^dagger C up to the rate
        drho.add_scaled(cplx(jump.rate, 0.0), jump.op * rho * cdag);
        drho.add_scaled(cplx(-0.5 * jump.rate, 0.0), m * rho);
        drho.add_scaled(cplx(-0.5 * jump.rate, 0.0), rho * m);
    }
    return drho;
}

namespace {

/// Allocation-free master-equation RHS. Uses the non-Hermitian split
///   K(t) = H(t) - (i/2) sum_j C_j^dagger C_j,
///   drho = -i(K rho - rho K^dagger) + sum_j C_j rho C_j^dagger,
/// so each evaluation is 2 + 2*n_jumps kernel matmuls.
class MasterEquation {
public:
    MasterEquation(const LambdaSystemSpec& spec, const HilbertSpace& space)
        : spec_(spec), dim_(space.dim()) {
        drive_ = atomic_operator(Level::s, Level::e, space);
        drive_ += atomic_operator(Level::e, Level::s, space);

        ComplexMatrix k_const(dim_, dim_);
        const ComplexMatrix a = annihilation_operator(space);
        const ComplexMatrix exchange = atomic_operator(Level::e, Level::g, space) * a;
        k_const.add_scaled(cplx(spec.g, 0.0), exchange);
        k_const.add_scaled(cplx(spec.g, 0.0), exchange.adjoint());
        if (spec.delta_one != 0.0)
            k_const.add_scaled(cplx(spec.delta_one, 0.0),
                               atomic_operator(Level::e, Level::e, space));
        if (spec.delta_two != 0.0)
            k_const.add_scaled(cplx(spec.delta_two, 0.0),
                               atomic_operator(Level::s, Level::s, space));

        for (const JumpSpec& jump : jump_operators(spec, space)) {
            Channel ch;
            ch.c = jump.op;
            ch.c *= cplx(std::sqrt(jump.rate), 0.0);
            ch.cdag = ch.c.adjoint();
            channels_.push_back(std::move(ch));
            k_const.add_scaled(cplx(0.0, -0.5),
                               channels_.back().cdag * channels_.back().c);
        }
        k_const_ = k_const;
        k_const_adj_ = k_const.adjoint();

        k_ = ComplexMatrix(dim_, dim_);
        k_adj_ = ComplexMatrix(dim_, dim_);
        scratch1_ = ComplexMatrix(dim_, dim_);
        scratch2_ = ComplexMatrix(dim_, dim_);
    }

    std::size_t dim() const { return dim_; }

    void operator()(double t, const EmbeddedRk54::State& y, EmbeddedRk54::State& dydt) {
        const auto& kern = kernels::active();
        const double omega = spec_.control(t);

        k_ = k_const_;
        k_.add_scaled(cplx(omega, 0.0), drive_);
        k_adj_ = k_const_adj_;
        k_adj_.add_scaled(cplx(omega, 0.0), drive_);

        // dydt = -i K rho
        kern.matmul(k_.data().data(), y.data(), scratch1_.data().data(), dim_, dim_, dim_);
        for (std::size_t i = 0; i < dim_ * dim_; ++i)
            dydt[i] = cplx(0.0, -1.0) * scratch1_.data()[i];
        // dydt += +i rho K^dagger
        kern.matmul(y.data(), k_adj_.data().data(), scratch1_.data().data(), dim_, dim_, dim_);
        kern.axpy(cplx(0.0, 1.0), scratch1_.data().data(), dydt.data(), dim_ * dim_);
        // dydt += C rho C^dagger per channel
        for (const Channel& ch : channels_) {
            kern.matmul(ch.c.data().data(), y.data(), scratch1_.data().data(), dim_, dim_, dim_);
            kern.matmul(scratch1_.data().data(), ch.cdag.data().data(), scratch2_.data().data(),
                        dim_, dim_, dim_);
            kern.axpy(cplx(1.0, 0.0), scratch2_.data().data(), dydt.data(), dim_ * dim_);
        }
    }

private:
    struct Channel {
        ComplexMatrix c;
        ComplexMatrix cdag;
    };

    LambdaSystemSpec spec_;
    std::size_t dim_;
    ComplexMatrix drive_;
    ComplexMatrix k_const_, k_const_adj_;
    std::vector<Channel> channels_;
    ComplexMatrix k_, k_adj_, scratch1_, scratch2_;
};

/// Hermitize in place and renormalize the trace; drift beyond 1e-9 aborts.
void project_physical(EmbeddedRk54::State& y, std::size_t dim, double t) {
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cplx upper = y[i * dim + j];
            const cplx lower = y[j * dim + i];
            const cplx sym = 0.5 * (upper + std::conj(lower));
            y[i * dim + j] = sym;
            y[j * dim + i] = std::conj(sym);
        }
        y[i * dim + i] = cplx(y[i * dim + i].real(), 0.0);
    }
    double tr = 0.0;
    for (std::size_t i = 0; i < dim; ++i) tr += y[i * dim + i].real();
    const double drift = std::abs(tr - 1.0);
    if (drift >= 1e-9) {
        std::ostringstream msg;
        msg << "trace drift " << drift << " at t = " << t << " exceeds 1e-9";
        throw NumericalError(msg.str());
    }
    const double inv = 1.0 / tr;
    for (std::size_t i = 0; i < dim * dim; ++i) y[i] *= inv;
}

ComplexMatrix state_to_matrix(const EmbeddedRk54::State& y, std::size_t dim) {
    ComplexMatrix m(dim, dim);
    std::copy(y.begin(), y.end(), m.data().begin());
    return m;
}

} // namespace

Trajectory evolve(const DensityMatrix& rho0, const LambdaSystemSpec& spec,
                  const IntegrationConfig& cfg) {
    cfg.validate();
    const HilbertSpace space = rho0.space();
    const std::size_t dim = space.dim();

    MasterEquation master(spec, space);
    OdeOptions opts{cfg.rel_tol, cfg.abs_tol, cfg.max_step};
    EmbeddedRk54 stepper(dim * dim, opts);

    EmbeddedRk54::State y(dim * dim);
    std::copy(rho0.matrix().data().begin(), rho0.matrix().data().end(), y.begin());

    Trajectory traj;
    traj.space = space;
    traj.times.push_back(cfg.t_start);
    traj.states.push_back(rho0.matrix());

    auto rhs = [&master](double t, const EmbeddedRk54::State& state,
                         EmbeddedRk54::State& dstate) { master(t, state, dstate); };
    auto hook = [dim](double t, EmbeddedRk54::State& state) { project_physical(state, dim, t); };

    if (cfg.sample_count < 2) {
        stepper.integrate(rhs, y, cfg.t_start, cfg.t_end, hook);
        traj.times.push_back(cfg.t_end);
        traj.states.push_back(state_to_matrix(y, dim));
        return traj;
    }

    const std::size_t samples = cfg.sample_count;
    double t = cfg.t_start;
    for (std::size_t i = 1; i < samples; ++i) {
        const double ti =
            cfg.t_start + (cfg.t_end - cfg.t_start) * static_cast<double>(i) /
                              static_cast<double>(samples - 1);
        stepper.integrate(rhs, y, t, ti, hook);
        t = ti;
        traj.times.push_back(ti);
        traj.states.push_back(state_to_matrix(y, dim));
    }
    return traj;
}

double writing_efficiency(const LambdaSystemSpec& spec, const IntegrationConfig& cfg,
                          const HilbertSpace& space) {
    const DensityMatrix rho0 =
        DensityMatrix::from_pure(StateVector::basis_state(space, Level::g, 1));
    const Trajectory traj = evolve(rho0, spec, cfg);
    const std::size_t i = space.index(Level::s, 0);
    return traj.final_state()(i, i).real();
}

KappaMaxResult find_kappa_max(const PulseProfile& pulse, double g, double survival_threshold,
                              const WindowPolicy& policy, double p0) {
    if (!(survival_threshold > 0.0 && survival_threshold < 1.0)) {
        throw std::invalid_argument("find_kappa_max: survival threshold must be in (0, 1)");
    }
    const TimeWindow window = window_times(pulse, g, policy);

    auto survival = [&](double k) {
        const auto model = DarkStateDecayModel::with_initial(k, pulse, g, p0, window.t_start);
        return dark_state_decay_closed_form(window.t_end, model);
    };

    if (survival(0.0) < survival_threshold) {
        std::ostringstream msg;
        msg << "find_kappa_max: threshold " << survival_threshold
            << " unreachable even at k = 0 (survival " << survival(0.0) << ")";
        throw NumericalError(msg.str());
    }

    double lo = 0.0;
    double hi = 0.1;
    while (survival(hi) >= survival_threshold) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) throw NumericalError("find_kappa_max: no finite bracket found");
    }
    while ((hi - lo) > 1e-4 * hi) {
        const double mid = 0.5 * (lo + hi);
        (survival(mid) >= survival_threshold ? lo : hi) = mid;
    }

    KappaMaxResult out;
    out.kappa_max = 0.5 * (lo + hi);
    out.window = window;
    out.policy = policy;
    out.survival_threshold = survival_threshold;
    out.p0 = p0;
    return out;
}

SweepResult detuning_hwhm(const LambdaSystemSpec& base, const IntegrationConfig& cfg,
                          const DetuningSweepConfig& sweep) {
    if (!(sweep.delta_step > 0.0) || !(sweep.delta_max > 0.0)) {
        throw std::invalid_argument("detuning_hwhm: grid must have positive extent and step");
    }
    const std::size_t n = static_cast<std::size_t>(std::floor(sweep.delta_max / sweep.delta_step + 1e-9)) + 1;

    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i) grid[i] = static_cast<double>(i) * sweep.delta_step;

    std::vector<double> eff(n);
    parallel_for_index(n, sweep.jobs, [&](std::size_t i) {
        LambdaSystemSpec spec = base;
        spec.delta_one = grid[i];
        eff[i] = writing_efficiency(spec, cfg);
    });

    if (!(eff[0] > 0.0)) throw NumericalError("detuning_hwhm: zero-detuning efficiency is zero");
    const double half = 0.5 * eff[0];

    std::optional<double> hwhm;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (eff[i] >= half && eff[i + 1] < half) {
            const double frac = (eff[i] - half) / (eff[i] - eff[i + 1]);
            hwhm = grid[i] + frac * (grid[i + 1] - grid[i]);
            break;
        }
    }
    if (!hwhm) {
        std::ostringstream msg;
        msg << "detuning_hwhm: half maximum " << half << " not bracketed by grid [0, "
            << sweep.delta_max << "] step " << sweep.delta_step;
        throw NumericalError(msg.str());
    }

    SweepResult out;
    out.derived = *hwhm;
    out.convention = "hwhm: first downward crossing of eff(0)/2, linear interpolation";
    if (sweep.both_signs) {
        std::vector<double> eff_neg(n);
        parallel_for_index(n, sweep.jobs, [&](std::size_t i) {
            if (i == 0) {
                eff_neg[0] = eff[0];
                return;
            }
            LambdaSystemSpec spec = base;
            spec.delta_one = -grid[i];
            eff_neg[i] = writing_efficiency(spec, cfg);
        });
        for (std::size_t i = n; i-- > 1;) {
            out.parameter.push_back(-grid[i]);
            out.efficiency.push_back(eff_neg[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        out.parameter.push_back(grid[i]);
        out.efficiency.push_back(eff[i]);
    }
    return out;
}

} // namespace hbnqm
