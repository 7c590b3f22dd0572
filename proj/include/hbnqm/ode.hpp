#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace hbnqm {

/// Embedded explicit Runge-Kutta pair of order 5(4) (Dormand-Prince
/// coefficients, FSAL) with a standard step-size controller. Works on flat
/// complex state vectors; callers flatten whatever structure they evolve.
struct OdeOptions {
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    double max_step = 0.0; // 0 = span / 4
};

class EmbeddedRk54 {
public:
    using State = std::vector<std::complex<double>>;
    using Rhs = std::function<void(double t, const State& y, State& dydt)>;
    /// Called after every accepted step; may project/normalize y in place.
    using AcceptHook = std::function<void(double t, State& y)>;

    EmbeddedRk54(std::size_t dim, const OdeOptions& opts);

    /// Advance y from t_begin to exactly t_end. Throws NumericalError when
    /// the controller underflows the step size.
    void integrate(const Rhs& rhs, State& y, double t_begin, double t_end,
                   const AcceptHook& on_accept = {});

    std::size_t accepted_steps() const { return accepted_; }
    std::size_t rejected_steps() const { return rejected_; }

private:
    std::size_t dim_;
    OdeOptions opts_;
    std::size_t accepted_ = 0;
    std::size_t rejected_ = 0;
    State k_[7];
    State ytmp_, y5_, y4_;
};

} // namespace hbnqm
