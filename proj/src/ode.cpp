#include "hbnqm/ode.hpp"

#include <algorithm>
#include <cmath>

#include "hbnqm/errors.hpp"

namespace hbnqm {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// Error coefficients (5th-order solution minus embedded 4th-order one).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

} // namespace

EmbeddedRk54::EmbeddedRk54(std::size_t dim, const OdeOptions& opts) : dim_(dim), opts_(opts) {
    if (!(opts.rel_tol > 0.0) || !(opts.abs_tol > 0.0)) {
        throw std::invalid_argument("EmbeddedRk54: tolerances must be positive");
    }
    for (auto& k : k_) k.assign(dim_, {0.0, 0.0});
    ytmp_.assign(dim_, {0.0, 0.0});
    y5_.assign(dim_, {0.0, 0.0});
    y4_.assign(dim_, {0.0, 0.0});
}

void EmbeddedRk54::integrate(const Rhs& rhs, State& y, double t_begin, double t_end,
                             const AcceptHook& on_accept) {
    if (y.size() != dim_) throw std::invalid_argument("EmbeddedRk54: state dimension mismatch");
    if (!(t_end > t_begin)) {
        throw std::invalid_argument("EmbeddedRk54: t_end must exceed t_begin");
    }

    const double span = t_end - t_begin;
    const double hmax = opts_.max_step > 0.0 ? opts_.max_step : span / 4.0;
    double t = t_begin;
    double h = std::min(hmax, span / 100.0);
    bool first = true;

    while (t < t_end) {
        const double tiny = 1e-14 * std::max(1.0, std::abs(t));
        const double remaining = t_end - t;
        if (remaining <= tiny) break; // end reached within roundoff
        h = std::min(h, remaining);
        if (!(h > tiny)) {
            throw NumericalError("adaptive step size underflow at t = " + std::to_string(t));
        }

        if (first) { // FSAL seed
            rhs(t, y, k_[0]);
            first = false;
        }

        auto stage = [&](State& out, std::initializer_list<std::pair<double, int>> terms) {
            for (std::size_t i = 0; i < dim_; ++i) {
                std::complex<double> acc = y[i];
                for (const auto& [coef, ki] : terms) acc += h * coef * k_[ki][i];
                out[i] = acc;
            }
        };

        stage(ytmp_, {{a21, 0}});
        rhs(t + c2 * h, ytmp_, k_[1]);
        stage(ytmp_, {{a31, 0}, {a32, 1}});
        rhs(t + c3 * h, ytmp_, k_[2]);
        stage(ytmp_, {{a41, 0}, {a42, 1}, {a43, 2}});
        rhs(t + c4 * h, ytmp_, k_[3]);
        stage(ytmp_, {{a51, 0}, {a52, 1}, {a53, 2}, {a54, 3}});
        rhs(t + c5 * h, ytmp_, k_[4]);
        stage(ytmp_, {{a61, 0}, {a62, 1}, {a63, 2}, {a64, 3}, {a65, 4}});
        rhs(t + h, ytmp_, k_[5]);
        stage(y5_, {{b1, 0}, {b3, 2}, {b4, 3}, {b5, 4}, {b6, 5}});
        rhs(t + h, y5_, k_[6]);

        double err2 = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            const std::complex<double> ei =
                h * (e1 * k_[0][i] + e3 * k_[2][i] + e4 * k_[3][i] + e5 * k_[4][i] +
                     e6 * k_[5][i] + e7 * k_[6][i]);
            const double scale =
                opts_.abs_tol + opts_.rel_tol * std::max(std::abs(y[i]), std::abs(y5_[i]));
            const double r = std::abs(ei) / scale;
            err2 += r * r;
        }
        const double err = std::sqrt(err2 / static_cast<double>(dim_));

        if (!std::isfinite(err)) { // NaN/inf from the RHS: retry smaller
            ++rejected_;
            h *= 0.2;
            continue;
        }

        if (err <= 1.0) {
            t += h;
            y = y5_;
            k_[0] = k_[6]; // FSAL
            ++accepted_;
            if (on_accept) {
                on_accept(t, y);
                rhs(t, y, k_[0]); // hook may have projected the state
            }
        } else {
            ++rejected_;
        }

        const double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
        h = std::min(h, hmax);
    }
}

} // namespace hbnqm
