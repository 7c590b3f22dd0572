// Cyclic complex Jacobi. Each rotation zeroes one off-diagonal pair with a
// unitary built from a real angle plus the phase of the target element.

#include "hbnqm/hermitian_eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hbnqm {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double s = 0.0;
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) s += std::norm(a(p, q));
    return std::sqrt(2.0 * s);
}

} // namespace

EigenDecomposition eigen_hermitian(const ComplexMatrix& input) {
    if (!input.is_square()) throw std::invalid_argument("eigen_hermitian: matrix not square");
    if (!input.is_hermitian(1e-8)) {
        throw std::invalid_argument("eigen_hermitian: matrix not Hermitian within 1e-8");
    }

    const std::size_t n = input.rows();
    ComplexMatrix a = input.hermitized();
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(a.frobenius_norm(), 1e-300);
    const double target = 1e-15 * scale;
    const int max_sweeps = 80;

    for (int sweep = 0; sweep < max_sweeps && offdiag_norm(a) > target; ++sweep) {
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double m = std::abs(apq);
                if (m <= 1e-300) continue;
                const cplx phase = apq / m;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * m);
                const double t = (tau >= 0.0) ? -1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                              : 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // A <- U^dagger A U, touching only rows/columns p and q.
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx arp = a(r, p);
                    const cplx arq = a(r, q);
                    a(r, p) = c * arp + s * std::conj(phase) * arq;
                    a(r, q) = -s * phase * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const cplx apr = a(p, r);
                    const cplx aqr = a(q, r);
                    a(p, r) = c * apr + s * phase * aqr;
                    a(q, r) = -s * std::conj(phase) * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t r = 0; r < n; ++r) {
                    const cplx vrp = v(r, p);
                    const cplx vrq = v(r, q);
                    v(r, p) = c * vrp + s * std::conj(phase) * vrq;
                    v(r, q) = -s * phase * vrp + c * vrq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = a(order[j], order[j]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& a) {
    return eigen_hermitian(a).values.front();
}

} // namespace hbnqm
