#include "hbnqm/qops.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "hbnqm/hermitian_eigen.hpp"

namespace hbnqm {

char level_char(Level l) {
    switch (l) {
        case Level::g: return 'g';
        case Level::e: return 'e';
        case Level::s: return 's';
    }
    throw std::invalid_argument("level_char: bad level");
}

Level level_from_char(char c) {
    switch (c) {
        case 'g': return Level::g;
        case 'e': return Level::e;
        case 's': return Level::s;
        default:
            throw std::invalid_argument(std::string("unknown level label '") + c +
                                        "' (expected g, e or s)");
    }
}

HilbertSpace::HilbertSpace(int cutoff) : photon_cutoff(cutoff) {
    if (cutoff < 1) {
        throw std::invalid_argument("HilbertSpace: photon cutoff must be >= 1, got " +
                                    std::to_string(cutoff));
    }
}

std::size_t HilbertSpace::index(Level l, int photons) const {
    if (photons < 0 || photons > photon_cutoff) {
        throw std::invalid_argument("HilbertSpace::index: photon number " +
                                    std::to_string(photons) + " outside [0, " +
                                    std::to_string(photon_cutoff) + "]");
    }
    return static_cast<std::size_t>(l) * (photon_cutoff + 1) + photons;
}

std::vector<std::string> HilbertSpace::basis_labels() const {
    std::vector<std::string> out;
    out.reserve(dim());
    for (Level l : {Level::g, Level::e, Level::s})
        for (int n = 0; n <= photon_cutoff; ++n)
            out.push_back(std::string(1, level_char(l)) + std::to_string(n));
    return out;
}

StateVector::StateVector(HilbertSpace space, std::vector<cplx> amplitudes)
    : space_(space), amps_(std::move(amplitudes)) {
    if (amps_.size() != space_.dim()) {
        throw std::invalid_argument("StateVector: amplitude count " +
                                    std::to_string(amps_.size()) + " != space dimension " +
                                    std::to_string(space_.dim()));
    }
    double n2 = 0.0;
    for (const cplx& a : amps_) n2 += std::norm(a);
    if (n2 <= 0.0) throw std::invalid_argument("StateVector: zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (cplx& a : amps_) a *= inv;
}

StateVector StateVector::basis_state(const HilbertSpace& space, Level l, int photons) {
    std::vector<cplx> amps(space.dim(), cplx(0.0, 0.0));
    amps[space.index(l, photons)] = 1.0;
    return StateVector(space, std::move(amps));
}

cplx StateVector::amplitude(Level l, int photons) const {
    return amps_[space_.index(l, photons)];
}

double StateVector::norm() const {
    double n2 = 0.0;
    for (const cplx& a : amps_) n2 += std::norm(a);
    return std::sqrt(n2);
}

DensityMatrix::DensityMatrix(HilbertSpace space, ComplexMatrix matrix)
    : space_(space), mat_(std::move(matrix)) {
    if (mat_.rows() != space_.dim() || mat_.cols() != space_.dim()) {
        throw std::invalid_argument("DensityMatrix: matrix is " + std::to_string(mat_.rows()) +
                                    "x" + std::to_string(mat_.cols()) + ", space dimension is " +
                                    std::to_string(space_.dim()));
    }
    if (!mat_.is_hermitian(1e-10)) {
        throw std::invalid_argument("DensityMatrix: not Hermitian within 1e-10");
    }
    const cplx tr = mat_.trace();
    if (std::abs(tr - cplx(1.0, 0.0)) > 1e-9) {
        throw std::invalid_argument("DensityMatrix: trace deviates from 1 by more than 1e-9");
    }
}

DensityMatrix DensityMatrix::from_pure(const StateVector& psi) {
    const std::size_t d = psi.space().dim();
    ComplexMatrix m(d, d);
    const auto amps = psi.amplitudes();
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) m(i, j) = amps[i] * std::conj(amps[j]);
    return DensityMatrix(psi.space(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(const HilbertSpace& space) {
    const std::size_t d = space.dim();
    ComplexMatrix m = ComplexMatrix::identity(d);
    m *= cplx(1.0 / static_cast<double>(d), 0.0);
    return DensityMatrix(space, std::move(m));
}

double DensityMatrix::population(Level l, int photons) const {
    return mat_(space_.index(l, photons), space_.index(l, photons)).real();
}

double DensityMatrix::purity() const {
    return trace_of_product(mat_, mat_).real();
}

void DensityMatrix::validate_positive(double tol) const {
    const double lo = min_eigenvalue(mat_);
    if (lo < -tol) {
        throw std::invalid_argument("DensityMatrix: minimum eigenvalue " + std::to_string(lo) +
                                    " below -" + std::to_string(tol));
    }
}

ComplexMatrix atomic_operator(Level i, Level j, const HilbertSpace& space) {
    ComplexMatrix m(space.dim(), space.dim());
    for (int n = 0; n <= space.photon_cutoff; ++n) m(space.index(i, n), space.index(j, n)) = 1.0;
    return m;
}

ComplexMatrix atomic_operator(char i, char j, const HilbertSpace& space) {
    return atomic_operator(level_from_char(i), level_from_char(j), space);
}

ComplexMatrix annihilation_operator(const HilbertSpace& space) {
    ComplexMatrix m(space.dim(), space.dim());
    for (Level l : {Level::g, Level::e, Level::s})
        for (int n = 1; n <= space.photon_cutoff; ++n)
            m(space.index(l, n - 1), space.index(l, n)) = std::sqrt(static_cast<double>(n));
    return m;
}

ComplexMatrix excitation_number_operator(const HilbertSpace& space) {
    ComplexMatrix m(space.dim(), space.dim());
    for (Level l : {Level::g, Level::e, Level::s}) {
        const double atomic = (l == Level::g) ? 0.0 : 1.0;
        for (int n = 0; n <= space.photon_cutoff; ++n) {
            const std::size_t i = space.index(l, n);
            m(i, i) = atomic + static_cast<double>(n);
        }
    }
    return m;
}

cplx expectation(const DensityMatrix& state, const ComplexMatrix& observable) {
    if (observable.rows() != state.space().dim() || observable.cols() != state.space().dim()) {
        throw std::invalid_argument("expectation: observable dimension mismatch");
    }
    return trace_of_product(state.matrix(), observable);
}

} // namespace hbnqm
