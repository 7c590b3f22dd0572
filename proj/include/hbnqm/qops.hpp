#pragma once

#include <span>
#include <string>
#include <vector>

#include "hbnqm/complex_matrix.hpp"

namespace hbnqm {

/// Atomic levels of the three-level system: ground, excited, metastable.
enum class Level { g = 0, e = 1, s = 2 };

char level_char(Level l);
Level level_from_char(char c); // throws on anything but g/e/s

/// Composite Hilbert space: three atomic levels tensor a truncated photon
/// Fock space. Basis ordering is atomic-major, photon-minor:
///   index = atomic_index * (photon_cutoff + 1) + photon_number
/// with atomic order g, e, s. This ordering is load-bearing for all
/// serialized populations and must not change.
struct HilbertSpace {
    int photon_cutoff = 1; // N_max >= 1

    explicit HilbertSpace(int cutoff = 1);

    std::size_t dim() const { return 3 * (photon_cutoff + 1); }
    std::size_t index(Level l, int photons) const;
    std::vector<std::string> basis_labels() const; // "g0", "g1", "e0", ...

    bool operator==(const HilbertSpace&) const = default;
};

/// Unit-norm state on a composite space. Normalizes on construction and
/// rejects zero vectors; the stored norm is 1 within 1e-12.
class StateVector {
public:
    StateVector(HilbertSpace space, std::vector<cplx> amplitudes);
    static StateVector basis_state(const HilbertSpace& space, Level l, int photons);

    const HilbertSpace& space() const { return space_; }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx amplitude(Level l, int photons) const;
    double norm() const;

private:
    HilbertSpace space_;
    std::vector<cplx> amps_;
};

/// Density matrix with construction-time checks: Hermitian within 1e-10 and
/// unit trace within 1e-9. Positivity (eigenvalues >= -1e-8) is checked by
/// validate_positive(), which costs an eigendecomposition.
class DensityMatrix {
public:
    DensityMatrix(HilbertSpace space, ComplexMatrix matrix);
    static DensityMatrix from_pure(const StateVector& psi);
    static DensityMatrix maximally_mixed(const HilbertSpace& space);

    const HilbertSpace& space() const { return space_; }
    const ComplexMatrix& matrix() const { return mat_; }

    double population(Level l, int photons) const;
    double purity() const; // Tr(rho^2)
    void validate_positive(double tol = 1e-8) const;

private:
    HilbertSpace space_;
    ComplexMatrix mat_;
};

/// sigma_ij tensor identity on the photon factor: |i><j| (x) 1.
ComplexMatrix atomic_operator(Level i, Level j, const HilbertSpace& space);
ComplexMatrix atomic_operator(char i, char j, const HilbertSpace& space);

/// Identity on the atomic factor tensor the Fock lowering operator:
/// 1 (x) a with <n-1|a|n> = sqrt(n).
ComplexMatrix annihilation_operator(const HilbertSpace& space);

/// Total excitation number (sigma_ee + sigma_ss) (x) 1 + 1 (x) a^dagger a.
/// Commutes with the lambda-system Hamiltonian, so the single-excitation
/// sector is closed and results are photon-cutoff independent.
ComplexMatrix excitation_number_operator(const HilbertSpace& space);

/// Tr(rho * O). Real within 1e-10 when O is Hermitian.
cplx expectation(const DensityMatrix& state, const ComplexMatrix& observable);

} // namespace hbnqm
