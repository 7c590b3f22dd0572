#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hbnqm/hermitian_eigen.hpp"
#include "hbnqm/qops.hpp"

using namespace hbnqm;

namespace {

ComplexMatrix random_matrix(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = cplx(dist(rng), dist(rng));
    return m;
}

ComplexMatrix random_hermitian(std::mt19937& rng, std::size_t n) {
    ComplexMatrix m = random_matrix(rng, n);
    return m.hermitized();
}

} // namespace

TEST_CASE("basis ordering is atomic-major, photon-minor") {
    const HilbertSpace space(1);
    CHECK(space.dim() == 6);
    CHECK(space.index(Level::g, 0) == 0);
    CHECK(space.index(Level::g, 1) == 1);
    CHECK(space.index(Level::e, 0) == 2);
    CHECK(space.index(Level::s, 1) == 5);
    CHECK(space.basis_labels() ==
          std::vector<std::string>{"g0", "g1", "e0", "e1", "s0", "s1"});
    CHECK_THROWS_AS(space.index(Level::g, 2), std::invalid_argument);
    CHECK_THROWS_AS(HilbertSpace(0), std::invalid_argument);
}

TEST_CASE("sigma_gg is the projector onto the ground manifold") {
    const HilbertSpace space(1);
    const ComplexMatrix p = atomic_operator(Level::g, Level::g, space);
    std::size_t units = 0;
    for (std::size_t i = 0; i < space.dim(); ++i)
        for (std::size_t j = 0; j < space.dim(); ++j) {
            if (p(i, j) != cplx(0, 0)) {
                CHECK(i == j);
                CHECK(p(i, j) == cplx(1, 0));
                ++units;
            }
        }
    CHECK(units == 2); // |g,0> and |g,1>
    CHECK(p(space.index(Level::g, 0), space.index(Level::g, 0)) == cplx(1, 0));
    CHECK(p(space.index(Level::g, 1), space.index(Level::g, 1)) == cplx(1, 0));
}

TEST_CASE("atomic operator adjoint and algebra identities") {
    const HilbertSpace space(2);
    const ComplexMatrix se = atomic_operator(Level::s, Level::e, space);
    const ComplexMatrix es = atomic_operator(Level::e, Level::s, space);
    CHECK((se.adjoint() - es).max_abs() == 0.0);

    const ComplexMatrix ge = atomic_operator(Level::g, Level::e, space);
    const ComplexMatrix eg = atomic_operator(Level::e, Level::g, space);
    const ComplexMatrix gg = atomic_operator(Level::g, Level::g, space);
    CHECK((ge * eg - gg).max_abs() == 0.0);

    // Exactly N_max+1 unit entries per atomic operator.
    std::size_t entries = 0;
    for (const cplx& v : ge.data()) entries += v != cplx(0, 0);
    CHECK(entries == 3);

    CHECK_THROWS_AS(atomic_operator('x', 'g', space), std::invalid_argument);
}

TEST_CASE("annihilation operator is the Fock ladder tensored on the left") {
    const HilbertSpace space(1);
    const ComplexMatrix a = annihilation_operator(space);
    // a|g,1> = |g,0>, a|g,0> = 0
    CHECK(a(space.index(Level::g, 0), space.index(Level::g, 1)) == cplx(1, 0));
    for (std::size_t i = 0; i < space.dim(); ++i)
        CHECK(a(i, space.index(Level::g, 0)) == cplx(0, 0));

    // On the subspace n < N_max the canonical commutator holds.
    const HilbertSpace big(6);
    const ComplexMatrix ab = annihilation_operator(big);
    const ComplexMatrix comm = commutator(ab, ab.adjoint());
    for (Level l : {Level::g, Level::e, Level::s})
        for (int n = 0; n < big.photon_cutoff; ++n) {
            const std::size_t i = big.index(l, n);
            CHECK(std::abs(comm(i, i) - cplx(1, 0)) < 1e-12);
        }

    // Number operator spectrum 0..N_max (three-fold degenerate).
    const ComplexMatrix num = ab.adjoint() * ab;
    const auto eig = eigen_hermitian(num);
    for (int n = 0; n <= big.photon_cutoff; ++n)
        for (int copy = 0; copy < 3; ++copy)
            CHECK(eig.values[3 * n + copy] == doctest::Approx(n).epsilon(1e-12));
}

TEST_CASE("expectation values") {
    const HilbertSpace space(1);
    const DensityMatrix rho =
        DensityMatrix::from_pure(StateVector::basis_state(space, Level::g, 1));
    CHECK(expectation(rho, atomic_operator(Level::g, Level::g, space)).real() ==
          doctest::Approx(1.0));
    CHECK(expectation(rho, ComplexMatrix::identity(space.dim())).real() ==
          doctest::Approx(1.0));

    const DensityMatrix mixed = DensityMatrix::maximally_mixed(space);
    CHECK(expectation(mixed, atomic_operator(Level::s, Level::s, space)).real() ==
          doctest::Approx(1.0 / 3.0));

    CHECK_THROWS_AS(expectation(rho, ComplexMatrix::identity(4)), std::invalid_argument);
}

TEST_CASE("state vector normalizes and rejects zero vectors") {
    const HilbertSpace space(1);
    std::vector<cplx> amps(space.dim(), cplx(0, 0));
    amps[0] = cplx(3.0, 0.0);
    amps[4] = cplx(0.0, 4.0);
    const StateVector psi(space, amps);
    CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(psi.amplitude(Level::g, 0)) == doctest::Approx(0.6));

    CHECK_THROWS_AS(StateVector(space, std::vector<cplx>(space.dim(), cplx(0, 0))),
                    std::invalid_argument);
}

TEST_CASE("density matrix invariants are enforced") {
    const HilbertSpace space(1);
    ComplexMatrix bad = ComplexMatrix::identity(space.dim());
    bad(0, 1) = cplx(0.5, 0.5); // not Hermitian
    CHECK_THROWS_AS(DensityMatrix(space, bad), std::invalid_argument);

    ComplexMatrix off_trace = ComplexMatrix::identity(space.dim());
    CHECK_THROWS_AS(DensityMatrix(space, off_trace), std::invalid_argument);

    const DensityMatrix mixed = DensityMatrix::maximally_mixed(space);
    CHECK_NOTHROW(mixed.validate_positive(1e-8));
    CHECK(mixed.purity() == doctest::Approx(1.0 / 6.0));
}

TEST_CASE("hermitian conjugation is an involution") {
    std::mt19937 rng(11);
    const ComplexMatrix m = random_matrix(rng, 6);
    CHECK((m.adjoint().adjoint() - m).max_abs() == 0.0);
}

TEST_CASE("matrix multiplication is associative on random triples") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const ComplexMatrix a = random_matrix(rng, 6);
        const ComplexMatrix b = random_matrix(rng, 6);
        const ComplexMatrix c = random_matrix(rng, 6);
        CHECK(((a * b) * c - a * (b * c)).max_abs() < 1e-12);
    }
}

TEST_CASE("eigen pairs satisfy the defining equation") {
    std::mt19937 rng(17);
    for (std::size_t n : {2u, 5u, 6u, 12u}) {
        const ComplexMatrix h = random_hermitian(rng, n);
        const auto eig = eigen_hermitian(h);
        REQUIRE(eig.values.size() == n);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<cplx> v(n);
            for (std::size_t i = 0; i < n; ++i) v[i] = eig.vectors(i, j);
            const auto hv = h * std::span<const cplx>(v);
            double residual = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                residual += std::norm(hv[i] - eig.values[j] * v[i]);
            CHECK(std::sqrt(residual) < 1e-9);
        }
        for (std::size_t j = 1; j < n; ++j) CHECK(eig.values[j - 1] <= eig.values[j]);
    }
}

TEST_CASE("operator constructors are pure") {
    const HilbertSpace space(2);
    const ComplexMatrix first = atomic_operator(Level::g, Level::e, space);
    const ComplexMatrix interleaved = annihilation_operator(space);
    (void)interleaved;
    const ComplexMatrix second = atomic_operator(Level::g, Level::e, space);
    CHECK(first == second);
}
