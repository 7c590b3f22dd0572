#pragma once

#include <vector>

#include "hbnqm/complex_matrix.hpp"

namespace hbnqm {

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column j pairs with values[j]
};

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Intended for the small operator dimensions used here
/// (<= ~30); accuracy target ||Av - lambda v|| <= 1e-9 per pair.
EigenDecomposition eigen_hermitian(const ComplexMatrix& a);

/// Smallest eigenvalue only (same decomposition underneath).
double min_eigenvalue(const ComplexMatrix& a);

} // namespace hbnqm
