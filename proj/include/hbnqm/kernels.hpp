#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace hbnqm::kernels {

using cplx = std::complex<double>;

/// Dense complex kernels behind all matrix arithmetic. One scalar reference
/// implementation always exists; SIMD variants (AVX2 on x86-64, NEON on
/// aarch64) are selected at runtime when the CPU supports them and are
/// equivalence-tested against the scalar kernels.
///
/// All matrices are row-major and contiguous. matmul requires that c does
/// not alias a or b.
struct Backend {
    std::string_view name;
    // c[m x n] = a[m x k] * b[k x n]
    void (*matmul)(const cplx* a, const cplx* b, cplx* c,
                   std::size_t m, std::size_t k, std::size_t n);
    // y[i] += alpha * x[i]
    void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
    // x[i] *= alpha
    void (*scale)(cplx alpha, cplx* x, std::size_t n);
};

const Backend& scalar_backend();

#if defined(HBNQM_HAVE_AVX2_TU)
const Backend& avx2_backend();
bool avx2_supported();
#endif
#if defined(HBNQM_HAVE_NEON_TU)
const Backend& neon_backend();
#endif

/// Currently active backend. Resolved once on first use: the HBNQM_KERNELS
/// environment variable ("scalar", "avx2", "neon") wins if set and
/// available, otherwise the widest supported SIMD variant is picked.
const Backend& active();

/// Force a backend by name. Returns false (and leaves the selection
/// untouched) if the name is unknown or unsupported on this host.
bool select(std::string_view name);

/// Names of all backends usable on this host.
std::vector<std::string> available();

} // namespace hbnqm::kernels
