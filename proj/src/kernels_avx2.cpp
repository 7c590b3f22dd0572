// AVX2+FMA kernels for interleaved complex<double> data. Two complex
// numbers per 256-bit vector; multiplication uses the fmaddsub pattern:
//   (ar + i*ai)(br + i*bi) = (ar*br - ai*bi) + i*(ar*bi + ai*br)
// This translation unit is compiled with -mavx2 -mfma and only entered
// after a runtime CPU check.

#include "hbnqm/kernels.hpp"

#include <immintrin.h>

namespace hbnqm::kernels {

namespace {

// acc += a * b for two packed complex numbers in b, scalar a broadcast.
inline __m256d cmul_acc(__m256d acc, __m256d are, __m256d aim, __m256d b) {
    const __m256d bswap = _mm256_permute_pd(b, 0x5); // [bi0 br0 bi1 br1]
    const __m256d t = _mm256_mul_pd(aim, bswap);
    return _mm256_add_pd(acc, _mm256_fmaddsub_pd(are, b, t));
}

void matmul_avx2(const cplx* a, const cplx* b, cplx* c,
                 std::size_t m, std::size_t k, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
    const std::size_t nvec = n / 2 * 2;
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const __m256d are = _mm256_set1_pd(arow[l].real());
            const __m256d aim = _mm256_set1_pd(arow[l].imag());
            const double* brow = bd + 2 * l * n;
            std::size_t j = 0;
            for (; j < nvec; j += 2) {
                __m256d acc = _mm256_loadu_pd(crow + 2 * j);
                acc = cmul_acc(acc, are, aim, _mm256_loadu_pd(brow + 2 * j));
                _mm256_storeu_pd(crow + 2 * j, acc);
            }
            if (j < n) { // odd trailing column
                const cplx alv = arow[l];
                c[i * n + j] += alv * b[l * n + j];
            }
        }
    }
}

void axpy_avx2(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d acc = _mm256_loadu_pd(yd + 2 * i);
        acc = cmul_acc(acc, are, aim, _mm256_loadu_pd(xd + 2 * i));
        _mm256_storeu_pd(yd + 2 * i, acc);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scale_avx2(cplx alpha, cplx* x, std::size_t n) {
    const __m256d are = _mm256_set1_pd(alpha.real());
    const __m256d aim = _mm256_set1_pd(alpha.imag());
    double* xd = reinterpret_cast<double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(xd + 2 * i);
        const __m256d vswap = _mm256_permute_pd(v, 0x5);
        const __m256d t = _mm256_mul_pd(aim, vswap);
        _mm256_storeu_pd(xd + 2 * i, _mm256_fmaddsub_pd(are, v, t));
    }
    for (; i < n; ++i) x[i] *= alpha;
}

} // namespace

bool avx2_supported() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}

const Backend& avx2_backend() {
    static const Backend backend{"avx2", matmul_avx2, axpy_avx2, scale_avx2};
    return backend;
}

} // namespace hbnqm::kernels
