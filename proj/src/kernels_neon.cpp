// NEON kernels for aarch64. One complex<double> per 128-bit vector:
//   res = [ar*br - ai*bi, ar*bi + ai*br]
// built from a duplicated-real fma plus a sign-flipped swapped term.

#include "hbnqm/kernels.hpp"

#include <arm_neon.h>

namespace hbnqm::kernels {

namespace {

// [ai*bi, ai*br] with the first lane negated.
inline float64x2_t cross_term(float64x2_t aim, float64x2_t b) {
    const float64x2_t bswap = vextq_f64(b, b, 1);
    float64x2_t t = vmulq_f64(aim, bswap);
    const uint64x2_t signmask = {0x8000000000000000ULL, 0};
    return vreinterpretq_f64_u64(veorq_u64(vreinterpretq_u64_f64(t), signmask));
}

inline float64x2_t cmul_acc(float64x2_t acc, float64x2_t are, float64x2_t aim,
                            float64x2_t b) {
    return vfmaq_f64(vaddq_f64(acc, cross_term(aim, b)), are, b);
}

void matmul_neon(const cplx* a, const cplx* b, cplx* c,
                 std::size_t m, std::size_t k, std::size_t n) {
    const double* bd = reinterpret_cast<const double*>(b);
    double* cd = reinterpret_cast<double*>(c);
    for (std::size_t i = 0; i < m * n; ++i) c[i] = cplx(0.0, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        const cplx* arow = a + i * k;
        double* crow = cd + 2 * i * n;
        for (std::size_t l = 0; l < k; ++l) {
            const float64x2_t are = vdupq_n_f64(arow[l].real());
            const float64x2_t aim = vdupq_n_f64(arow[l].imag());
            const double* brow = bd + 2 * l * n;
            for (std::size_t j = 0; j < n; ++j) {
                float64x2_t acc = vld1q_f64(crow + 2 * j);
                acc = cmul_acc(acc, are, aim, vld1q_f64(brow + 2 * j));
                vst1q_f64(crow + 2 * j, acc);
            }
        }
    }
}

void axpy_neon(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
    const float64x2_t are = vdupq_n_f64(alpha.real());
    const float64x2_t aim = vdupq_n_f64(alpha.imag());
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < n; ++i) {
        float64x2_t acc = vld1q_f64(yd + 2 * i);
        acc = cmul_acc(acc, are, aim, vld1q_f64(xd + 2 * i));
        vst1q_f64(yd + 2 * i, acc);
    }
}

void scale_neon(cplx alpha, cplx* x, std::size_t n) {
    const float64x2_t are = vdupq_n_f64(alpha.real());
    const float64x2_t aim = vdupq_n_f64(alpha.imag());
    double* xd = reinterpret_cast<double*>(x);
    for (std::size_t i = 0; i < n; ++i) {
        const float64x2_t v = vld1q_f64(xd + 2 * i);
        vst1q_f64(xd + 2 * i, vfmaq_f64(cross_term(aim, v), are, v));
    }
}

} // namespace

const Backend& neon_backend() {
    static const Backend backend{"neon", matmul_neon, axpy_neon, scale_neon};
    return backend;
}

} // namespace hbnqm::kernels
