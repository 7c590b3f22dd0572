#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hbnqm/kernels.hpp"

using hbnqm::kernels::Backend;
using hbnqm::kernels::cplx;

namespace {

std::vector<cplx> random_buffer(std::mt19937& rng, std::size_t n) {
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<cplx> out(n);
    for (cplx& v : out) v = cplx(dist(rng), dist(rng));
    return out;
}

double max_abs_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

/// Every backend must agree with the scalar reference within a few ulp on
/// the same inputs; FMA contraction accounts for the residual.
void check_backend_equivalence(const Backend& simd) {
    const Backend& ref = hbnqm::kernels::scalar_backend();
    std::mt19937 rng(20240811);

    for (std::size_t m : {1u, 2u, 3u, 5u, 6u, 8u, 13u, 17u}) {
        for (std::size_t n : {1u, 2u, 3u, 6u, 7u, 16u}) {
            const std::size_t k = (m + n) % 9 + 1;
            const auto a = random_buffer(rng, m * k);
            const auto b = random_buffer(rng, k * n);

            std::vector<cplx> c_ref(m * n), c_simd(m * n);
            ref.matmul(a.data(), b.data(), c_ref.data(), m, k, n);
            simd.matmul(a.data(), b.data(), c_simd.data(), m, k, n);
            CHECK(max_abs_diff(c_ref, c_simd) < 1e-13);

            auto y_ref = random_buffer(rng, m * n);
            auto y_simd = y_ref;
            const cplx alpha(0.37, -1.21);
            ref.axpy(alpha, c_ref.data(), y_ref.data(), y_ref.size());
            simd.axpy(alpha, c_ref.data(), y_simd.data(), y_simd.size());
            CHECK(max_abs_diff(y_ref, y_simd) < 1e-13);

            auto x_ref = y_ref;
            auto x_simd = y_ref;
            ref.scale(alpha, x_ref.data(), x_ref.size());
            simd.scale(alpha, x_simd.data(), x_simd.size());
            CHECK(max_abs_diff(x_ref, x_simd) < 1e-13);
        }
    }
}

} // namespace

TEST_CASE("scalar backend is always available and selectable") {
    const auto names = hbnqm::kernels::available();
    CHECK(std::find(names.begin(), names.end(), "scalar") != names.end());
    CHECK(hbnqm::kernels::select("scalar"));
    CHECK(hbnqm::kernels::active().name == "scalar");
    CHECK_FALSE(hbnqm::kernels::select("no-such-backend"));
    CHECK(hbnqm::kernels::active().name == "scalar");
}

TEST_CASE("scalar matmul matches a hand-rolled triple loop") {
    std::mt19937 rng(7);
    const std::size_t m = 4, k = 5, n = 3;
    const auto a = random_buffer(rng, m * k);
    const auto b = random_buffer(rng, k * n);
    std::vector<cplx> expect(m * n, cplx(0, 0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t l = 0; l < k; ++l) expect[i * n + j] += a[i * k + l] * b[l * n + j];

    std::vector<cplx> got(m * n);
    hbnqm::kernels::scalar_backend().matmul(a.data(), b.data(), got.data(), m, k, n);
    CHECK(max_abs_diff(expect, got) < 1e-14);
}

#if defined(__x86_64__) || defined(_M_X64)
TEST_CASE("avx2 backend matches scalar reference when supported") {
    bool have_avx2 = false;
    for (const auto& name : hbnqm::kernels::available()) have_avx2 |= name == "avx2";
    if (!have_avx2) {
        MESSAGE("avx2 not supported on this host, skipping");
        return;
    }
    REQUIRE(hbnqm::kernels::select("avx2"));
    check_backend_equivalence(hbnqm::kernels::active());
    hbnqm::kernels::select("scalar");
}
#endif

#if defined(__aarch64__)
TEST_CASE("neon backend matches scalar reference") {
    REQUIRE(hbnqm::kernels::select("neon"));
    check_backend_equivalence(hbnqm::kernels::active());
    hbnqm::kernels::select("scalar");
}
#endif
