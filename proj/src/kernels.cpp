#include "hbnqm/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>

namespace hbnqm::kernels {

namespace {

const Backend* find(std::string_view name) {
    if (name == "scalar") return &scalar_backend();
#if defined(HBNQM_HAVE_AVX2_TU)
    if (name == "avx2" && avx2_supported()) return &avx2_backend();
#endif
#if defined(HBNQM_HAVE_NEON_TU)
    if (name == "neon") return &neon_backend();
#endif
    return nullptr;
}

const Backend* detect() {
    if (const char* env = std::getenv("HBNQM_KERNELS")) {
        if (const Backend* b = find(env)) return b;
    }
#if defined(HBNQM_HAVE_AVX2_TU)
    if (avx2_supported()) return &avx2_backend();
#endif
#if defined(HBNQM_HAVE_NEON_TU)
    return &neon_backend();
#endif
    return &scalar_backend();
}

std::atomic<const Backend*> g_active{nullptr};
std::once_flag g_once;

} // namespace

const Backend& active() {
    std::call_once(g_once, [] { g_active.store(detect()); });
    return *g_active.load();
}

bool select(std::string_view name) {
    active(); // make sure detection ran first
    if (const Backend* b = find(name)) {
        g_active.store(b);
        return true;
    }
    return false;
}

std::vector<std::string> available() {
    std::vector<std::string> names{"scalar"};
#if defined(HBNQM_HAVE_AVX2_TU)
    if (avx2_supported()) names.emplace_back("avx2");
#endif
#if defined(HBNQM_HAVE_NEON_TU)
    names.emplace_back("neon");
#endif
    return names;
}

} // namespace hbnqm::kernels
