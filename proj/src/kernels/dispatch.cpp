#include <cstdlib>
#include <string_view>

#include "hemo/kernels.hpp"

#if defined(HEMO1D_BUILD_AVX2)
#include <cpuid.h>
#endif

namespace hemo::kernels {

#if defined(HEMO1D_BUILD_AVX2)
const Backend& avx2_backend();

namespace {
bool cpu_has_avx2() {
    unsigned eax = 0, ebx = 0, ecx = 0, edx = 0;
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx & (1u << 5)) != 0;  // structured extended features: AVX2
}
}  // namespace
#endif

#if defined(HEMO1D_BUILD_NEON)
const Backend& neon_backend();
#endif

namespace {

const Backend* resolve(std::string_view name) {
    if (name == "scalar") return &scalar_backend();
#if defined(HEMO1D_BUILD_AVX2)
    if (name == "avx2" && cpu_has_avx2()) return &avx2_backend();
#endif
#if defined(HEMO1D_BUILD_NEON)
    if (name == "neon") return &neon_backend();
#endif
    if (name == "auto") {
#if defined(HEMO1D_BUILD_AVX2)
        if (cpu_has_avx2()) return &avx2_backend();
#endif
#if defined(HEMO1D_BUILD_NEON)
        return &neon_backend();
#endif
        return &scalar_backend();
    }
    return nullptr;
}

const Backend* initial_backend() {
    if (const char* env = std::getenv("HEMO1D_KERNELS")) {
        if (const Backend* b = resolve(env)) return b;
    }
    return resolve("auto");
}

const Backend*& current() {
    static const Backend* b = initial_backend();
    return b;
}

}  // namespace

const Backend& active() { return *current(); }

bool select(std::string_view name) {
    const Backend* b = resolve(name);
    if (!b) return false;
    current() = b;
    return true;
}

const char* const* available() {
    static const char* names[4] = {nullptr, nullptr, nullptr, nullptr};
    int i = 0;
#if defined(HEMO1D_BUILD_AVX2)
    if (cpu_has_avx2()) names[i++] = "avx2";
#endif
#if defined(HEMO1D_BUILD_NEON)
    names[i++] = "neon";
#endif
    names[i++] = "scalar";
    names[i] = nullptr;
    return names;
}

}  // namespace hemo::kernels
