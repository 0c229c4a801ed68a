#include <cstring>

#include "rvegen/simd/kernels.hpp"

namespace rvegen::kernels {

namespace {

const Backend* pick_auto() {
    if (const Backend* b = avx2_backend()) return b;
    if (const Backend* b = neon_backend()) return b;
    return &scalar_backend();
}

const Backend*& selected() {
    static const Backend* b = pick_auto();
    return b;
}

} // namespace

const Backend& active() { return *selected(); }

bool select_backend(const char* name) {
    if (std::strcmp(name, "auto") == 0) {
        selected() = pick_auto();
        return true;
    }
    if (std::strcmp(name, "scalar") == 0) {
        selected() = &scalar_backend();
        return true;
    }
    if (std::strcmp(name, "avx2") == 0) {
        if (const Backend* b = avx2_backend()) {
            selected() = b;
            return true;
        }
        return false;
    }
    if (std::strcmp(name, "neon") == 0) {
        if (const Backend* b = neon_backend()) {
            selected() = b;
            return true;
        }
        return false;
    }
    return false;
}

} // namespace rvegen::kernels
