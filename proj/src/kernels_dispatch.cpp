#include "floq/kernels.hpp"
#include "floq/errors.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace floq::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

const Table* pick(Backend b) {
    switch (b) {
    case Backend::Scalar:
        return &scalar::table;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_available()) return &avx2::table;
#endif
        throw ConfigError("avx2 kernels requested but not supported on this CPU");
    case Backend::Auto:
    default:
#if defined(__x86_64__) || defined(_M_X64)
        if (avx2_available()) return &avx2::table;
#endif
        return &scalar::table;
    }
}

Backend env_backend() {
    const char* e = std::getenv("FLOQ_KERNELS");
    if (e == nullptr || std::strcmp(e, "auto") == 0) return Backend::Auto;
    if (std::strcmp(e, "scalar") == 0) return Backend::Scalar;
    if (std::strcmp(e, "avx2") == 0) return Backend::Avx2;
    throw ConfigError(std::string("FLOQ_KERNELS must be auto, scalar or avx2; got '") + e + "'");
}

std::atomic<const Table*> g_active{nullptr};

} // namespace

void force_backend(Backend b) { g_active.store(pick(b), std::memory_order_release); }

const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        t = pick(env_backend());
        g_active.store(t, std::memory_order_release);
    }
    return *t;
}

const char* active_name() { return active().name; }

} // namespace floq::kernels
