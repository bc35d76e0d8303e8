#include "css/kernels.hpp"

#include <cstring>

namespace css::kernels {

static const Ops* detect() {
#if defined(CSS_HAVE_AVX2)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) return &avx2_ops;
#endif
#if defined(CSS_HAVE_NEON)
    return &neon_ops;
#endif
    return &scalar_ops;
}

static const Ops* g_ops = nullptr;

const Ops& active() {
    if (!g_ops) g_ops = detect();
    return *g_ops;
}

void force_backend(const char* name) {
    if (!name) {
        g_ops = detect();
        return;
    }
    if (std::strcmp(name, "scalar") == 0) {
        g_ops = &scalar_ops;
        return;
    }
#if defined(CSS_HAVE_AVX2)
    if (std::strcmp(name, "avx2") == 0 && __builtin_cpu_supports("avx2")) {
        g_ops = &avx2_ops;
        return;
    }
#endif
#if defined(CSS_HAVE_NEON)
    if (std::strcmp(name, "neon") == 0) {
        g_ops = &neon_ops;
        return;
    }
#endif
    g_ops = &scalar_ops;
}

const char* backend() { return active().name; }

double dot(const double* a, const double* b, std::size_t n) { return active().dot(a, b, n); }
double sum(const double* a, std::size_t n) { return active().sum(a, n); }
double sumsq(const double* a, std::size_t n) { return active().sumsq(a, n); }
void axpy(double alpha, const double* x, double* y, std::size_t n) { active().axpy(alpha, x, y, n); }

} // namespace css::kernels
