#pragma once

#include <cstddef>

namespace css::kernels {

struct Ops {
    double (*dot)(const double*, const double*, std::size_t);
    double (*sum)(const double*, std::size_t);
    double (*sumsq)(const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    const char* name;
};

const Ops& active();

double dot(const double* a, const double* b, std::size_t n);
double sum(const double* a, std::size_t n);
double sumsq(const double* a, std::size_t n);
// y += alpha * x
void axpy(double alpha, const double* x, double* y, std::size_t n);

const char* backend();
// "scalar", "avx2", "neon" or nullptr to restore auto-detection; unknown
// names fall back to scalar.
void force_backend(const char* name);

extern const Ops scalar_ops;
#if defined(CSS_HAVE_AVX2)
extern const Ops avx2_ops;
#endif
#if defined(CSS_HAVE_NEON)
extern const Ops neon_ops;
#endif

} // namespace css::kernels
