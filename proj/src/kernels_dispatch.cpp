#include "gaugelab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace gaugelab::kernels {

namespace {

struct Backend {
    double (*dot)(const double*, const double*, std::size_t);
    double (*squared_l2)(const double*, const double*, std::size_t);
    void (*hadamard)(const double*, const double*, double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    const char* name;
};

constexpr Backend kScalar{scalar::dot, scalar::squared_l2, scalar::hadamard,
                          scalar::axpy, "scalar"};

Backend pick_backend() {
    const char* forced = std::getenv("GAUGE_LAB_KERNELS");
    if (forced && std::strcmp(forced, "scalar") == 0) return kScalar;
#if GAUGELAB_HAVE_AVX2_KERNELS
    if (__builtin_cpu_supports("avx2")) {
        return Backend{avx2::dot, avx2::squared_l2, avx2::hadamard,
                       avx2::axpy, "avx2"};
    }
#endif
    return kScalar;
}

const Backend& backend() {
    static const Backend b = pick_backend();
    return b;
}

}  // namespace

double dot(const double* a, const double* b, std::size_t n) {
    return backend().dot(a, b, n);
}

double squared_l2(const double* a, const double* b, std::size_t n) {
    return backend().squared_l2(a, b, n);
}

void hadamard(const double* a, const double* b, double* out, std::size_t n) {
    backend().hadamard(a, b, out, n);
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    backend().axpy(alpha, x, y, n);
}

const char* active_backend() { return backend().name; }

}  // namespace gaugelab::kernels
