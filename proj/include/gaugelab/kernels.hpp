#pragma once

// Data-parallel inner loops shared by every module: dot products, squared
// L2 distances, componentwise scaling and axpy updates. A scalar reference
// implementation always exists; an AVX2 variant is selected at runtime when
// the CPU supports it. Set GAUGE_LAB_KERNELS=scalar to pin the reference
// path.

#include <cstddef>

namespace gaugelab::kernels {

namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
double squared_l2(const double* a, const double* b, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define GAUGELAB_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
double squared_l2(const double* a, const double* b, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
}  // namespace avx2
#else
#define GAUGELAB_HAVE_AVX2_KERNELS 0
#endif

// Dispatched entry points.
double dot(const double* a, const double* b, std::size_t n);
double squared_l2(const double* a, const double* b, std::size_t n);
void hadamard(const double* a, const double* b, double* out, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);

// Name of the backend the dispatcher picked ("avx2" or "scalar").
const char* active_backend();

}  // namespace gaugelab::kernels
