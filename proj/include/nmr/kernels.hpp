#pragma once

#include <cstddef>

namespace nmr::kernels {

// Double-precision kernels behind every inner loop of the library: ridge-map
// rows and H^T products are dot's, operator accumulation and rank-1 updates
// are axpy's, Jacobi SVD sweeps are dot + rot pairs, and the ADMM iterate
// assemblies are lincomb's.
//
// Each kernel has a scalar reference implementation and an AVX2 variant.
// The backend is chosen once per process: AVX2 when the CPU supports
// AVX2+FMA (and the build enabled it), scalar otherwise. Setting the
// environment variable NMR_KERNELS=scalar|avx2 forces a backend; forcing
// avx2 on an unsupported CPU falls back to scalar.
struct Table {
  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // sum_i x[i]^2
  double (*sumsq)(const double* x, std::size_t n);
  // y += a*x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // x *= a
  void (*scal)(double a, double* x, std::size_t n);
  // plane rotation: (x, y) <- (c*x - s*y, s*x + c*y)
  void (*rot)(double* x, double* y, double c, double s, std::size_t n);
  // out = a*x + b*y
  void (*lincomb2)(double* out, double a, const double* x, double b,
                   const double* y, std::size_t n);
  // out = a*x + b*y + c*z
  void (*lincomb3)(double* out, double a, const double* x, double b,
                   const double* y, double c, const double* z, std::size_t n);
  const char* name;
};

// Reference backend; always available.
const Table& scalar();

// AVX2 backend, or nullptr when compiled out.
const Table* avx2();

// Backend selected for this process (see above).
const Table& active();

}  // namespace nmr::kernels
