#pragma once

#include <complex>
#include <cstddef>
#include <string>

// Data-parallel complex primitives used by the propagators and the Wigner
// sampler. Every routine has a portable scalar reference implementation and
// an AVX2+FMA variant; the active one is picked at load time (or forced via
// set_backend / the QNLO_KERNELS env var, values "scalar" and "avx2").
// The two variants are equivalence-tested against each other in
// tests/test_kernels.cpp.

namespace qnlo::kernels {

using cd = std::complex<double>;

enum class Backend { Scalar, Avx2 };

/// Currently active backend.
Backend active_backend();

/// Force a backend. Throws qnlo::Error if it is not supported on this CPU.
void set_backend(Backend b);

/// True when the running CPU supports the AVX2+FMA path.
bool avx2_supported();

std::string backend_name(Backend b);

// y += a*x
void caxpy(std::size_t n, cd a, const cd* x, cd* y);
// y = a*x
void copy_scaled(std::size_t n, cd a, const cd* x, cd* y);
// x *= a
void scale(std::size_t n, cd a, cd* x);
// sum conj(x_i) * y_i
cd dotc(std::size_t n, const cd* x, const cd* y);
// sum x_i * y_i
cd dotu(std::size_t n, const cd* x, const cd* y);
// sum |x_i|^2
double norm2(std::size_t n, const cd* x);
// c = a*b, row-major, a is m x k, b is k x n. c must not alias a or b.
void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b, cd* c);
// y = a*x, row-major, a is m x n. y must not alias x.
void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y);

// Phase-space grid steps (elementwise over n grid points):
// out = c * (a .* x)
void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out);
// out = c1*(a .* x) + c2*y
void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                  cd* out);
// out = c1*(conj(a) .* x) + c2*y
void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                       cd* out);
// w += Re(s * z)
void accum_re(std::size_t n, cd s, const cd* z, double* w);
// sum x_i * y_i over real arrays
double dot_real(std::size_t n, const double* x, const double* y);

// Reference implementations (always available; used directly by the
// equivalence tests).
namespace scalar {
void caxpy(std::size_t n, cd a, const cd* x, cd* y);
void copy_scaled(std::size_t n, cd a, const cd* x, cd* y);
void scale(std::size_t n, cd a, cd* x);
cd dotc(std::size_t n, const cd* x, const cd* y);
cd dotu(std::size_t n, const cd* x, const cd* y);
double norm2(std::size_t n, const cd* x);
void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b, cd* c);
void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y);
void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out);
void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                  cd* out);
void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                       cd* out);
void accum_re(std::size_t n, cd s, const cd* z, double* w);
double dot_real(std::size_t n, const double* x, const double* y);
}  // namespace scalar

#if defined(__x86_64__) || defined(__i386__)
namespace avx2 {
void caxpy(std::size_t n, cd a, const cd* x, cd* y);
void copy_scaled(std::size_t n, cd a, const cd* x, cd* y);
void scale(std::size_t n, cd a, cd* x);
cd dotc(std::size_t n, const cd* x, const cd* y);
cd dotu(std::size_t n, const cd* x, const cd* y);
double norm2(std::size_t n, const cd* x);
void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b, cd* c);
void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y);
void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out);
void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                  cd* out);
void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                       cd* out);
void accum_re(std::size_t n, cd s, const cd* z, double* w);
double dot_real(std::size_t n, const double* x, const double* y);
}  // namespace avx2
#endif

}  // namespace qnlo::kernels
