#pragma once

#include <complex>
#include <cstddef>

// Complex vector kernels used by the propagation and scan inner loops.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant compiled in a separate translation unit. The active
// table is chosen once at runtime from CPU capabilities; it can be pinned
// with force_backend() or the FLOQ_KERNELS environment variable
// (values: auto, scalar, avx2).

namespace floq::kernels {

using cplx = std::complex<double>;

struct Table {
    // y += a*x
    void (*axpy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    // y += a*x, real a
    void (*axpy_real)(double a, const cplx* x, cplx* y, std::size_t n);
    // x *= a
    void (*scale)(cplx a, cplx* x, std::size_t n);
    // y = a*x
    void (*scale_copy)(cplx a, const cplx* x, cplx* y, std::size_t n);
    // y = a*x, real a
    void (*scale_copy_real)(double a, const cplx* x, cplx* y, std::size_t n);
    // y[i] = d[i]*x[i], real diagonal d
    void (*diag_mul)(const double* d, const cplx* x, cplx* y, std::size_t n);
    // sum conj(x[i])*y[i]
    cplx (*dot_conj)(const cplx* x, const cplx* y, std::size_t n);
    // sum |x[i]|^2
    double (*norm_sq)(const cplx* x, std::size_t n);
    const char* name;
};

enum class Backend { Auto, Scalar, Avx2 };

namespace scalar {
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void axpy_real(double a, const cplx* x, cplx* y, std::size_t n);
void scale(cplx a, cplx* x, std::size_t n);
void scale_copy(cplx a, const cplx* x, cplx* y, std::size_t n);
void scale_copy_real(double a, const cplx* x, cplx* y, std::size_t n);
void diag_mul(const double* d, const cplx* x, cplx* y, std::size_t n);
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
extern const Table table;
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void axpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void axpy_real(double a, const cplx* x, cplx* y, std::size_t n);
void scale(cplx a, cplx* x, std::size_t n);
void scale_copy(cplx a, const cplx* x, cplx* y, std::size_t n);
void scale_copy_real(double a, const cplx* x, cplx* y, std::size_t n);
void diag_mul(const double* d, const cplx* x, cplx* y, std::size_t n);
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
extern const Table table;
} // namespace avx2
#endif

bool avx2_available();

/// Pin the backend (Backend::Auto re-enables CPU detection). Throws
/// ConfigError if the requested backend is not available on this CPU.
void force_backend(Backend b);

/// The table in use; resolved on first call.
const Table& active();

const char* active_name();

} // namespace floq::kernels
