#include "floq/kernels.hpp"

namespace floq::kernels::scalar {

void axpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(y[i].real() + ar * xr - ai * xi, y[i].imag() + ar * xi + ai * xr);
    }
}

void axpy_real(double a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = cplx(y[i].real() + a * x[i].real(), y[i].imag() + a * x[i].imag());
    }
}

void scale(cplx a, cplx* x, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void scale_copy(cplx a, const cplx* x, cplx* y, std::size_t n) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cplx(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void scale_copy_real(double a, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = cplx(a * x[i].real(), a * x[i].imag());
    }
}

void diag_mul(const double* d, const cplx* x, cplx* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = cplx(d[i] * x[i].real(), d[i] * x[i].imag());
    }
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return cplx(re, im);
}

double norm_sq(const cplx* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

const Table table = {axpy,     axpy_real, scale,    scale_copy,
                     scale_copy_real, diag_mul, dot_conj, norm_sq, "scalar"};

} // namespace floq::kernels::scalar
