#include "qnlo/kernels.hpp"

// Reference kernels. Written on explicit (re, im) pairs so the arithmetic
// matches the vector lanes of the AVX2 variants operation-for-operation.

namespace qnlo::kernels::scalar {

void caxpy(std::size_t n, cd a, const cd* x, cd* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void copy_scaled(std::size_t n, cd a, const cd* x, cd* y) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void scale(std::size_t n, cd a, cd* x) {
    const double ar = a.real(), ai = a.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = cd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

cd dotc(std::size_t n, const cd* x, const cd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

cd dotu(std::size_t n, const cd* x, const cd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr - xi * yi;
        im += xr * yi + xi * yr;
    }
    return {re, im};
}

double norm2(std::size_t n, const cd* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b, cd* c) {
    for (std::size_t i = 0; i < m; ++i) {
        cd* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] = cd(0.0, 0.0);
        for (std::size_t p = 0; p < k; ++p) {
            caxpy(n, a[i * k + p], b + p * n, crow);
        }
    }
}

void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y) {
    for (std::size_t i = 0; i < m; ++i) {
        y[i] = dotu(n, a + i * n, x);
    }
}

void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c * (ar * xr - ai * xi), c * (ar * xi + ai * xr));
    }
}

void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                  cd* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c1 * (ar * xr - ai * xi) + c2 * y[i].real(),
                    c1 * (ar * xi + ai * xr) + c2 * y[i].imag());
    }
}

void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1, double c2,
                       cd* out) {
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = a[i].real(), ai = -a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c1 * (ar * xr - ai * xi) + c2 * y[i].real(),
                    c1 * (ar * xi + ai * xr) + c2 * y[i].imag());
    }
}

void accum_re(std::size_t n, cd s, const cd* z, double* w) {
    const double sr = s.real(), si = s.imag();
    for (std::size_t i = 0; i < n; ++i) {
        w[i] += sr * z[i].real() - si * z[i].imag();
    }
}

double dot_real(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace qnlo::kernels::scalar
