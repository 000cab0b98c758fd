#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include "qnlo/kernels.hpp"

// AVX2+FMA kernels on interleaved complex<double> (two complex per __m256d).
// Complex products use the fmaddsub/fmsubadd lane trick:
//   even lane:  ar*xr -/+ ai*xi   (real part)
//   odd  lane:  ar*xi +/- ai*xr   (imag part)
// Tails are handled by the matching scalar element ops.

#define QNLO_AVX2 __attribute__((target("avx2,fma")))

namespace qnlo::kernels::avx2 {

namespace {

QNLO_AVX2 inline __m256d cmul(__m256d a_even, __m256d a_odd, __m256d x) {
    // (a_even + i*a_odd) * x with a lane-duplicated scalar
    const __m256d x_swap = _mm256_permute_pd(x, 0x5);
    return _mm256_fmaddsub_pd(a_even, x, _mm256_mul_pd(a_odd, x_swap));
}

QNLO_AVX2 inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

QNLO_AVX2 inline cd hsum_complex(__m256d acc) {
    const __m128d lo = _mm256_castpd256_pd128(acc);
    const __m128d hi = _mm256_extractf128_pd(acc, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return {_mm_cvtsd_f64(s), _mm_cvtsd_f64(_mm_unpackhi_pd(s, s))};
}

}  // namespace

QNLO_AVX2 void caxpy(std::size_t n, cd a, const cd* x, cd* y) {
    const __m256d ae = _mm256_set1_pd(a.real());
    const __m256d ao = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, _mm256_add_pd(yv, cmul(ae, ao, xv)));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += cd(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
    }
}

QNLO_AVX2 void copy_scaled(std::size_t n, cd a, const cd* x, cd* y) {
    const __m256d ae = _mm256_set1_pd(a.real());
    const __m256d ao = _mm256_set1_pd(a.imag());
    const double* xp = reinterpret_cast<const double*>(x);
    double* yp = reinterpret_cast<double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        _mm256_storeu_pd(yp + 2 * i, cmul(ae, ao, xv));
    }
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] = cd(a.real() * xr - a.imag() * xi, a.real() * xi + a.imag() * xr);
    }
}

QNLO_AVX2 void scale(std::size_t n, cd a, cd* x) {
    copy_scaled(n, a, x, x);
}

QNLO_AVX2 cd dotc(std::size_t n, const cd* x, const cd* y) {
    __m256d acc = _mm256_setzero_pd();
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xe = _mm256_movedup_pd(xv);
        const __m256d xo = _mm256_permute_pd(xv, 0xF);
        const __m256d ys = _mm256_permute_pd(yv, 0x5);
        // even: xr*yr + xi*yi, odd: xr*yi - xi*yr
        acc = _mm256_add_pd(acc, _mm256_fmsubadd_pd(xe, yv, _mm256_mul_pd(xo, ys)));
    }
    cd s = hsum_complex(acc);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        s += cd(xr * yr + xi * yi, xr * yi - xi * yr);
    }
    return s;
}

QNLO_AVX2 cd dotu(std::size_t n, const cd* x, const cd* y) {
    __m256d acc = _mm256_setzero_pd();
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d xe = _mm256_movedup_pd(xv);
        const __m256d xo = _mm256_permute_pd(xv, 0xF);
        const __m256d ys = _mm256_permute_pd(yv, 0x5);
        acc = _mm256_add_pd(acc, _mm256_fmaddsub_pd(xe, yv, _mm256_mul_pd(xo, ys)));
    }
    cd s = hsum_complex(acc);
    for (; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        s += cd(xr * yr - xi * yi, xr * yi + xi * yr);
    }
    return s;
}

QNLO_AVX2 double norm2(std::size_t n, const cd* x) {
    __m256d acc = _mm256_setzero_pd();
    const double* xp = reinterpret_cast<const double*>(x);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        acc = _mm256_fmadd_pd(xv, xv, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) {
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    }
    return s;
}

QNLO_AVX2 void matmul(std::size_t m, std::size_t k, std::size_t n, const cd* a, const cd* b,
                      cd* c) {
    for (std::size_t i = 0; i < m; ++i) {
        cd* crow = c + i * n;
        for (std::size_t j = 0; j < n; ++j) crow[j] = cd(0.0, 0.0);
        for (std::size_t p = 0; p < k; ++p) {
            caxpy(n, a[i * k + p], b + p * n, crow);
        }
    }
}

QNLO_AVX2 void matvec(std::size_t m, std::size_t n, const cd* a, const cd* x, cd* y) {
    for (std::size_t i = 0; i < m; ++i) {
        y[i] = dotu(n, a + i * n, x);
    }
}

QNLO_AVX2 void grid_mul(std::size_t n, const cd* a, const cd* x, double c, cd* out) {
    const __m256d cv = _mm256_set1_pd(c);
    const double* ap = reinterpret_cast<const double*>(a);
    const double* xp = reinterpret_cast<const double*>(x);
    double* op = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(ap + 2 * i);
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d ae = _mm256_movedup_pd(av);
        const __m256d ao = _mm256_permute_pd(av, 0xF);
        _mm256_storeu_pd(op + 2 * i, _mm256_mul_pd(cv, cmul(ae, ao, xv)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c * (ar * xr - ai * xi), c * (ar * xi + ai * xr));
    }
}

QNLO_AVX2 void grid_mul_add(std::size_t n, const cd* a, const cd* x, const cd* y, double c1,
                            double c2, cd* out) {
    const __m256d c1v = _mm256_set1_pd(c1);
    const __m256d c2v = _mm256_set1_pd(c2);
    const double* ap = reinterpret_cast<const double*>(a);
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    double* op = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_loadu_pd(ap + 2 * i);
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d ae = _mm256_movedup_pd(av);
        const __m256d ao = _mm256_permute_pd(av, 0xF);
        const __m256d prod = cmul(ae, ao, xv);
        _mm256_storeu_pd(op + 2 * i, _mm256_fmadd_pd(c1v, prod, _mm256_mul_pd(c2v, yv)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c1 * (ar * xr - ai * xi) + c2 * y[i].real(),
                    c1 * (ar * xi + ai * xr) + c2 * y[i].imag());
    }
}

QNLO_AVX2 void grid_mul_add_conj(std::size_t n, const cd* a, const cd* x, const cd* y, double c1,
                                 double c2, cd* out) {
    const __m256d c1v = _mm256_set1_pd(c1);
    const __m256d c2v = _mm256_set1_pd(c2);
    const __m256d neg_odd = _mm256_set_pd(-0.0, 0.0, -0.0, 0.0);
    const double* ap = reinterpret_cast<const double*>(a);
    const double* xp = reinterpret_cast<const double*>(x);
    const double* yp = reinterpret_cast<const double*>(y);
    double* op = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d av = _mm256_xor_pd(_mm256_loadu_pd(ap + 2 * i), neg_odd);
        const __m256d xv = _mm256_loadu_pd(xp + 2 * i);
        const __m256d yv = _mm256_loadu_pd(yp + 2 * i);
        const __m256d ae = _mm256_movedup_pd(av);
        const __m256d ao = _mm256_permute_pd(av, 0xF);
        const __m256d prod = cmul(ae, ao, xv);
        _mm256_storeu_pd(op + 2 * i, _mm256_fmadd_pd(c1v, prod, _mm256_mul_pd(c2v, yv)));
    }
    for (; i < n; ++i) {
        const double ar = a[i].real(), ai = -a[i].imag();
        const double xr = x[i].real(), xi = x[i].imag();
        out[i] = cd(c1 * (ar * xr - ai * xi) + c2 * y[i].real(),
                    c1 * (ar * xi + ai * xr) + c2 * y[i].imag());
    }
}

QNLO_AVX2 void accum_re(std::size_t n, cd s, const cd* z, double* w) {
    const __m256d se = _mm256_set1_pd(s.real());
    const __m256d so = _mm256_set1_pd(s.imag());
    const double* zp = reinterpret_cast<const double*>(z);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d z0 = _mm256_loadu_pd(zp + 2 * i);
        const __m256d z1 = _mm256_loadu_pd(zp + 2 * i + 4);
        const __m256d r0 = cmul(se, so, z0);  // even lanes hold Re(s*z)
        const __m256d r1 = cmul(se, so, z1);
        // gather even lanes of r0, r1 into one vector, in element order
        const __m256d p0 = _mm256_permute4x64_pd(r0, 0xD8);  // [e0 e1 o0 o1]
        const __m256d p1 = _mm256_permute4x64_pd(r1, 0xD8);  // [e2 e3 o2 o3]
        const __m256d re = _mm256_permute2f128_pd(p0, p1, 0x20);
        _mm256_storeu_pd(w + i, _mm256_add_pd(_mm256_loadu_pd(w + i), re));
    }
    for (; i < n; ++i) {
        w[i] += s.real() * z[i].real() - s.imag() * z[i].imag();
    }
}

QNLO_AVX2 double dot_real(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

}  // namespace qnlo::kernels::avx2

#endif  // x86
