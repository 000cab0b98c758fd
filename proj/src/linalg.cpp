#include "qnlo/linalg.hpp"

#include <cmath>
#include <complex>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace qnlo::linalg {

EighResult eigh(const CMat& h) {
    const auto n = static_cast<lapack_int>(h.rows());
    EighResult r;
    r.values.resize(n);
    r.vectors = h;  // overwritten with eigenvectors (column-wise)
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, r.vectors.data(), n,
                                           r.values.data());
    if (info != 0) throw EigensolveFailure("zheevd failed, info=" + std::to_string(info));
    return r;
}

std::vector<double> eigvalsh(const CMat& h) {
    const auto n = static_cast<lapack_int>(h.rows());
    std::vector<double> w(n);
    CMat a = h;
    const lapack_int info = LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'N', 'U', n, a.data(), n, w.data());
    if (info != 0) throw EigensolveFailure("zheevd failed, info=" + std::to_string(info));
    return w;
}

CMat expm_hermitian_scaled(const CMat& h, cd factor) {
    const EighResult e = eigh(h);
    const std::size_t n = h.rows();
    // scaled = V diag(exp(factor*lambda)); columns scaled in place
    CMat scaled = e.vectors;
    for (std::size_t j = 0; j < n; ++j) {
        const cd phase = std::exp(factor * e.values[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= phase;
    }
    return scaled * e.vectors.adjoint();
}

void solve_inplace(CMat a, CMat& b) {
    const auto n = static_cast<lapack_int>(a.rows());
    const auto nrhs = static_cast<lapack_int>(b.cols());
    std::vector<lapack_int> ipiv(n);
    const lapack_int info =
        LAPACKE_zgesv(LAPACK_ROW_MAJOR, n, nrhs, a.data(), n, ipiv.data(), b.data(), nrhs);
    if (info != 0) throw EigensolveFailure("zgesv failed, info=" + std::to_string(info));
}

namespace {

double norm_1(const CMat& a) {
    double best = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < a.rows(); ++i) s += std::abs(a(i, j));
        best = std::max(best, s);
    }
    return best;
}

}  // namespace

CMat expm_pade(const CMat& a) {
    // Degree-13 Pade with scaling and squaring (Higham's coefficients).
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0, 1187353796428800.0,
        129060195264000.0,   10559470521600.0,    670442572800.0,     33522128640.0,
        1323241920.0,        40840800.0,          960960.0,           16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const std::size_t n = a.rows();
    const double nrm = norm_1(a);
    int squarings = 0;
    CMat as = a;
    if (nrm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(nrm / theta13)));
        as *= cd(std::ldexp(1.0, -squarings), 0.0);
    }

    const CMat eye = CMat::identity(n);
    const CMat a2 = as * as;
    const CMat a4 = a2 * a2;
    const CMat a6 = a2 * a4;

    CMat u_inner = b[13] * a6 + b[11] * a4 + b[9] * a2;
    CMat u = as * (a6 * u_inner + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * eye);
    CMat v_inner = b[12] * a6 + b[10] * a4 + b[8] * a2;
    CMat v = a6 * v_inner + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * eye;

    CMat num = v + u;
    const CMat den = v - u;
    solve_inplace(den, num);  // num <- den^{-1} num

    for (int i = 0; i < squarings; ++i) num = num * num;
    return num;
}

CMat expm(const CMat& a) {
    const double scale = a.max_abs();
    if (scale == 0.0) return CMat::identity(a.rows());
    const double tol = 1e-12 * scale;

    if (a.hermiticity_defect() <= tol) return expm_hermitian_scaled(a, 1.0);

    // anti-Hermitian: a = i*h with h = -i*a Hermitian
    CMat h = a;
    h *= cd(0.0, -1.0);
    if (h.hermiticity_defect() <= tol) return expm_hermitian_scaled(h, cd(0.0, 1.0));

    return expm_pade(a);
}

double trace_distance(const CMat& a, const CMat& b) {
    CMat d = a;
    d -= b;
    double s = 0.0;
    for (double lam : eigvalsh(d)) s += std::abs(lam);
    return 0.5 * s;
}

}  // namespace qnlo::linalg
