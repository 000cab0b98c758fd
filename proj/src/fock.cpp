#include "qnlo/fock.hpp"

#include <cmath>

#include "qnlo/kernels.hpp"
#include "qnlo/linalg.hpp"

namespace qnlo {

double HybridKet::norm() const {
    return std::sqrt(kernels::norm2(amp_.size(), amp_.data()));
}

void HybridKet::normalize() {
    const double n = norm();
    if (n == 0.0) throw Error("cannot normalize a zero ket");
    kernels::scale(amp_.size(), cd(1.0 / n, 0.0), amp_.data());
}

HybridDensity HybridDensity::from_ket(const HybridKet& psi) {
    const int d = psi.dim();
    HybridDensity rho(psi.n_max());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            rho.mat()(i, j) = psi.data()[i] * std::conj(psi.data()[j]);
        }
    }
    return rho;
}

void HybridDensity::validate() const {
    const double tr_err = std::abs(mat_.trace() - cd(1.0, 0.0));
    if (tr_err > 1e-8) throw Error("density trace deviates from 1 by " + std::to_string(tr_err));
    if (mat_.hermiticity_defect() > 1e-10) throw NonHermitianInput("density not Hermitian");
    const auto evs = linalg::eigvalsh(mat_);
    if (!evs.empty() && evs.front() < -1e-8)
        throw Error("density has eigenvalue " + std::to_string(evs.front()));
}

OperatorMatrix annihilation(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat a(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return {std::move(a), false};
}

OperatorMatrix creation(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat ad(d, d);
    for (int n = 1; n < d; ++n) ad(n, n - 1) = std::sqrt(static_cast<double>(n));
    return {std::move(ad), false};
}

OperatorMatrix number_op(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat n_op(d, d);
    for (int n = 0; n < d; ++n) n_op(n, n) = static_cast<double>(n);
    return {std::move(n_op), true};
}

OperatorMatrix position_quadrature(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat x(d, d);
    for (int n = 1; n < d; ++n) {
        const double r = std::sqrt(static_cast<double>(n));
        x(n - 1, n) = r;
        x(n, n - 1) = r;
    }
    return {std::move(x), true};
}

OperatorMatrix parity_op(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat p(d, d);
    for (int n = 0; n < d; ++n) p(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
    return {std::move(p), true};
}

namespace {

void require_displacement_fits(cd alpha, const FockTruncation& trunc) {
    const double a = std::abs(alpha);
    if (a * a + 6.0 * a > static_cast<double>(trunc.n_max)) {
        throw TruncationTooSmall("displacement amplitude |alpha|=" + std::to_string(a) +
                                 " needs n_max >= " + std::to_string(a * a + 6.0 * a) +
                                 ", have " + std::to_string(trunc.n_max));
    }
}

}  // namespace

OperatorMatrix displacement(cd alpha, const FockTruncation& trunc) {
    require_displacement_fits(alpha, trunc);
    const int d = trunc.dim();
    // exponent alpha a^dag - conj(alpha) a is anti-Hermitian; expm picks the
    // eigendecomposition route
    CMat expnt(d, d);
    for (int n = 1; n < d; ++n) {
        const double r = std::sqrt(static_cast<double>(n));
        expnt(n, n - 1) = alpha * r;
        expnt(n - 1, n) = -std::conj(alpha) * r;
    }
    return {linalg::expm(expnt), false};
}

std::vector<cd> coherent_ket(cd alpha, const FockTruncation& trunc) {
    require_displacement_fits(alpha, trunc);
    const int d = trunc.dim();
    std::vector<cd> v(d);
    v[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    const double nrm = std::sqrt(kernels::norm2(v.size(), v.data()));
    kernels::scale(v.size(), cd(1.0 / nrm, 0.0), v.data());
    return v;
}

OperatorMatrix qubit_tensor(const CMat& q_op, const OperatorMatrix& o_op) {
    if (q_op.rows() != 2 || q_op.cols() != 2)
        throw DimensionMismatch("qubit operator must be 2x2");
    const std::size_t d = o_op.dim();
    CMat out(2 * d, 2 * d);
    for (std::size_t s = 0; s < 2; ++s) {
        for (std::size_t t = 0; t < 2; ++t) {
            const cd q = q_op(s, t);
            if (q == cd(0.0, 0.0)) continue;
            for (std::size_t i = 0; i < d; ++i) {
                kernels::caxpy(d, q, o_op.mat().row(i), out.row(s * d + i) + t * d);
            }
        }
    }
    const bool herm = o_op.hermitian() && q_op.hermiticity_defect() == 0.0;
    return {std::move(out), herm};
}

CMat pauli_x() {
    CMat m(2, 2);
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}

CMat pauli_y() {
    CMat m(2, 2);
    m(0, 1) = cd(0.0, -1.0);
    m(1, 0) = cd(0.0, 1.0);
    return m;
}

CMat pauli_z() {
    CMat m(2, 2);
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

CMat identity2() {
    return CMat::identity(2);
}

TruncationReport check_truncation(std::span<const cd> osc_vec, const FockTruncation& trunc) {
    if (osc_vec.size() != static_cast<std::size_t>(trunc.dim()))
        throw DimensionMismatch("state length does not match truncation");
    double pop = 0.0;
    for (int n = trunc.guard_start(); n <= trunc.n_max; ++n) pop += std::norm(osc_vec[n]);
    return {pop, trunc.tail_tol, pop <= trunc.tail_tol};
}

TruncationReport check_truncation(const HybridKet& psi, const FockTruncation& trunc) {
    if (psi.n_max() != trunc.n_max)
        throw DimensionMismatch("ket n_max does not match truncation");
    double pop = 0.0;
    for (int n = trunc.guard_start(); n <= trunc.n_max; ++n) {
        pop += std::norm(psi.up()[n]) + std::norm(psi.down()[n]);
    }
    return {pop, trunc.tail_tol, pop <= trunc.tail_tol};
}

TruncationReport check_truncation(const HybridDensity& rho, const FockTruncation& trunc) {
    if (rho.n_max() != trunc.n_max)
        throw DimensionMismatch("density n_max does not match truncation");
    const int d = trunc.dim();
    double pop = 0.0;
    for (int n = trunc.guard_start(); n <= trunc.n_max; ++n) {
        pop += rho.mat()(n, n).real() + rho.mat()(d + n, d + n).real();
    }
    return {pop, trunc.tail_tol, pop <= trunc.tail_tol};
}

}  // namespace qnlo
