#include <doctest.h>

#include <random>

#include "qnlo/linalg.hpp"

using namespace qnlo;

namespace {

CMat random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    CMat h(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        h(i, i) = u(rng);
        for (std::size_t j = i + 1; j < n; ++j) {
            h(i, j) = cd(u(rng), u(rng));
            h(j, i) = std::conj(h(i, j));
        }
    }
    return h;
}

double max_abs_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace

TEST_CASE("eigh reconstructs the input") {
    std::mt19937_64 rng(7);
    const CMat h = random_hermitian(rng, 12);
    const auto e = linalg::eigh(h);

    CMat lambda(12, 12);
    for (int i = 0; i < 12; ++i) lambda(i, i) = e.values[i];
    const CMat rebuilt = e.vectors * lambda * e.vectors.adjoint();
    CHECK(max_abs_diff(h, rebuilt) < 1e-12);

    const auto vals_only = linalg::eigvalsh(h);
    for (int i = 0; i < 12; ++i) CHECK(vals_only[i] == doctest::Approx(e.values[i]).epsilon(1e-12));
}

TEST_CASE("expm: Hermitian eigendecomposition route matches Pade route") {
    std::mt19937_64 rng(11);
    for (int rep = 0; rep < 3; ++rep) {
        const CMat h = random_hermitian(rng, 9);

        const CMat via_eig = linalg::expm_hermitian_scaled(h, 1.0);
        const CMat via_pade = linalg::expm_pade(h);
        CHECK(max_abs_diff(via_eig, via_pade) < 1e-12);

        // anti-Hermitian exponent: exp(i h)
        CMat ah = h;
        ah *= cd(0.0, 1.0);
        const CMat u_eig = linalg::expm(ah);
        const CMat u_pade = linalg::expm_pade(ah);
        CHECK(max_abs_diff(u_eig, u_pade) < 1e-12);

        // unitary output for anti-Hermitian exponent
        const CMat prod = u_eig * u_eig.adjoint();
        CHECK(max_abs_diff(prod, CMat::identity(9)) < 1e-12);
    }
}

TEST_CASE("expm on a diagonal matrix is elementwise exp") {
    CMat d(3, 3);
    d(0, 0) = cd(0.3, 0.0);
    d(1, 1) = cd(-1.2, 0.0);
    d(2, 2) = cd(0.0, 2.0);
    const CMat e = linalg::expm_pade(d);
    CHECK(std::abs(e(0, 0) - std::exp(cd(0.3, 0.0))) < 1e-14);
    CHECK(std::abs(e(1, 1) - std::exp(cd(-1.2, 0.0))) < 1e-14);
    CHECK(std::abs(e(2, 2) - std::exp(cd(0.0, 2.0))) < 1e-14);
    CHECK(std::abs(e(0, 1)) < 1e-15);
}

TEST_CASE("trace distance of identical and orthogonal projectors") {
    CMat p1(2, 2), p2(2, 2);
    p1(0, 0) = 1.0;
    p2(1, 1) = 1.0;
    CHECK(linalg::trace_distance(p1, p1) == doctest::Approx(0.0));
    CHECK(linalg::trace_distance(p1, p2) == doctest::Approx(1.0));
}
