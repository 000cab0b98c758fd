#include <doctest.h>

#include <random>
#include <vector>

#include "qnlo/kernels.hpp"

using namespace qnlo::kernels;
using qnlo::kernels::cd;

namespace {

std::vector<cd> random_cvec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<cd> v(n);
    for (auto& z : v) z = cd(u(rng), u(rng));
    return v;
}

std::vector<double> random_rvec(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = u(rng);
    return v;
}

void check_close(const std::vector<cd>& a, const std::vector<cd>& b, double tol = 1e-13) {
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(std::abs(a[i] - b[i]) <= tol);
    }
}

// odd lengths exercise the vector tails
const std::size_t kLengths[] = {1, 2, 3, 7, 8, 64, 81, 162, 163};

}  // namespace

#if defined(__x86_64__) || defined(__i386__)

TEST_CASE("kernels: scalar and avx2 variants agree") {
    if (!avx2_supported()) return;
    std::mt19937_64 rng(41);

    for (std::size_t n : kLengths) {
        const auto x = random_cvec(rng, n);
        const auto y0 = random_cvec(rng, n);
        const cd a(0.3, -0.8);

        {
            auto ys = y0, yv = y0;
            scalar::caxpy(n, a, x.data(), ys.data());
            avx2::caxpy(n, a, x.data(), yv.data());
            check_close(ys, yv);
        }
        {
            std::vector<cd> ys(n), yv(n);
            scalar::copy_scaled(n, a, x.data(), ys.data());
            avx2::copy_scaled(n, a, x.data(), yv.data());
            check_close(ys, yv);
        }
        {
            auto xs = x, xv = x;
            scalar::scale(n, a, xs.data());
            avx2::scale(n, a, xv.data());
            check_close(xs, xv);
        }
        {
            const cd ds = scalar::dotc(n, x.data(), y0.data());
            const cd dv = avx2::dotc(n, x.data(), y0.data());
            CHECK(std::abs(ds - dv) <= 1e-13 * (1.0 + std::abs(ds)));
            const cd us = scalar::dotu(n, x.data(), y0.data());
            const cd uv = avx2::dotu(n, x.data(), y0.data());
            CHECK(std::abs(us - uv) <= 1e-13 * (1.0 + std::abs(us)));
            CHECK(scalar::norm2(n, x.data()) ==
                  doctest::Approx(avx2::norm2(n, x.data())).epsilon(1e-13));
        }
    }
}

TEST_CASE("kernels: matmul/matvec equivalence") {
    if (!avx2_supported()) return;
    std::mt19937_64 rng(42);
    const std::size_t m = 13, k = 9, n = 17;
    const auto a = random_cvec(rng, m * k);
    const auto b = random_cvec(rng, k * n);
    std::vector<cd> cs(m * n), cv(m * n);
    scalar::matmul(m, k, n, a.data(), b.data(), cs.data());
    avx2::matmul(m, k, n, a.data(), b.data(), cv.data());
    check_close(cs, cv, 1e-12);

    const auto x = random_cvec(rng, k);
    std::vector<cd> ys(m), yv(m);
    scalar::matvec(m, k, a.data(), x.data(), ys.data());
    avx2::matvec(m, k, a.data(), x.data(), yv.data());
    check_close(ys, yv, 1e-12);
}

TEST_CASE("kernels: grid step equivalence") {
    if (!avx2_supported()) return;
    std::mt19937_64 rng(43);
    for (std::size_t n : kLengths) {
        const auto a = random_cvec(rng, n);
        const auto x = random_cvec(rng, n);
        const auto y = random_cvec(rng, n);
        std::vector<cd> os(n), ov(n);

        scalar::grid_mul(n, a.data(), x.data(), 1.7, os.data());
        avx2::grid_mul(n, a.data(), x.data(), 1.7, ov.data());
        check_close(os, ov);

        scalar::grid_mul_add(n, a.data(), x.data(), y.data(), 2.0, -0.55, os.data());
        avx2::grid_mul_add(n, a.data(), x.data(), y.data(), 2.0, -0.55, ov.data());
        check_close(os, ov);

        scalar::grid_mul_add_conj(n, a.data(), x.data(), y.data(), 2.0, -0.55, os.data());
        avx2::grid_mul_add_conj(n, a.data(), x.data(), y.data(), 2.0, -0.55, ov.data());
        check_close(os, ov);

        auto ws = random_rvec(rng, n);
        auto wv = ws;
        const cd s(0.2, 0.9);
        scalar::accum_re(n, s, x.data(), ws.data());
        avx2::accum_re(n, s, x.data(), wv.data());
        for (std::size_t i = 0; i < n; ++i) CHECK(ws[i] == doctest::Approx(wv[i]).epsilon(1e-13));

        const auto r1 = random_rvec(rng, n);
        const auto r2 = random_rvec(rng, n);
        CHECK(scalar::dot_real(n, r1.data(), r2.data()) ==
              doctest::Approx(avx2::dot_real(n, r1.data(), r2.data())).epsilon(1e-13));
    }
}

#endif  // x86

TEST_CASE("kernels: scalar reference sanity") {
    // caxpy against hand arithmetic
    std::vector<cd> y = {cd(1, 1), cd(0, 0)};
    const std::vector<cd> x = {cd(2, 0), cd(0, 3)};
    scalar::caxpy(2, cd(0, 1), x.data(), y.data());
    CHECK(y[0] == cd(1, 3));
    CHECK(y[1] == cd(-3, 0));

    const cd d = scalar::dotc(2, x.data(), x.data());
    CHECK(d.real() == doctest::Approx(13.0));
    CHECK(d.imag() == doctest::Approx(0.0));
}

TEST_CASE("kernels: backend switching") {
    const Backend original = active_backend();
    set_backend(Backend::Scalar);
    CHECK(active_backend() == Backend::Scalar);
    std::vector<cd> y = {cd(0, 0)};
    const std::vector<cd> x = {cd(1, 0)};
    caxpy(1, cd(2, 0), x.data(), y.data());
    CHECK(y[0] == cd(2, 0));
    set_backend(original);
}
