#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qnlo/fock.hpp"
#include "qnlo/linalg.hpp"

using namespace qnlo;

namespace {

double max_abs_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double max_abs_diff_block(const CMat& a, const CMat& b, int d) {
    double m = 0.0;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

}  // namespace

TEST_CASE("FockTruncation invariants") {
    CHECK_THROWS_AS(FockTruncation(0), Error);
    CHECK_THROWS_AS(FockTruncation(5, 1e-9, 5), Error);  // n_max < margin + 1
    const FockTruncation t(10, 1e-9, 5);
    CHECK(t.dim() == 11);
    CHECK(t.hybrid_dim() == 22);
    CHECK(t.guard_start() == 6);
}

TEST_CASE("annihilation matrix elements") {
    const FockTruncation t(2, 1e-9, 1);
    const auto a = annihilation(t);
    CHECK(a(0, 1) == cd(1.0, 0.0));
    CHECK(std::abs(a(1, 2) - cd(std::sqrt(2.0), 0.0)) < 1e-15);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (!(i == 0 && j == 1) && !(i == 1 && j == 2)) CHECK(a(i, j) == cd(0.0, 0.0));

    // a|0> = 0
    std::vector<cd> vac(3);
    vac[0] = 1.0;
    const auto out = a.mat() * vac;
    for (const auto& z : out) CHECK(std::abs(z) < 1e-15);
}

TEST_CASE("number operator action and adjointness") {
    const FockTruncation t(12);
    const auto a = annihilation(t);
    const auto ad = creation(t);
    const CMat n_from_products = ad.mat() * a.mat();

    for (int n = 0; n < t.n_max; ++n) {
        std::vector<cd> e(t.dim());
        e[n] = 1.0;
        const auto out = n_from_products * e;
        CHECK(std::abs(out[n] - cd(n, 0.0)) < 1e-13);
    }
    // exact adjoints on the truncated space
    CHECK(max_abs_diff(ad.mat(), a.mat().adjoint()) == 0.0);
}

TEST_CASE("commutator [a, adag] = I except the -n_max corner") {
    const FockTruncation t(9, 1e-9, 3);
    const auto a = annihilation(t).mat();
    const auto ad = creation(t).mat();
    const CMat comm = a * ad - ad * a;
    for (int i = 0; i < t.dim(); ++i) {
        const double expected = (i == t.n_max) ? -static_cast<double>(t.n_max) : 1.0;
        CHECK(std::abs(comm(i, i) - cd(expected, 0.0)) < 1e-13);
    }
}

TEST_CASE("displacement basics") {
    const FockTruncation t(40);

    const auto d0 = displacement(0.0, t);
    CHECK(max_abs_diff(d0.mat(), CMat::identity(t.dim())) < 1e-12);

    // D(2)|0> is a coherent state with <N> = 4
    const auto d2 = displacement(2.0, t);
    std::vector<cd> vac(t.dim());
    vac[0] = 1.0;
    const auto coh = d2.mat() * vac;
    double n_mean = 0.0;
    for (int n = 0; n < t.dim(); ++n) n_mean += n * std::norm(coh[n]);
    CHECK(n_mean == doctest::Approx(4.0).epsilon(1e-6));

    // D(alpha) D(-alpha) = I on the certified block
    const cd alpha(1.3, -0.4);
    const CMat prod = displacement(alpha, t).mat() * displacement(-alpha, t).mat();
    CHECK(max_abs_diff_block(prod, CMat::identity(t.dim()), t.certified_dim()) < 1e-9);

    // unitarity on the lower block
    const CMat uu = d2.mat() * d2.mat().adjoint();
    CHECK(max_abs_diff_block(uu, CMat::identity(t.dim()), t.dim() - t.margin) < 1e-10);

    CHECK_THROWS_AS(displacement(4.0, FockTruncation(20)), TruncationTooSmall);
}

TEST_CASE("coherent_ket closed form and identities") {
    const FockTruncation t(40);

    const auto vac = coherent_ket(0.0, t);
    CHECK(std::abs(vac[0] - cd(1.0, 0.0)) < 1e-15);
    for (int n = 1; n < t.dim(); ++n) CHECK(std::abs(vac[n]) == 0.0);

    // amplitude at n=4 for alpha=2: e^{-2} * 16 / sqrt(24)
    const auto c2 = coherent_ket(2.0, t);
    CHECK(std::abs(c2[4] - cd(std::exp(-2.0) * 16.0 / std::sqrt(24.0), 0.0)) < 1e-12);

    // overlap identity <alpha|alpha'> = exp(-(|a|^2+|a'|^2)/2 + conj(a) a')
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int rep = 0; rep < 5; ++rep) {
        const cd a(u(rng), u(rng)), b(u(rng), u(rng));
        const auto ka = coherent_ket(a, t);
        const auto kb = coherent_ket(b, t);
        const cd overlap = kernels::dotc(ka.size(), ka.data(), kb.data());
        const cd expected =
            std::exp(-0.5 * (std::norm(a) + std::norm(b)) + std::conj(a) * b);
        CHECK(std::abs(overlap - expected) < 1e-12);
    }

    // coherent_ket(alpha) equals displacement(alpha)|0>
    std::vector<cd> vac_vec(t.dim());
    vac_vec[0] = 1.0;
    const auto via_d = displacement(2.0, t).mat() * vac_vec;
    for (int n = 0; n < t.certified_dim(); ++n) CHECK(std::abs(via_d[n] - c2[n]) < 1e-10);
}

TEST_CASE("qubit_tensor structure") {
    const FockTruncation t(3, 1e-9, 1);
    const auto id_osc = OperatorMatrix(CMat::identity(t.dim()), true);

    const auto ii = qubit_tensor(identity2(), id_osc);
    CHECK(max_abs_diff(ii.mat(), CMat::identity(2 * t.dim())) == 0.0);

    // sigma_z (x) I: +1 on the up block, -1 on the down block
    const auto sz = qubit_tensor(pauli_z(), id_osc);
    HybridKet psi(t.n_max);
    psi.up()[1] = cd(0.6, 0.0);
    psi.down()[2] = cd(0.0, 0.8);
    const auto out = sz.mat() * psi.amplitudes();
    CHECK(out[1] == cd(0.6, 0.0));
    CHECK(out[t.dim() + 2] == cd(0.0, -0.8));

    // element-by-element oracle for sigma_z (x) x at n_max=3
    const auto x = position_quadrature(t);
    const auto sx = qubit_tensor(pauli_z(), x);
    const int d = t.dim();
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            for (int n = 0; n < d; ++n)
                for (int np = 0; np < d; ++np) {
                    const double sign = (s == 0) ? 1.0 : -1.0;
                    const cd expected = (s == sp) ? sign * x(n, np) : cd(0.0, 0.0);
                    CHECK(std::abs(sx.mat()(s * d + n, sp * d + np) - expected) < 1e-15);
                }

    CMat bad(3, 3);
    CHECK_THROWS_AS(qubit_tensor(bad, id_osc), DimensionMismatch);
}

TEST_CASE("Kronecker product is compatible with matrix product") {
    // (A (x) B)(C (x) D) = AC (x) BD on random small matrices
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const FockTruncation t(4, 1e-9, 1);
    auto rand2 = [&] {
        CMat m(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = cd(u(rng), u(rng));
        return m;
    };
    auto rand_osc = [&] {
        CMat m(t.dim(), t.dim());
        for (int i = 0; i < t.dim(); ++i)
            for (int j = 0; j < t.dim(); ++j) m(i, j) = cd(u(rng), u(rng));
        return OperatorMatrix(m, false);
    };
    for (int rep = 0; rep < 4; ++rep) {
        const CMat a = rand2(), c = rand2();
        const OperatorMatrix b = rand_osc(), d = rand_osc();
        const CMat lhs = qubit_tensor(a, b).mat() * qubit_tensor(c, d).mat();
        const CMat rhs = qubit_tensor(a * c, OperatorMatrix(b.mat() * d.mat(), false)).mat();
        CHECK(max_abs_diff(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("check_truncation certifies and fails as expected") {
    // vacuum always passes
    {
        const FockTruncation t(10, 1e-9, 5);
        HybridKet psi(t.n_max);
        psi.up()[0] = 1.0;
        const auto rep = check_truncation(psi, t);
        CHECK(rep.guard_population == 0.0);
        CHECK(rep.pass);
    }

    // coherent alpha=2 at n_max=10, margin=5: Poisson guard-band mass is large.
    // Independent oracle: sum_{n=6..10} e^{-4} 4^n / n!
    {
        const FockTruncation t(10, 1e-6, 5);
        std::vector<cd> amps(t.dim());
        amps[0] = std::exp(-0.5 * 4.0);
        for (int n = 1; n <= t.n_max; ++n) amps[n] = amps[n - 1] * 2.0 / std::sqrt(n);
        double poisson_tail = 0.0;
        for (int n = t.guard_start(); n <= t.n_max; ++n) {
            poisson_tail += std::exp(-4.0 + n * std::log(4.0) - std::lgamma(n + 1.0));
        }
        const auto rep = check_truncation(std::span<const cd>(amps), t);
        CHECK(rep.guard_population == doctest::Approx(poisson_tail).epsilon(1e-10));
        CHECK(rep.guard_population > 1e-6);
        CHECK_FALSE(rep.pass);
    }

    // coherent alpha=2 at n_max=40 passes at 1e-10
    {
        const FockTruncation t(40, 1e-10, 5);
        const auto ket = coherent_ket(2.0, t);
        const auto rep = check_truncation(std::span<const cd>(ket), t);
        CHECK(rep.pass);
    }
}

TEST_CASE("OperatorMatrix hermitian hint is validated") {
    CMat m(2, 2);
    m(0, 1) = cd(0.0, 1.0);
    m(1, 0) = cd(0.0, 1.0);  // not Hermitian
    CHECK_THROWS_AS(OperatorMatrix(m, true), NonHermitianInput);
    CHECK_NOTHROW(OperatorMatrix(m, false));
}

TEST_CASE("HybridDensity validate") {
    const FockTruncation t(6, 1e-9, 2);
    HybridKet psi(t.n_max);
    psi.up()[0] = cd(1.0 / std::sqrt(2.0), 0.0);
    psi.down()[0] = cd(1.0 / std::sqrt(2.0), 0.0);
    const auto rho = HybridDensity::from_ket(psi);
    CHECK_NOTHROW(rho.validate());

    HybridDensity bad(t.n_max);
    bad.mat()(0, 0) = 2.0;  // trace 2
    CHECK_THROWS_AS(bad.validate(), Error);
}
