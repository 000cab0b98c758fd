#include <doctest.h>

#include <cmath>
#include <random>

#include "qnlo/hamiltonians.hpp"
#include "qnlo/linalg.hpp"

using namespace qnlo;

namespace {

double max_abs_diff(const CMat& a, const CMat& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double max_abs_diff_certified(const CMat& a, const CMat& b, const FockTruncation& t) {
    // compare only interior rows/cols of each qubit block
    const int d = t.dim(), c = t.certified_dim();
    double m = 0.0;
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            for (int n = 0; n < c; ++n)
                for (int np = 0; np < c; ++np)
                    m = std::max(m, std::abs(a(s * d + n, sp * d + np) - b(s * d + n, sp * d + np)));
    return m;
}

CMat random_hermitian(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-0.5, 0.5);
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

}  // namespace

TEST_CASE("scale_params mapping") {
    LabParams lab{2 * 3.141592653589793 * 5e9, 2 * 3.141592653589793 * 10e6, 1e-18, 0.0, 0.0};

    // g_tilde = 0 -> k = 0; delta_tilde = 0 -> delta = 0
    auto p0 = scale_params(lab);
    CHECK(p0.k == 0.0);
    CHECK(p0.delta == 0.0);

    lab.g_tilde = 3e4;
    lab.delta_tilde = 1e-8;
    const auto p1 = scale_params(lab);
    CHECK(p1.k > 0.0);
    CHECK(p1.delta > 0.0);

    // doubling the mass divides delta by 4 and k by sqrt(2)
    LabParams heavier = lab;
    heavier.mass *= 2.0;
    const auto p2 = scale_params(heavier);
    CHECK(p2.delta == doctest::Approx(p1.delta / 4.0).epsilon(1e-12));
    CHECK(p2.k == doctest::Approx(p1.k / std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("full Hamiltonian structure") {
    const FockTruncation t(20, 1e-9, 4);

    // delta = 0, k = 0: diag(n) in each qubit block
    {
        ScaledParams p;
        p.k = 0.0;
        p.delta = 0.0;
        const auto h = build_full_hamiltonian(p, t);
        for (int i = 0; i < t.hybrid_dim(); ++i) {
            CHECK(std::abs(h(i, i) - cd(i % t.dim(), 0.0)) < 1e-14);
            for (int j = 0; j < t.hybrid_dim(); ++j)
                if (i != j) CHECK(std::abs(h(i, j)) < 1e-14);
        }
    }

    // <up,0|H|up,0> = 3*delta (normal-ordering constant of (a^dag+a)^4)
    {
        ScaledParams p;
        p.k = 0.0;
        p.delta = 0.37;
        const auto h = build_full_hamiltonian(p, t);
        CHECK(std::abs(h(0, 0) - cd(3.0 * p.delta, 0.0)) < 1e-12);
    }

    // Hermitian and commutes with sigma_z (x) I
    {
        ScaledParams p;
        p.k = 0.5;
        p.delta = 0.01;
        const auto h = build_full_hamiltonian(p, t);
        CHECK(h.mat().hermiticity_defect() <= 1e-12 * h.mat().max_abs());
        const auto sz = qubit_tensor(pauli_z(), OperatorMatrix(CMat::identity(t.dim()), true));
        const CMat comm = h.mat() * sz.mat() - sz.mat() * h.mat();
        CHECK(comm.max_abs() <= 1e-12 * h.mat().max_abs());
    }
}

TEST_CASE("phonon ladder decomposition") {
    const FockTruncation t(24, 1e-9, 5);

    // <2|A2|0> = 6 sqrt(2)
    const auto a2op = quartic_two_phonon(t);
    CHECK(std::abs(a2op(2, 0) - cd(6.0 * std::sqrt(2.0), 0.0)) < 1e-12);

    // (a^dag + a)^4 = A4 + A2 + Ans + 3 I on the certified sub-block
    const CMat x = position_quadrature(t).mat();
    const CMat x2 = x * x;
    const CMat quartic = x2 * x2;
    CMat sum = quartic_four_phonon(t).mat() + quartic_two_phonon(t).mat() +
               quartic_number_state(t).mat() + cd(3.0, 0.0) * CMat::identity(t.dim());
    const int c = t.certified_dim();
    double m = 0.0;
    for (int i = 0; i < c; ++i)
        for (int j = 0; j < c; ++j) m = std::max(m, std::abs(sum(i, j) - quartic(i, j)));
    CHECK(m < 1e-10);

    // Full ladder minus full Hamiltonian = -3 delta I on the certified block
    ScaledParams p;
    p.k = 0.5;
    p.delta = 0.01;
    const auto full = build_full_hamiltonian(p, t);
    const auto ladder = build_ladder_hamiltonian(p, PhononLadderLevel::Full, t);
    CMat expected = full.mat();
    expected -= cd(3.0 * p.delta, 0.0) * CMat::identity(t.hybrid_dim());
    CHECK(max_abs_diff_certified(ladder.mat(), expected, t) < 1e-10);

    // NumberStateOnly with delta = 0 equals the full Hamiltonian
    ScaledParams p0;
    p0.k = 0.3;
    p0.delta = 0.0;
    const auto ns = build_ladder_hamiltonian(p0, PhononLadderLevel::NumberStateOnly, t);
    const auto full0 = build_full_hamiltonian(p0, t);
    CHECK(max_abs_diff(ns.mat(), full0.mat()) < 1e-14);
}

TEST_CASE("RWA Hamiltonian") {
    const FockTruncation t(16, 1e-9, 3);

    ScaledParams p;
    p.k = 0.2;
    p.delta = 0.0;
    CHECK(max_abs_diff(build_rwa_hamiltonian(p, t).mat(), build_full_hamiltonian(p, t).mat()) <
          1e-14);

    p.delta = 0.003;
    const auto h = build_rwa_hamiltonian(p, t);
    // diagonal Fock element at n (qubit-up block, k folded into off-diagonals)
    for (int n = 0; n <= t.n_max; ++n) {
        const double expect = (1.0 + 6.0 * p.delta) * n + 6.0 * p.delta * n * n;
        CHECK(std::abs(h(n, n) - cd(expect, 0.0)) < 1e-12);
    }

    // commutes with the number operator when k = 0
    ScaledParams pk0 = p;
    pk0.k = 0.0;
    const auto h0 = build_rwa_hamiltonian(pk0, t);
    const auto n_op = qubit_tensor(identity2(), number_op(t));
    const CMat comm = h0.mat() * n_op.mat() - n_op.mat() * h0.mat();
    CHECK(comm.max_abs() < 1e-12);
}

TEST_CASE("Lindblad generator basics") {
    const FockTruncation t(10, 1e-9, 3);
    ScaledParams p;
    p.k = 0.4;
    p.delta = 0.01;
    p.gamma = 0.0;
    const auto h = build_full_hamiltonian(p, t);

    std::mt19937_64 rng(23);
    CMat rho = random_hermitian(rng, t.hybrid_dim());

    // gamma = 0: pure commutator, traceless output
    {
        const LindbladGenerator gen(p, h);
        const CMat out = gen(rho);
        CHECK(std::abs(out.trace()) <= 1e-12 * std::sqrt(kernels::norm2(
                                                 rho.rows() * rho.cols(), rho.data())));
        CMat expected = h.mat() * rho - rho * h.mat();
        expected *= cd(0.0, -1.0);
        CHECK(max_abs_diff(out, expected) < 1e-12);
    }

    // vacuum is a dark state of the damped oscillator
    {
        ScaledParams pg = p;
        pg.gamma = 0.3;
        ScaledParams free;  // k = delta = 0
        const auto h_free = build_full_hamiltonian(free, t);
        const LindbladGenerator gen(pg, OperatorMatrix(CMat(t.hybrid_dim(), t.hybrid_dim()), true));
        (void)h_free;
        CMat vac(t.hybrid_dim(), t.hybrid_dim());
        vac(0, 0) = 0.5;
        vac(t.dim(), t.dim()) = 0.5;  // |0><0| (x) maximally mixed qubit diag
        const CMat out = gen(vac);
        CHECK(out.max_abs() < 1e-14);
    }

    // d<N>/dt = -gamma on the Fock-1 projector
    {
        ScaledParams pg;
        pg.gamma = 0.25;
        const LindbladGenerator gen(pg, OperatorMatrix(CMat(t.hybrid_dim(), t.hybrid_dim()), true));
        CMat one(t.hybrid_dim(), t.hybrid_dim());
        one(1, 1) = 1.0;  // |up, n=1><up, n=1|
        const CMat out = gen(one);
        double dn = 0.0;
        for (int i = 0; i < t.hybrid_dim(); ++i) dn += (i % t.dim()) * out(i, i).real();
        CHECK(dn == doctest::Approx(-pg.gamma).epsilon(1e-12));
    }

    // trace preservation and Hermiticity preservation with damping on
    {
        ScaledParams pg = p;
        pg.gamma = 0.1;
        const LindbladGenerator gen(pg, h);
        const CMat out = gen(rho);
        CHECK(std::abs(out.trace()) <= 1e-12 * std::sqrt(kernels::norm2(
                                                 rho.rows() * rho.cols(), rho.data())));
        CHECK(out.hermiticity_defect() < 1e-12);
    }
}

TEST_CASE("Lindblad generator matches dense formula on random input") {
    const FockTruncation t(7, 1e-9, 2);
    ScaledParams p;
    p.k = 0.3;
    p.delta = 0.02;
    p.gamma = 0.17;
    const auto h = build_full_hamiltonian(p, t);
    const LindbladGenerator gen(p, h);

    const auto a_hyb = qubit_tensor(identity2(), annihilation(t)).mat();
    const CMat ad_hyb = a_hyb.adjoint();
    const CMat n_hyb = ad_hyb * a_hyb;

    std::mt19937_64 rng(5);
    for (int rep = 0; rep < 3; ++rep) {
        // arbitrary (non-Hermitian) input: the generator is linear and must
        // match the dense superoperator formula entrywise
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        CMat rho(t.hybrid_dim(), t.hybrid_dim());
        for (std::size_t i = 0; i < rho.rows(); ++i)
            for (std::size_t j = 0; j < rho.cols(); ++j) rho(i, j) = cd(u(rng), u(rng));

        CMat expected = h.mat() * rho - rho * h.mat();
        expected *= cd(0.0, -1.0);
        CMat diss = a_hyb * rho * ad_hyb;
        diss *= cd(2.0, 0.0);
        diss -= n_hyb * rho;
        diss -= rho * n_hyb;
        diss *= cd(0.5 * p.gamma, 0.0);
        expected += diss;

        CHECK(max_abs_diff(gen(rho), expected) < 1e-12);
    }
}
