#include <doctest.h>

#include <cmath>
#include <numbers>

#include "qnlo/analytic.hpp"
#include "qnlo/evolve.hpp"
#include "qnlo/linalg.hpp"
#include "qnlo/observables.hpp"

using namespace qnlo;

namespace {

constexpr double kPi = std::numbers::pi;

cd mean_annihilation(const HybridKet& psi) {
    // <a> over the oscillator, summed across qubit blocks
    cd m = 0.0;
    const int d = psi.osc_dim();
    for (int s = 0; s < 2; ++s) {
        const auto block = s == 0 ? psi.up() : psi.down();
        for (int n = 1; n < d; ++n) {
            m += std::conj(block[n - 1]) * std::sqrt(static_cast<double>(n)) * block[n];
        }
    }
    return m;
}

cd mean_annihilation(const HybridDensity& rho) {
    cd m = 0.0;
    const int d = rho.osc_dim();
    for (int s = 0; s < 2; ++s)
        for (int n = 1; n < d; ++n)
            m += std::sqrt(static_cast<double>(n)) * rho.mat()(s * d + n, s * d + n - 1);
    return m;
}

}  // namespace

TEST_CASE("free evolution rotates a coherent state") {
    const FockTruncation t(40);
    ScaledParams p;  // k = delta = 0
    const auto h = build_full_hamiltonian(p, t);

    const cd alpha(1.3, 0.4);
    HybridKet psi0(t.n_max);
    const auto coh = coherent_ket(alpha, t);
    kernels::copy_scaled(coh.size(), cd(1.0, 0.0), coh.data(), psi0.up().data());

    const TimeGrid grid(0.0, 2.0 * kPi, 9);
    const auto res = evolve_unitary(h, psi0, grid, t);
    for (int i = 0; i < grid.n_samples; ++i) {
        const cd expected = alpha * std::exp(cd(0.0, -grid.time_at(i)));
        CHECK(std::abs(mean_annihilation(res.kets[i]) - expected) < 1e-8);
    }
}

TEST_CASE("unitary evolution matches the linear closed form at delta = 0") {
    const FockTruncation t(60);
    ScaledParams p;
    p.k = 0.5;
    p.delta = 0.0;
    p.alpha = 2.0;
    const auto h = build_full_hamiltonian(p, t);
    const HybridKet psi0 = initial_state(p.alpha, t);

    const TimeGrid grid(0.0, 2.0 * kPi, 33);
    const auto res = evolve_unitary(h, psi0, grid, t);
    for (int i = 0; i < grid.n_samples; ++i) {
        const HybridKet ref = linear_state(p, grid.time_at(i), t);
        const cd overlap =
            kernels::dotc(ref.amplitudes().size(), ref.data(), res.kets[i].data());
        CHECK(std::abs(overlap) >= 1.0 - 1e-8);
        CHECK(res.diagnostics[i].norm_drift <= 1e-9);
    }
}

TEST_CASE("unitary invariants: qubit populations and energy are conserved") {
    const FockTruncation t(60);
    ScaledParams p;
    p.k = 0.5;
    p.delta = 0.01;
    p.alpha = 2.0;
    const auto h = build_full_hamiltonian(p, t);
    HybridKet psi0 = initial_state(p.alpha, t);
    // asymmetric qubit weights make population conservation non-trivial
    kernels::scale(psi0.up().size(), cd(1.3, 0.0), psi0.up().data());
    psi0.normalize();

    const TimeGrid grid(0.0, 4.0 * kPi, 17);
    const auto res = evolve_unitary(h, psi0, grid, t);

    const double pop_up0 = kernels::norm2(psi0.up().size(), psi0.up().data());
    double e0 = 0.0;
    {
        const auto hpsi = h.mat() * psi0.amplitudes();
        e0 = kernels::dotc(hpsi.size(), psi0.data(), hpsi.data()).real();
    }
    for (const auto& ket : res.kets) {
        const double pop_up = kernels::norm2(ket.up().size(), ket.up().data());
        CHECK(std::abs(pop_up - pop_up0) < 1e-10);
        const auto hpsi = h.mat() * ket.amplitudes();
        const double e = kernels::dotc(hpsi.size(), ket.data(), hpsi.data()).real();
        CHECK(std::abs(e - e0) <= 1e-9 * std::max(1.0, std::abs(e0)));
    }
}

TEST_CASE("evolve_unitary raises TruncationBreached when n_max is too small") {
    const FockTruncation t(12, 1e-9, 3);
    ScaledParams p;
    p.k = 0.5;
    p.delta = 0.0;
    p.alpha = 1.0;  // fits the truncation precondition but leaks into the guard band
    const auto h = build_full_hamiltonian(p, t);
    const HybridKet psi0 = initial_state(p.alpha, t);
    const TimeGrid grid(0.0, 2.0 * kPi, 33);
    CHECK_THROWS_AS(evolve_unitary(h, psi0, grid, t), TruncationBreached);
}

TEST_CASE("lindblad with gamma = 0 agrees with unitary evolution") {
    const FockTruncation t(30, 1e-8, 4);
    ScaledParams p;
    p.k = 0.4;
    p.delta = 0.005;
    p.alpha = 1.2;
    const auto h = build_full_hamiltonian(p, t);
    const HybridKet psi0 = initial_state(p.alpha, t);

    const TimeGrid grid(0.0, kPi, 5);
    const auto uni = evolve_unitary(h, psi0, grid, t);
    const LindbladGenerator gen(p, h);
    const auto lind = evolve_lindblad(gen, HybridDensity::from_ket(psi0), grid, {}, t,
                                      /*observer=*/{}, /*keep_stride=*/1);

    REQUIRE(lind.densities.size() == static_cast<std::size_t>(grid.n_samples));
    for (int i = 0; i < grid.n_samples; ++i) {
        const auto rho_uni = HybridDensity::from_ket(uni.kets[i]);
        const double dist = linalg::trace_distance(rho_uni.mat(), lind.densities[i].mat());
        CHECK(dist < 1e-6);
        CHECK(lind.diagnostics[i].norm_drift < 1e-8);
    }
}

TEST_CASE("damped free oscillator: <a>(t) = alpha e^{-it - gamma t/2}") {
    const FockTruncation t(30, 1e-8, 4);
    ScaledParams p;
    p.gamma = 0.2;
    p.alpha = 1.5;
    const auto h = build_full_hamiltonian(p, t);  // k = delta = 0
    const LindbladGenerator gen(p, h);
    const HybridKet psi0 = initial_state(p.alpha, t);

    const TimeGrid grid(0.0, 2.0 * kPi, 9);
    const auto res = evolve_lindblad(gen, HybridDensity::from_ket(psi0), grid, {}, t, {}, 1);
    for (int i = 0; i < grid.n_samples; ++i) {
        const double time = grid.time_at(i);
        const cd expected = p.alpha * std::exp(cd(-0.5 * p.gamma * time, -time));
        CHECK(std::abs(mean_annihilation(res.densities[i]) - expected) < 1e-7);
    }
}

TEST_CASE("lindblad positivity and monotone negativity degradation") {
    const FockTruncation t(30, 1e-8, 4);
    ScaledParams p;
    p.k = 0.4;
    p.delta = 0.01;
    p.alpha = 1.2;
    const auto h = build_full_hamiltonian(p, t);
    const HybridKet psi0 = initial_state(p.alpha, t);
    const TimeGrid spot(0.0, kPi, 3);

    double neg_small = -1.0, neg_large = -1.0;
    for (double gamma : {0.005, 0.05}) {
        ScaledParams pg = p;
        pg.gamma = gamma;
        const LindbladGenerator gen(pg, h);
        const auto res = evolve_lindblad(gen, HybridDensity::from_ket(psi0), spot, {}, t, {}, 1);
        const auto& rho_end = res.densities.back();
        // physical density at every sample
        for (const auto& rho : res.densities) {
            CHECK(std::abs(rho.mat().trace().real() - 1.0) < 1e-8);
            const auto evs = linalg::eigvalsh(rho.mat());
            CHECK(evs.front() > -1e-6);
        }
        (gamma == 0.005 ? neg_small : neg_large) = negativity(rho_end);
    }
    CHECK(neg_small > neg_large);
}

TEST_CASE("lindblad convergence: halving tolerances barely moves the result") {
    const FockTruncation t(24, 1e-8, 4);
    ScaledParams p;
    p.k = 0.3;
    p.delta = 0.01;
    p.alpha = 1.0;
    p.gamma = 0.02;
    const auto h = build_full_hamiltonian(p, t);
    const LindbladGenerator gen(p, h);
    const HybridDensity rho0 = HybridDensity::from_ket(initial_state(p.alpha, t));
    const TimeGrid grid(0.0, kPi, 3);

    StepControl loose;  // defaults: rtol 1e-8, atol 1e-10
    StepControl tight;
    tight.rtol = 0.5e-8;
    tight.atol = 0.5e-10;
    const auto a = evolve_lindblad(gen, rho0, grid, loose, t, {}, grid.n_samples - 1);
    const auto b = evolve_lindblad(gen, rho0, grid, tight, t, {}, grid.n_samples - 1);
    CHECK(linalg::trace_distance(a.densities.back().mat(), b.densities.back().mat()) < 1e-7);
}

TEST_CASE("lindblad raises StepSizeUnderflow for impossible tolerances") {
    const FockTruncation t(16, 1e-6, 3);
    ScaledParams p;
    p.k = 0.2;
    p.delta = 0.01;
    p.alpha = 0.8;
    p.gamma = 0.1;
    const auto h = build_full_hamiltonian(p, t);
    const LindbladGenerator gen(p, h);
    const HybridDensity rho0 = HybridDensity::from_ket(initial_state(p.alpha, t));
    StepControl impossible;
    impossible.rtol = 1e-300;
    impossible.atol = 1e-300;
    const TimeGrid grid(0.0, 1.0, 3);
    CHECK_THROWS_AS(evolve_lindblad(gen, rho0, grid, impossible, t), StepSizeUnderflow);
}

TEST_CASE("validity_monitor") {
    // synthetic runs: the monitor only consumes diagnostics
    EvolutionResult res;
    for (int i = 0; i < 5; ++i) {
        res.diagnostics.push_back({0.1 * i, 0.0, 0.0, 4.0 + 0.1 * i});
    }

    ScaledParams ok;
    ok.delta = 0.0;
    CHECK(validity_monitor(res, ok).max_metric == 0.0);
    CHECK(validity_monitor(res, ok).pass);

    ScaledParams mid;
    mid.delta = 0.01;
    const auto rep = validity_monitor(res, mid);
    CHECK(rep.max_metric == doctest::Approx(0.044).epsilon(1e-12));
    CHECK(rep.pass);

    ScaledParams bad;
    bad.delta = 0.5;
    const auto rep2 = validity_monitor(res, bad);
    CHECK(rep2.max_metric >= 2.0);
    CHECK_FALSE(rep2.pass);
}
