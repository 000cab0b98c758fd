#include "qnlo/analytic.hpp"

#include <cmath>

#include "qnlo/kernels.hpp"

namespace qnlo {

namespace {

void require_linear(const ScaledParams& p) {
    if (p.delta != 0.0) throw NonzeroDelta("closed-form solution requires delta = 0");
}

constexpr double kInvSqrt2 = 0.7071067811865475244;

}  // namespace

HybridKet initial_state(cd alpha, const FockTruncation& trunc) {
    const auto coh = coherent_ket(alpha, trunc);
    HybridKet psi(trunc.n_max);
    kernels::copy_scaled(coh.size(), cd(kInvSqrt2, 0.0), coh.data(), psi.up().data());
    kernels::copy_scaled(coh.size(), cd(kInvSqrt2, 0.0), coh.data(), psi.down().data());
    return psi;
}

LinearSolution linear_solution(const ScaledParams& p, double t) {
    LinearSolution s;
    s.eta = cd(1.0, 0.0) - std::exp(cd(0.0, -t));
    s.phase = cd(0.0, p.k * std::imag(p.alpha * s.eta));
    const cd rotating = p.alpha * std::exp(cd(0.0, -t));
    s.alpha_up = rotating + p.k * s.eta;
    s.alpha_down = rotating - p.k * s.eta;
    s.global_phase = std::exp(cd(0.0, p.k * p.k * (t - std::sin(t))));
    return s;
}

HybridKet linear_state(const ScaledParams& p, double t, const FockTruncation& trunc) {
    require_linear(p);
    const LinearSolution s = linear_solution(p, t);

    const auto up = coherent_ket(s.alpha_up, trunc);
    const auto down = coherent_ket(s.alpha_down, trunc);

    HybridKet psi(trunc.n_max);
    const cd cu = kInvSqrt2 * s.global_phase * std::exp(s.phase);
    const cd cdn = kInvSqrt2 * s.global_phase * std::exp(-s.phase);
    kernels::copy_scaled(up.size(), cu, up.data(), psi.up().data());
    kernels::copy_scaled(down.size(), cdn, down.data(), psi.down().data());
    return psi;
}

double linear_negativity_closed_form(const ScaledParams& p, double t) {
    require_linear(p);
    const LinearSolution s = linear_solution(p, t);
    const double abs_overlap = std::exp(-2.0 * p.k * p.k * std::norm(s.eta));
    const double arg = std::max(0.0, 1.0 - abs_overlap * abs_overlap);
    return 0.5 * std::sqrt(arg);
}

double linear_qubit_coherence(const ScaledParams& p, double t) {
    require_linear(p);
    return 0.5 * std::exp(4.0 * p.k * p.k * (std::cos(t) - 1.0));
}

HybridKet rwa_state(const ScaledParams& p, double t, const FockTruncation& trunc,
                    bool* approx_warning) {
    p.validate();
    if (std::abs(p.alpha.imag()) > 1e-14 * std::max(1.0, std::abs(p.alpha))) {
        throw ComplexAlphaUnsupported("rwa_state is derived for real alpha only");
    }
    if (approx_warning) {
        const double nm2 = static_cast<double>(trunc.n_max) * trunc.n_max;
        *approx_warning = p.k * p.delta * std::abs(t) * nm2 > 0.01;
    }

    const cd rot = std::exp(cd(0.0, -(1.0 + 6.0 * p.delta) * t));
    auto branch = [&](double displaced_by, cd label) {
        std::vector<cd> v = coherent_ket(label, trunc);
        // Kerr phase is diagonal in the Fock basis
        for (int n = 0; n <= trunc.n_max; ++n) {
            v[n] *= std::exp(cd(0.0, -6.0 * t * p.delta * static_cast<double>(n) * n));
        }
        if (displaced_by != 0.0) {
            return displacement(displaced_by, trunc).mat() * v;
        }
        return v;
    };

    const auto up = branch(+p.k, rot * (p.alpha - p.k));
    const auto down = branch(-p.k, rot * (p.alpha + p.k));

    HybridKet psi(trunc.n_max);
    kernels::copy_scaled(up.size(), cd(kInvSqrt2, 0.0), up.data(), psi.up().data());
    kernels::copy_scaled(down.size(), cd(kInvSqrt2, 0.0), down.data(), psi.down().data());
    return psi;
}

}  // namespace qnlo
