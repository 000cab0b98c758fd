#pragma once

#include "qnlo/fock.hpp"
#include "qnlo/hamiltonians.hpp"

namespace qnlo {

/// Coherent-branch data of the delta = 0 solution at time t:
///   |psi> = (e^Phi |up>|alpha_up> + e^-Phi |down>|alpha_down>)/sqrt(2)
/// with eta = 1 - e^{-it}, Phi = i k Im(alpha eta) (purely imaginary) and a
/// global phase exp[i k^2 (t - sin t)].
struct LinearSolution {
    cd eta;
    cd phase;  // Phi
    cd alpha_up;
    cd alpha_down;
    cd global_phase;
};

LinearSolution linear_solution(const ScaledParams& p, double t);

/// The common initial condition (|up> + |down>)/sqrt(2) (x) |alpha>.
HybridKet initial_state(cd alpha, const FockTruncation& trunc);

/// Exact delta = 0 state (throws NonzeroDelta when p.delta != 0). Keeps all
/// phases so callers can compare state vectors by fidelity.
HybridKet linear_state(const ScaledParams& p, double t, const FockTruncation& trunc);

/// Raw negativity of the delta = 0 state: (1/2) sqrt(1 - |s|^2) with
/// s = <alpha_up|alpha_down> = exp(-2 k^2 |eta|^2) * phase.
double linear_negativity_closed_form(const ScaledParams& p, double t);

/// |up-down| element of the reduced qubit state: (1/2) e^{4 k^2 (cos t - 1)}.
double linear_qubit_coherence(const ScaledParams& p, double t);

/// Weak-coupling approximate state: coherent branches at
/// e^{-i(1+6 delta)t}(alpha -/+ k), Kerr phase exp[-6 i t delta N^2], then a
/// final displacement D(+/-k) per qubit branch. Only real alpha is supported
/// (the branch phases cancel only then); otherwise ComplexAlphaUnsupported.
/// Sets *approx_warning when k*delta*t*n_max^2 > 0.01 (the neglected
/// {k delta, k^2 delta, k^3 delta} terms may matter).
HybridKet rwa_state(const ScaledParams& p, double t, const FockTruncation& trunc,
                    bool* approx_warning = nullptr);

}  // namespace qnlo
