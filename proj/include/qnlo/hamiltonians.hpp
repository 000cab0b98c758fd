#pragma once

#include <cmath>
#include <vector>

#include "qnlo/fock.hpp"

namespace qnlo {

/// Laboratory-frame parameters (SI units).
struct LabParams {
    double omega_q;      // qubit angular frequency, rad/s
    double omega_o;      // oscillator angular frequency, rad/s
    double mass;         // kg
    double g_tilde;      // qubit-position coupling, rad/(s*m)
    double delta_tilde;  // quartic strength, J/m^4

    void validate() const {
        if (omega_q <= 0 || omega_o <= 0 || mass <= 0)
            throw Error("LabParams: frequencies and mass must be positive");
        if (g_tilde < 0 || delta_tilde < 0)
            throw Error("LabParams: couplings must be non-negative");
    }
};

/// Dimensionless model parameters. Time is measured in 1/omega_o.
/// omega_q never enters the dynamics (sigma_z commutes with everything in the
/// interaction picture); it is kept only in LabParams.
struct ScaledParams {
    double k = 0.0;      // conditional-displacement coupling
    double delta = 0.0;  // quartic nonlinearity
    cd alpha = 0.0;      // initial coherent amplitude
    double gamma = 0.0;  // oscillator damping rate (0 = closed system)

    void validate() const {
        if (k < 0) throw Error("ScaledParams: k must be >= 0");
        if (delta < 0) throw Error("ScaledParams: delta must be >= 0");
        if (gamma < 0) throw Error("ScaledParams: gamma must be >= 0");
    }

    /// True when the single-frequency oscillator assumption looks shaky:
    /// delta * (|alpha| + 2k)^2 > 0.1 is a cheap a-priori proxy for
    /// delta * <N> getting close to 1.
    bool validity_warning() const {
        const double excursion = std::abs(alpha) + 2.0 * k;
        return delta * excursion * excursion > 0.1;
    }
};

enum class PhononLadderLevel { NumberStateOnly, UpToTwoPhonon, Full };

/// Map lab-frame parameters to the dimensionless set. alpha and gamma do not
/// derive from LabParams and are passed through.
ScaledParams scale_params(const LabParams& lab, cd alpha = 0.0, double gamma = 0.0);

/// H = a^dag a + delta (a^dag + a)^4 - k sigma_z (a^dag + a) on the hybrid
/// space. The quartic operator is the squared matrix of (a^dag + a)^2, so its
/// truncation defect is confined to the guard band.
OperatorMatrix build_full_hamiltonian(const ScaledParams& p, const FockTruncation& trunc);

/// Phonon-decomposition ladder. The Full level differs from
/// build_full_hamiltonian by the additive constant -3 delta I coming from the
/// normal ordering of (a^dag + a)^4; that shift is a global phase.
OperatorMatrix build_ladder_hamiltonian(const ScaledParams& p, PhononLadderLevel level,
                                        const FockTruncation& trunc);

/// H_RWA = (1 + 6 delta) a^dag a + 6 delta (a^dag a)^2 - k sigma_z (a^dag + a).
OperatorMatrix build_rwa_hamiltonian(const ScaledParams& p, const FockTruncation& trunc);

// Phonon-ladder pieces on the oscillator space (useful for identity tests).
OperatorMatrix quartic_four_phonon(const FockTruncation& trunc);   // a^dag^4 + a^4
OperatorMatrix quartic_two_phonon(const FockTruncation& trunc);    // 6(a^dag^2+a^2)+4(...)
OperatorMatrix quartic_number_state(const FockTruncation& trunc);  // 6((a^dag a)^2 + a^dag a)

/// Matrix-free Lindblad superoperator
///   rho -> -i[H, rho] + gamma/2 (2 a rho a^dag - a^dag a rho - rho a^dag a)
/// with a = I_qubit (x) a_osc. H is stored as per-row contiguous runs (every
/// Hamiltonian built here is block-banded), so one application costs
/// O(dim^2 * bandwidth) instead of a dense dim^3 product chain.
class LindbladGenerator {
public:
    LindbladGenerator(const ScaledParams& p, const OperatorMatrix& h);

    /// out = L(rho). Safe to call concurrently from different threads.
    void apply(const CMat& rho, CMat& out) const;
    CMat operator()(const CMat& rho) const;

    int dim() const { return dim_; }
    int osc_dim() const { return dim_ / 2; }
    double gamma() const { return gamma_; }

private:
    struct RowRuns {
        std::vector<int> start;           // first column of the run in each row
        std::vector<int> len;             // run length (0 for an all-zero row)
        std::vector<std::size_t> offset;  // index into vals
        std::vector<cd> vals;
    };
    static RowRuns extract_runs(const CMat& m);

    int dim_;
    double gamma_;
    RowRuns h_rows_;
    std::vector<double> sqrt_n_;  // sqrt(1..n_max) lookup
};

}  // namespace qnlo
