#pragma once

#include <functional>
#include <vector>

#include "qnlo/fock.hpp"
#include "qnlo/hamiltonians.hpp"

namespace qnlo {

/// Uniform output grid in scaled time (units of 1/omega_o).
struct TimeGrid {
    double t_start;
    double t_end;
    int n_samples;

    TimeGrid(double t_start_, double t_end_, int n_samples_)
        : t_start(t_start_), t_end(t_end_), n_samples(n_samples_) {
        if (!(t_end > t_start)) throw Error("TimeGrid: t_end must exceed t_start");
        if (n_samples < 2) throw Error("TimeGrid: need at least 2 samples");
    }

    double dt() const { return (t_end - t_start) / (n_samples - 1); }
    double time_at(int i) const { return t_start + dt() * i; }
};

struct SampleDiagnostics {
    double t;
    double norm_drift;  // | ||psi|| - 1 | for kets, |Tr rho - 1| for densities
    double guard_population;
    double n_mean;  // <N> of the oscillator
};

struct EvolutionResult {
    double t_start, t_end;
    std::vector<HybridKet> kets;           // unitary runs
    std::vector<HybridDensity> densities;  // open-system runs (see keep_stride)
    std::vector<int> density_sample_index;
    std::vector<SampleDiagnostics> diagnostics;  // one entry per sample
};

struct StepControl {
    double rtol = 1e-8;
    double atol = 1e-10;
    double initial_step = 0.0;  // 0: (t_end - t_start) * 1e-4
};

using KetObserver = std::function<void(int sample, double t, const HybridKet&)>;
using DensityObserver = std::function<void(int sample, double t, const HybridDensity&)>;

/// exp(-i h t) psi0 with random access in t: one Hermitian eigendecomposition
/// up front, one matvec per query.
class UnitaryPropagator {
public:
    UnitaryPropagator(const OperatorMatrix& h, const HybridKet& psi0);
    HybridKet state_at(double t) const;
    int n_max() const { return n_max_; }

private:
    std::vector<double> values_;
    CMat vectors_;
    std::vector<cd> coeffs_;  // eigenbasis components of psi0
    int n_max_;
};

/// psi(t_i) = exp(-i h t_i) psi0 through one Hermitian eigendecomposition of
/// h, reused for every sample. Throws TruncationBreached when the guard-band
/// population exceeds trunc.tail_tol at any sample.
EvolutionResult evolve_unitary(const OperatorMatrix& h, const HybridKet& psi0,
                               const TimeGrid& grid, const FockTruncation& trunc,
                               const KetObserver& observer = {}, bool keep_states = true);

/// Adaptive Dormand-Prince 5(4) integration of drho/dt = gen(rho). The state
/// is re-symmetrized after each accepted step. Full density matrices are
/// retained only every keep_stride samples (0 keeps none); observers see
/// every sample, which keeps long runs at desk-scale memory.
EvolutionResult evolve_lindblad(const LindbladGenerator& gen, const HybridDensity& rho0,
                                const TimeGrid& grid, const StepControl& ctrl,
                                const FockTruncation& trunc,
                                const DensityObserver& observer = {}, int keep_stride = 0);

struct ValidityReport {
    double max_metric;  // max over samples of delta * <N>
    double threshold;
    bool pass;
};

/// Checks the single-frequency validity condition delta * <N> << 1 along a
/// run; flags when the metric exceeds 0.1.
ValidityReport validity_monitor(const EvolutionResult& result, const ScaledParams& p);

}  // namespace qnlo
