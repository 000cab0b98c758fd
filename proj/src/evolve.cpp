#include "qnlo/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "qnlo/kernels.hpp"
#include "qnlo/linalg.hpp"

namespace qnlo {

namespace {

double ket_n_mean(const HybridKet& psi) {
    const int d = psi.osc_dim();
    double s = 0.0;
    for (int n = 0; n < d; ++n) {
        s += n * (std::norm(psi.up()[n]) + std::norm(psi.down()[n]));
    }
    return s;
}

double density_n_mean(const CMat& rho, int osc_dim) {
    double s = 0.0;
    for (int i = 0; i < static_cast<int>(rho.rows()); ++i) {
        s += (i % osc_dim) * rho(i, i).real();
    }
    return s;
}

void symmetrize(CMat& m) {
    const std::size_t n = m.rows();
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = cd(m(i, i).real(), 0.0);
        for (std::size_t j = i + 1; j < n; ++j) {
            const cd avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = avg;
            m(j, i) = std::conj(avg);
        }
    }
}

}  // namespace

UnitaryPropagator::UnitaryPropagator(const OperatorMatrix& h, const HybridKet& psi0)
    : n_max_(psi0.n_max()) {
    if (h.dim() != static_cast<std::size_t>(psi0.dim()))
        throw DimensionMismatch("Hamiltonian and state dimensions differ");
    if (!h.hermitian() && h.mat().hermiticity_defect() > 1e-10 * std::max(1.0, h.mat().max_abs()))
        throw NonHermitianInput("unitary propagation needs a Hermitian Hamiltonian");
    auto eig = linalg::eigh(h.mat());
    values_ = std::move(eig.values);
    vectors_ = std::move(eig.vectors);
    coeffs_ = vectors_.adjoint() * psi0.amplitudes();
}

HybridKet UnitaryPropagator::state_at(double t) const {
    const int dim = static_cast<int>(coeffs_.size());
    std::vector<cd> w(dim);
    for (int j = 0; j < dim; ++j) {
        w[j] = coeffs_[j] * std::exp(cd(0.0, -values_[j] * t));
    }
    HybridKet psi(n_max_);
    kernels::matvec(dim, dim, vectors_.data(), w.data(), psi.data());
    return psi;
}

EvolutionResult evolve_unitary(const OperatorMatrix& h, const HybridKet& psi0,
                               const TimeGrid& grid, const FockTruncation& trunc,
                               const KetObserver& observer, bool keep_states) {
    const UnitaryPropagator prop(h, psi0);

    EvolutionResult res;
    res.t_start = grid.t_start;
    res.t_end = grid.t_end;
    res.diagnostics.reserve(grid.n_samples);
    if (keep_states) res.kets.reserve(grid.n_samples);

    for (int i = 0; i < grid.n_samples; ++i) {
        const double t = grid.time_at(i);
        HybridKet psi = prop.state_at(t);

        const auto rep = check_truncation(psi, trunc);
        SampleDiagnostics diag;
        diag.t = t;
        diag.norm_drift = std::abs(psi.norm() - 1.0);
        diag.guard_population = rep.guard_population;
        diag.n_mean = ket_n_mean(psi);
        res.diagnostics.push_back(diag);
        if (!rep.pass) {
            throw TruncationBreached("guard-band population " +
                                     std::to_string(rep.guard_population) + " at t=" +
                                     std::to_string(t) + "; enlarge n_max");
        }

        if (observer) observer(i, t, psi);
        if (keep_states) res.kets.push_back(std::move(psi));
    }
    return res;
}

namespace {

// Dormand-Prince 5(4) coefficients
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// error weights: 5th-order b minus 4th-order b
constexpr double kE[7] = {71.0 / 57600,      0.0,          -71.0 / 16695, 71.0 / 1920,
                          -17253.0 / 339200, 22.0 / 525,   -1.0 / 40};

}  // namespace

EvolutionResult evolve_lindblad(const LindbladGenerator& gen, const HybridDensity& rho0,
                                const TimeGrid& grid, const StepControl& ctrl,
                                const FockTruncation& trunc,
                                const DensityObserver& observer, int keep_stride) {
    const int dim = gen.dim();
    if (rho0.dim() != dim) throw DimensionMismatch("initial density dimension mismatch");
    const std::size_t flat = static_cast<std::size_t>(dim) * dim;
    const double span = grid.t_end - grid.t_start;

    EvolutionResult res;
    res.t_start = grid.t_start;
    res.t_end = grid.t_end;
    res.diagnostics.reserve(grid.n_samples);

    CMat y = rho0.mat();
    CMat ytmp(dim, dim), ynew(dim, dim);
    std::vector<CMat> k;
    for (int i = 0; i < 7; ++i) k.emplace_back(dim, dim);

    double h = ctrl.initial_step > 0.0 ? ctrl.initial_step : span * 1e-4;
    const double h_min = span * 1e-14;

    HybridDensity snapshot(rho0.n_max());

    auto record_sample = [&](int idx, double t) {
        SampleDiagnostics diag;
        diag.t = t;
        diag.norm_drift = std::abs(y.trace() - cd(1.0, 0.0));
        double guard = 0.0;
        for (int n = trunc.guard_start(); n <= trunc.n_max; ++n) {
            guard += y(n, n).real() + y(trunc.dim() + n, trunc.dim() + n).real();
        }
        diag.guard_population = guard;
        diag.n_mean = density_n_mean(y, gen.osc_dim());
        res.diagnostics.push_back(diag);
        if (guard > trunc.tail_tol) {
            throw TruncationBreached("guard-band population " + std::to_string(guard) +
                                     " at t=" + std::to_string(t) + "; enlarge n_max");
        }
        const bool keep = keep_stride > 0 && idx % keep_stride == 0;
        if (observer || keep) {
            snapshot.mat() = y;
            if (observer) observer(idx, t, snapshot);
            if (keep) {
                res.densities.push_back(snapshot);
                res.density_sample_index.push_back(idx);
            }
        }
    };

    double t = grid.t_start;
    record_sample(0, t);

    for (int target = 1; target < grid.n_samples; ++target) {
        const double t_target = grid.time_at(target);
        while (t < t_target - 1e-14 * span) {
            const double h_try = std::min(h, t_target - t);

            gen.apply(y, k[0]);
            for (int stage = 1; stage < 7; ++stage) {
                std::copy(y.data(), y.data() + flat, ytmp.data());
                for (int j = 0; j < stage; ++j) {
                    if (kA[stage][j] != 0.0)
                        kernels::caxpy(flat, cd(h_try * kA[stage][j], 0.0), k[j].data(),
                                       ytmp.data());
                }
                if (stage == 6) {
                    // 7th stage is evaluated at y_{n+1} (the 5th-order result)
                    std::copy(ytmp.data(), ytmp.data() + flat, ynew.data());
                }
                gen.apply(ytmp, k[stage]);
            }

            // scaled RMS error over entries
            double err_sq = 0.0;
            for (std::size_t i = 0; i < flat; ++i) {
                cd e(0.0, 0.0);
                for (int j = 0; j < 7; ++j) e += kE[j] * k[j].data()[i];
                const double scale =
                    ctrl.atol + ctrl.rtol * std::max(std::abs(y.data()[i]),
                                                     std::abs(ynew.data()[i]));
                const double r = std::abs(e) * h_try / scale;
                err_sq += r * r;
            }
            const double err = std::sqrt(err_sq / static_cast<double>(flat));

            if (err <= 1.0) {
                t += h_try;
                std::swap(y, ynew);
                symmetrize(y);
                const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h = h_try * std::clamp(grow, 0.2, 5.0);
            } else {
                h = h_try * std::clamp(0.9 * std::pow(err, -0.2), 0.2, 1.0);
                if (h < h_min) {
                    throw StepSizeUnderflow("Lindblad step collapsed below " +
                                            std::to_string(h_min) + " at t=" +
                                            std::to_string(t));
                }
            }
        }
        t = t_target;
        record_sample(target, t);
    }
    return res;
}

ValidityReport validity_monitor(const EvolutionResult& result, const ScaledParams& p) {
    double m = 0.0;
    for (const auto& d : result.diagnostics) m = std::max(m, p.delta * d.n_mean);
    return {m, 0.1, m <= 0.1};
}

}  // namespace qnlo
