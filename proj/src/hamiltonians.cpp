#include "qnlo/hamiltonians.hpp"

#include "qnlo/kernels.hpp"

namespace qnlo {

namespace {
constexpr double kHbar = 1.054571817e-34;  // J s
}

ScaledParams scale_params(const LabParams& lab, cd alpha, double gamma) {
    lab.validate();
    const double zpf2 = kHbar / (2.0 * lab.mass * lab.omega_o);  // x_zpf^2
    const double g = lab.g_tilde * std::sqrt(zpf2);
    ScaledParams p;
    p.k = g / lab.omega_o;
    p.delta = lab.delta_tilde / (kHbar * lab.omega_o) * zpf2 * zpf2;
    p.alpha = alpha;
    p.gamma = gamma;
    p.validate();
    return p;
}

namespace {

CMat hybridize(const CMat& h_osc, double k, const FockTruncation& trunc) {
    CMat h = qubit_tensor(identity2(), OperatorMatrix(h_osc, true)).mat();
    if (k != 0.0) {
        h -= cd(k, 0.0) * qubit_tensor(pauli_z(), position_quadrature(trunc)).mat();
    }
    return h;
}

}  // namespace

OperatorMatrix build_full_hamiltonian(const ScaledParams& p, const FockTruncation& trunc) {
    p.validate();
    const CMat x = position_quadrature(trunc).mat();
    const CMat x2 = x * x;
    CMat h_osc = number_op(trunc).mat();
    if (p.delta != 0.0) h_osc += cd(p.delta, 0.0) * (x2 * x2);
    return {hybridize(h_osc, p.k, trunc), true};
}

OperatorMatrix quartic_four_phonon(const FockTruncation& trunc) {
    const CMat a2 = annihilation(trunc).mat() * annihilation(trunc).mat();
    const CMat ad2 = creation(trunc).mat() * creation(trunc).mat();
    return {ad2 * ad2 + a2 * a2, true};
}

OperatorMatrix quartic_two_phonon(const FockTruncation& trunc) {
    const CMat a2 = annihilation(trunc).mat() * annihilation(trunc).mat();
    const CMat ad2 = creation(trunc).mat() * creation(trunc).mat();
    const CMat n = number_op(trunc).mat();
    return {cd(6.0, 0.0) * (ad2 + a2) + cd(4.0, 0.0) * (ad2 * n + n * a2), true};
}

OperatorMatrix quartic_number_state(const FockTruncation& trunc) {
    const int d = trunc.dim();
    CMat m(d, d);
    for (int n = 0; n < d; ++n) {
        m(n, n) = 6.0 * (static_cast<double>(n) * n + n);
    }
    return {std::move(m), true};
}

OperatorMatrix build_ladder_hamiltonian(const ScaledParams& p, PhononLadderLevel level,
                                        const FockTruncation& trunc) {
    p.validate();
    CMat h_osc = number_op(trunc).mat();
    if (p.delta != 0.0) {
        h_osc += cd(p.delta, 0.0) * quartic_number_state(trunc).mat();
        if (level != PhononLadderLevel::NumberStateOnly) {
            h_osc += cd(p.delta, 0.0) * quartic_two_phonon(trunc).mat();
        }
        if (level == PhononLadderLevel::Full) {
            h_osc += cd(p.delta, 0.0) * quartic_four_phonon(trunc).mat();
        }
    }
    return {hybridize(h_osc, p.k, trunc), true};
}

OperatorMatrix build_rwa_hamiltonian(const ScaledParams& p, const FockTruncation& trunc) {
    p.validate();
    const int d = trunc.dim();
    CMat h_osc(d, d);
    for (int n = 0; n < d; ++n) {
        const double nn = static_cast<double>(n);
        h_osc(n, n) = (1.0 + 6.0 * p.delta) * nn + 6.0 * p.delta * nn * nn;
    }
    return {hybridize(h_osc, p.k, trunc), true};
}

LindbladGenerator::RowRuns LindbladGenerator::extract_runs(const CMat& m) {
    const int n = static_cast<int>(m.rows());
    RowRuns r;
    r.start.resize(n);
    r.len.resize(n);
    r.offset.resize(n);
    for (int i = 0; i < n; ++i) {
        int first = -1, last = -1;
        for (int j = 0; j < n; ++j) {
            if (m(i, j) != cd(0.0, 0.0)) {
                if (first < 0) first = j;
                last = j;
            }
        }
        r.offset[i] = r.vals.size();
        if (first < 0) {
            r.start[i] = 0;
            r.len[i] = 0;
            continue;
        }
        r.start[i] = first;
        r.len[i] = last - first + 1;
        for (int j = first; j <= last; ++j) r.vals.push_back(m(i, j));
    }
    return r;
}

LindbladGenerator::LindbladGenerator(const ScaledParams& p, const OperatorMatrix& h)
    : dim_(static_cast<int>(h.dim())), gamma_(p.gamma) {
    p.validate();
    if (dim_ % 2 != 0) throw DimensionMismatch("Lindblad generator needs a hybrid (even) space");
    h_rows_ = extract_runs(h.mat());
    const int d = dim_ / 2;
    sqrt_n_.resize(d + 1);
    for (int n = 0; n <= d; ++n) sqrt_n_[n] = std::sqrt(static_cast<double>(n));
}

void LindbladGenerator::apply(const CMat& rho, CMat& out) const {
    if (static_cast<int>(rho.rows()) != dim_ || static_cast<int>(rho.cols()) != dim_)
        throw DimensionMismatch("Lindblad generator dimension mismatch");
    const std::size_t n = static_cast<std::size_t>(dim_);
    out.set_zero();

    const cd minus_i(0.0, -1.0);
    const cd plus_i(0.0, 1.0);

    // -i H rho: rows of H hit rows of rho
    for (int i = 0; i < dim_; ++i) {
        const cd* vals = h_rows_.vals.data() + h_rows_.offset[i];
        const int start = h_rows_.start[i];
        cd* out_row = out.row(i);
        for (int r = 0; r < h_rows_.len[i]; ++r) {
            kernels::caxpy(n, minus_i * vals[r], rho.row(start + r), out_row);
        }
    }
    // +i rho H: row i of rho combines rows of H into row i of out
    for (int i = 0; i < dim_; ++i) {
        const cd* rho_row = rho.row(i);
        cd* out_row = out.row(i);
        for (int k = 0; k < dim_; ++k) {
            const int len = h_rows_.len[k];
            if (len == 0) continue;
            kernels::caxpy(len, plus_i * rho_row[k], h_rows_.vals.data() + h_rows_.offset[k],
                           out_row + h_rows_.start[k]);
        }
    }

    if (gamma_ == 0.0) return;

    const int d = dim_ / 2;
    // gamma * a rho a^dag
    for (int s = 0; s < 2; ++s) {
        for (int fn = 0; fn + 1 < d; ++fn) {
            cd* out_row = out.row(s * d + fn);
            const cd* in_row = rho.row(s * d + fn + 1);
            const double cn = gamma_ * sqrt_n_[fn + 1];
            for (int t = 0; t < 2; ++t) {
                for (int fm = 0; fm + 1 < d; ++fm) {
                    out_row[t * d + fm] += cn * sqrt_n_[fm + 1] * in_row[t * d + fm + 1];
                }
            }
        }
    }
    // -gamma/2 (N rho + rho N)
    const double g2 = 0.5 * gamma_;
    for (int i = 0; i < dim_; ++i) {
        const double ni = static_cast<double>(i % d);
        cd* out_row = out.row(i);
        const cd* in_row = rho.row(i);
        for (int j = 0; j < dim_; ++j) {
            out_row[j] -= g2 * (ni + static_cast<double>(j % d)) * in_row[j];
        }
    }
}

CMat LindbladGenerator::operator()(const CMat& rho) const {
    CMat out(rho.rows(), rho.cols());
    apply(rho, out);
    return out;
}

}  // namespace qnlo
