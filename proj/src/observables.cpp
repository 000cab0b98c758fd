#include "qnlo/observables.hpp"

#include <algorithm>
#include <cmath>

#include "qnlo/kernels.hpp"
#include "qnlo/linalg.hpp"

namespace qnlo {

namespace {

constexpr double kPi = 3.14159265358979323846;

CMat qubit_partial_transpose(const CMat& rho, int d) {
    // (rho^Tq)_{(s,n),(s',n')} = rho_{(s',n),(s,n')}: swap the off-diagonal
    // qubit blocks without transposing the oscillator indices.
    CMat pt(rho.rows(), rho.cols());
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp)
            for (int n = 0; n < d; ++n)
                for (int np = 0; np < d; ++np)
                    pt(s * d + n, sp * d + np) = rho(sp * d + n, s * d + np);
    return pt;
}

}  // namespace

double negativity(const HybridDensity& rho) {
    if (rho.mat().hermiticity_defect() > 1e-8)
        throw NonHermitianInput("negativity needs a Hermitian state");
    const CMat pt = qubit_partial_transpose(rho.mat(), rho.osc_dim());
    double neg = 0.0;
    for (double lam : linalg::eigvalsh(pt)) {
        if (lam < 0.0) neg -= lam;
    }
    return std::max(0.0, neg);
}

double negativity(const HybridKet& psi) {
    return negativity(HybridDensity::from_ket(psi));
}

CMat reduce_qubit(const HybridKet& psi) {
    const std::size_t d = psi.osc_dim();
    CMat q(2, 2);
    q(0, 0) = kernels::norm2(d, psi.up().data());
    q(1, 1) = kernels::norm2(d, psi.down().data());
    q(0, 1) = kernels::dotc(d, psi.down().data(), psi.up().data());
    q(1, 0) = std::conj(q(0, 1));
    return q;
}

CMat reduce_qubit(const HybridDensity& rho) {
    const int d = rho.osc_dim();
    CMat q(2, 2);
    for (int s = 0; s < 2; ++s)
        for (int sp = 0; sp < 2; ++sp) {
            cd sum = 0.0;
            for (int n = 0; n < d; ++n) sum += rho.mat()(s * d + n, sp * d + n);
            q(s, sp) = sum;
        }
    return q;
}

OperatorMatrix reduce_osc(const HybridKet& psi) {
    const int d = psi.osc_dim();
    CMat o(d, d);
    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np)
            o(n, np) = psi.up()[n] * std::conj(psi.up()[np]) +
                       psi.down()[n] * std::conj(psi.down()[np]);
    return {std::move(o), true};
}

OperatorMatrix reduce_osc(const HybridDensity& rho) {
    const int d = rho.osc_dim();
    CMat o(d, d);
    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np)
            o(n, np) = rho.mat()(n, np) + rho.mat()(d + n, d + np);
    return {std::move(o), true};
}

std::array<double, 3> bloch_vector(const CMat& rho_qubit) {
    if (rho_qubit.rows() != 2 || rho_qubit.cols() != 2)
        throw DimensionMismatch("bloch_vector needs a 2x2 state");
    return {2.0 * rho_qubit(0, 1).real(), -2.0 * rho_qubit(0, 1).imag(),
            (rho_qubit(0, 0) - rho_qubit(1, 1)).real()};
}

OperatorMatrix conditioned_osc(const HybridKet& psi, QubitBranch branch, bool normalized) {
    const int d = psi.osc_dim();
    const auto block = branch == QubitBranch::Up ? psi.up() : psi.down();
    CMat o(d, d);
    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np) o(n, np) = block[n] * std::conj(block[np]);
    if (normalized) {
        const double tr = o.trace().real();
        if (tr > 0.0) o *= cd(1.0 / tr, 0.0);
    }
    return {std::move(o), true};
}

OperatorMatrix conditioned_osc(const HybridDensity& rho, QubitBranch branch, bool normalized) {
    const int d = rho.osc_dim();
    const int off = branch == QubitBranch::Up ? 0 : d;
    CMat o(d, d);
    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np) o(n, np) = rho.mat()(off + n, off + np);
    if (normalized) {
        const double tr = o.trace().real();
        if (tr > 0.0) o *= cd(1.0 / tr, 0.0);
    }
    return {std::move(o), true};
}

// --- Wigner ------------------------------------------------------------------

double WignerGrid::cell_area() const {
    const double dx = x_axis.size() > 1 ? x_axis[1] - x_axis[0] : 0.0;
    const double dy = y_axis.size() > 1 ? y_axis[1] - y_axis[0] : 0.0;
    return dx * dy;
}

double WignerGrid::integral() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s * cell_area();
}

double WignerGrid::integral_sq() const {
    return kernels::dot_real(values.size(), values.data(), values.data()) * cell_area();
}

WignerGrid wigner(const OperatorMatrix& osc_state, const WignerGridSpec& spec,
                  WignerConvention convention) {
    const CMat& rho = osc_state.mat();
    if (rho.hermiticity_defect() > 1e-10 * std::max(1.0, rho.max_abs()))
        throw NonHermitianInput("wigner needs a Hermitian state");
    if (rho.trace().real() > 1.0 + 1e-8) throw Error("wigner needs trace <= 1");
    if (spec.nx < 2 || spec.ny < 2) throw Error("wigner grid needs at least 2x2 points");
    if (spec.dx() > 0.25 || spec.dy() > 0.25)
        throw GridTooCoarse("Wigner grid spacing above 0.25 aliases interference fringes");

    const int fock_dim = static_cast<int>(rho.rows());
    WignerGrid grid;
    grid.convention = convention;
    grid.x_axis.resize(spec.nx);
    grid.y_axis.resize(spec.ny);
    for (int i = 0; i < spec.nx; ++i) grid.x_axis[i] = spec.x_min + spec.dx() * i;
    for (int i = 0; i < spec.ny; ++i) grid.y_axis[i] = spec.y_min + spec.dy() * i;
    const std::size_t total = static_cast<std::size_t>(spec.nx) * spec.ny;
    grid.values.assign(total, 0.0);

    // beta = x + iy (alpha-plane) or (x + iy)/sqrt(2) (quadrature); the final
    // prefactor is 2/pi resp. 1/pi, folded into `out_scale` on top of the
    // 1/pi seed.
    const double beta_scale = convention == WignerConvention::AlphaPlane ? 1.0 : 1.0 / std::sqrt(2.0);
    const double out_scale = convention == WignerConvention::AlphaPlane ? 2.0 : 1.0;

    constexpr std::size_t kChunk = 4096;
    std::vector<std::vector<cd>> wl(fock_dim, std::vector<cd>(kChunk));
    std::vector<cd> a_grid(kChunk), carry(kChunk), scratch(kChunk);
    std::vector<double> acc(kChunk);

    std::vector<double> sq(fock_dim + 1);
    for (int n = 0; n <= fock_dim; ++n) sq[n] = std::sqrt(static_cast<double>(n));

    for (std::size_t base = 0; base < total; base += kChunk) {
        const std::size_t nchunk = std::min(kChunk, total - base);

        for (std::size_t q = 0; q < nchunk; ++q) {
            const std::size_t p = base + q;
            const double x = grid.x_axis[p % spec.nx];
            const double y = grid.y_axis[p / spec.nx];
            a_grid[q] = cd(beta_scale * x, beta_scale * y);
            wl[0][q] = cd(std::exp(-2.0 * std::norm(a_grid[q])) / kPi, 0.0);
        }
        std::fill(acc.begin(), acc.begin() + nchunk, 0.0);

        // row m = 0: K_{0,n} = (2 beta)^n / sqrt(n!) e^{-2|beta|^2}
        kernels::accum_re(nchunk, rho(0, 0), wl[0].data(), acc.data());
        for (int n = 1; n < fock_dim; ++n) {
            kernels::grid_mul(nchunk, a_grid.data(), wl[n - 1].data(), 2.0 / sq[n], wl[n].data());
            kernels::accum_re(nchunk, 2.0 * rho(0, n), wl[n].data(), acc.data());
        }
        // rows m >= 1 by Laguerre recurrences; wl[n] holds K_{m-1,n} entering
        // round m, carry tracks K_{m-1,n-1}
        for (int m = 1; m < fock_dim; ++m) {
            kernels::grid_mul_add_conj(nchunk, a_grid.data(), wl[m].data(), wl[m - 1].data(),
                                       2.0 / sq[m], -1.0, scratch.data());
            std::swap(wl[m], scratch);   // wl[m] = K_{m,m}
            std::swap(carry, scratch);   // carry = K_{m-1,m}
            kernels::accum_re(nchunk, rho(m, m), wl[m].data(), acc.data());
            for (int n = m + 1; n < fock_dim; ++n) {
                kernels::grid_mul_add(nchunk, a_grid.data(), wl[n - 1].data(), carry.data(),
                                      2.0 / sq[n], -sq[m] / sq[n], scratch.data());
                std::swap(wl[n], scratch);  // wl[n] = K_{m,n}
                std::swap(carry, scratch);  // carry = K_{m-1,n}
                kernels::accum_re(nchunk, 2.0 * rho(m, n), wl[n].data(), acc.data());
            }
        }

        for (std::size_t q = 0; q < nchunk; ++q) grid.values[base + q] = out_scale * acc[q];
    }
    return grid;
}

double wigner_overlap(const WignerGrid& w_up, const WignerGrid& w_down) {
    if (w_up.x_axis != w_down.x_axis || w_up.y_axis != w_down.y_axis ||
        w_up.convention != w_down.convention)
        throw GridMismatch("wigner_overlap needs identical grids");
    return kernels::dot_real(w_up.values.size(), w_up.values.data(), w_down.values.data()) *
           w_up.cell_area();
}

double wigner_overlap_exact(const OperatorMatrix& rho_up, const OperatorMatrix& rho_down) {
    if (rho_up.dim() != rho_down.dim())
        throw GridMismatch("conditioned states have different dimensions");
    // Tr(A B) = sum_ij A_ij conj(B_ij) for Hermitian B
    const std::size_t flat = rho_up.dim() * rho_up.dim();
    const cd t = kernels::dotc(flat, rho_down.mat().data(), rho_up.mat().data());
    return t.real() / kPi;
}

double purity(const OperatorMatrix& rho) {
    const std::size_t flat = rho.dim() * rho.dim();
    return kernels::norm2(flat, rho.mat().data());
}

// --- squeezing ---------------------------------------------------------------

SqueezingRecord squeezing_scan(const OperatorMatrix& osc_state, double t) {
    const CMat& rho = osc_state.mat();
    const int d = static_cast<int>(rho.rows());
    const double tr = rho.trace().real();
    if (tr <= 0.0) throw Error("squeezing_scan needs a positive-trace state");

    cd a_mean = 0.0, a2_mean = 0.0;
    double n_mean = 0.0;
    for (int n = 1; n < d; ++n) a_mean += std::sqrt(static_cast<double>(n)) * rho(n, n - 1);
    for (int n = 2; n < d; ++n)
        a2_mean += std::sqrt(static_cast<double>(n) * (n - 1)) * rho(n, n - 2);
    for (int n = 0; n < d; ++n) n_mean += n * rho(n, n).real();
    a_mean /= tr;
    a2_mean /= tr;
    n_mean /= tr;

    // x = (a + a^dag)/2, y = (a - a^dag)/(2i)
    const double x_mean = a_mean.real();
    const double y_mean = a_mean.imag();
    const double vxx = 0.25 * (2.0 * a2_mean.real() + 2.0 * n_mean + 1.0) - x_mean * x_mean;
    const double vyy = 0.25 * (-2.0 * a2_mean.real() + 2.0 * n_mean + 1.0) - y_mean * y_mean;
    const double cxy = 0.5 * a2_mean.imag() - x_mean * y_mean;

    const double mid = 0.5 * (vxx + vyy);
    const double b = 0.5 * (vxx - vyy);
    const double rad = std::sqrt(b * b + cxy * cxy);

    SqueezingRecord rec;
    rec.t = t;
    // Var(y_r) = mid - b cos(2 phi) - cxy sin(2 phi), minimal where
    // (cos, sin)(2 phi) aligns with (b, cxy)
    double phi = 0.5 * std::atan2(cxy, b);
    if (phi < 0.0) phi += kPi;
    rec.phi_star = phi;
    rec.var_y_r = mid - rad;
    rec.var_x_r = mid + rad;
    rec.var_x_norm = rec.var_x_r / 0.25;
    rec.var_y_norm = rec.var_y_r / 0.25;
    rec.uncertainty_product_norm = rec.var_x_norm * rec.var_y_norm;
    return rec;
}

// --- plateau -------------------------------------------------------------------

PlateauReport plateau_detect(const TimeSeries& series, double osc_threshold, double window) {
    const std::size_t n = series.v.size();
    if (n < 100 || series.t.size() != n)
        throw Error("plateau_detect needs a uniform series of at least 100 samples");
    const double dt = series.t[1] - series.t[0];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (std::abs((series.t[i + 1] - series.t[i]) - dt) > 1e-9 * std::max(1.0, std::abs(dt)))
            throw Error("plateau_detect needs uniform sampling");
    }

    const std::size_t w = std::max<std::size_t>(2, static_cast<std::size_t>(std::round(window / dt)) + 1);
    PlateauReport rep;
    if (w > n) return rep;

    // per-window peak-to-peak spread and mean
    const std::size_t n_windows = n - w + 1;
    std::vector<bool> flat(n_windows);
    std::vector<double> win_mean(n_windows);
    for (std::size_t s = 0; s < n_windows; ++s) {
        double lo = series.v[s], hi = series.v[s], sum = 0.0;
        for (std::size_t i = s; i < s + w; ++i) {
            lo = std::min(lo, series.v[i]);
            hi = std::max(hi, series.v[i]);
            sum += series.v[i];
        }
        flat[s] = (hi - lo) < osc_threshold;
        win_mean[s] = sum / static_cast<double>(w);
    }

    std::size_t best_len = 0, best_start = 0;
    std::size_t run_start = 0;
    bool in_run = false;
    auto consider = [&](std::size_t start, std::size_t end) {
        // candidate plateau: samples [start, end + w - 1]
        const std::size_t lo_i = start, hi_i = end + w - 1;
        double mean = 0.0;
        for (std::size_t i = lo_i; i <= hi_i; ++i) mean += series.v[i];
        mean /= static_cast<double>(hi_i - lo_i + 1);
        // settled-above condition: the plateau mean must top every windowed
        // mean seen strictly before it (window-vs-window, so a transient spike
        // during the rise does not veto a genuine plateau)
        double pre_max = -1e300;
        bool has_pre = false;
        for (std::size_t s = 0; s + w - 1 < lo_i; ++s) {
            pre_max = std::max(pre_max, win_mean[s]);
            has_pre = true;
        }
        if (has_pre && mean <= pre_max) return;
        const std::size_t len = hi_i - lo_i + 1;
        if (len > best_len) {
            best_len = len;
            best_start = lo_i;
        }
    };
    for (std::size_t s = 0; s < n_windows; ++s) {
        if (flat[s] && !in_run) {
            in_run = true;
            run_start = s;
        }
        if (!flat[s] && in_run) {
            in_run = false;
            consider(run_start, s - 1);
        }
    }
    if (in_run) consider(run_start, n_windows - 1);

    if (best_len == 0) return rep;
    rep.found = true;
    rep.t_lo = series.t[best_start];
    rep.t_hi = series.t[best_start + best_len - 1];
    rep.width = rep.t_hi - rep.t_lo;
    double lo = series.v[best_start], hi = series.v[best_start];
    for (std::size_t i = best_start; i < best_start + best_len; ++i) {
        lo = std::min(lo, series.v[i]);
        hi = std::max(hi, series.v[i]);
    }
    rep.max_window_spread = hi - lo;
    return rep;
}

}  // namespace qnlo
