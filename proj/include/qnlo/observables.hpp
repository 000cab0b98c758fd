#pragma once

#include <array>
#include <string>
#include <vector>

#include "qnlo/fock.hpp"

namespace qnlo {

/// Raw negativity (1/2) sum(|lambda_i| - lambda_i) over the eigenvalues of
/// the qubit partial transpose. Caps at 1/2 for qubit (x) anything; the
/// figure-facing normalized value is 2x this (see negativity_normalized).
double negativity(const HybridDensity& rho);
double negativity(const HybridKet& psi);

inline double negativity_normalized(const HybridDensity& rho) { return 2.0 * negativity(rho); }
inline double negativity_normalized(const HybridKet& psi) { return 2.0 * negativity(psi); }

CMat reduce_qubit(const HybridKet& psi);
CMat reduce_qubit(const HybridDensity& rho);
OperatorMatrix reduce_osc(const HybridKet& psi);
OperatorMatrix reduce_osc(const HybridDensity& rho);

/// (2 Re rho_ud, -2 Im rho_ud, rho_uu - rho_dd) of a 2x2 qubit state.
std::array<double, 3> bloch_vector(const CMat& rho_qubit);

enum class QubitBranch { Up, Down };

/// <s|rho|s>: oscillator operator conditioned on a qubit outcome. Kept
/// unnormalized by default (trace ~ 1/2 for the usual initial condition);
/// pass normalized = true to rescale to unit trace.
OperatorMatrix conditioned_osc(const HybridKet& psi, QubitBranch branch, bool normalized = false);
OperatorMatrix conditioned_osc(const HybridDensity& rho, QubitBranch branch,
                               bool normalized = false);

// --- Wigner functions -------------------------------------------------------

/// AlphaPlane: W(beta) = (2/pi) Tr[rho D(beta)(-1)^N D†(beta)] sampled on
/// beta = x + i y. A coherent |a0> peaks at (Re a0, Im a0); integral dx dy is
/// Tr rho; pi * integral(W^2) = Tr rho^2; vacuum peak 2/pi.
/// Quadrature: same displaced-parity sum on beta = (x + i y)/sqrt(2) with
/// prefactor 1/pi -- the position-momentum kernel; vacuum peak 1/pi and
/// integral Tr rho, with axes sqrt(2) times the AlphaPlane ones.
enum class WignerConvention { AlphaPlane, Quadrature };

struct WignerGridSpec {
    double x_min = -4.5, x_max = 4.5;
    double y_min = -4.5, y_max = 4.5;
    int nx = 121, ny = 121;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dy() const { return (y_max - y_min) / (ny - 1); }
};

struct WignerGrid {
    std::vector<double> x_axis, y_axis;
    std::vector<double> values;  // ny x nx, row-major over y
    WignerConvention convention = WignerConvention::AlphaPlane;

    double value(int ix, int iy) const { return values[iy * x_axis.size() + ix]; }
    double cell_area() const;
    double integral() const;     // sum W dx dy
    double integral_sq() const;  // sum W^2 dx dy
};

/// Sampled Wigner function of an oscillator state (Laguerre recurrence over
/// the grid; no per-point displacement operators). Throws GridTooCoarse when
/// the spacing exceeds 0.25 (interference fringes would alias).
WignerGrid wigner(const OperatorMatrix& osc_state, const WignerGridSpec& spec,
                  WignerConvention convention = WignerConvention::AlphaPlane);

/// Riemann sum of W_up * W_down over the common grid.
double wigner_overlap(const WignerGrid& w_up, const WignerGrid& w_down);

/// Exact counterpart Tr(rho_up rho_down) / pi evaluated in the Fock basis.
double wigner_overlap_exact(const OperatorMatrix& rho_up, const OperatorMatrix& rho_down);

/// Tr(rho^2) in the Fock basis.
double purity(const OperatorMatrix& rho);

// --- squeezing ---------------------------------------------------------------

/// Variances of the rotated quadratures x_r = (a e^{-i phi} + a† e^{i phi})/2,
/// y_r at the angle phi_star in [0, pi) that minimizes Var(y_r). Obtained by
/// diagonalizing the 2x2 covariance matrix of (x, y) -- the exact minimizer of
/// the scan. Normalized entries are relative to the coherent baseline 1/4.
struct SqueezingRecord {
    double t = 0.0;
    double phi_star = 0.0;
    double var_x_r = 0.25, var_y_r = 0.25;
    double var_x_norm = 1.0, var_y_norm = 1.0;
    double uncertainty_product_norm = 1.0;
};

SqueezingRecord squeezing_scan(const OperatorMatrix& osc_state, double t = 0.0);

// --- time series and plateau detection ---------------------------------------

struct TimeSeries {
    std::string name;
    std::vector<double> t;
    std::vector<double> v;
};

struct PlateauReport {
    bool found = false;
    double t_lo = 0.0, t_hi = 0.0;
    double width = 0.0;
    double max_window_spread = 0.0;  // oscillation metric inside the plateau
};

/// Sliding-window plateau detector: the plateau is the longest interval where
/// the windowed peak-to-peak spread stays below osc_threshold and whose mean
/// exceeds the maximum of the series before it. Returns found = false rather
/// than failing when no window qualifies. Needs >= 100 uniform samples.
PlateauReport plateau_detect(const TimeSeries& series, double osc_threshold = 0.05,
                             double window = 6.283185307179586);

}  // namespace qnlo
