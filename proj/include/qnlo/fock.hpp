#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qnlo/cmatrix.hpp"
#include "qnlo/errors.hpp"

namespace qnlo {

/// Truncated Fock space parameters. The guard band is the top `margin`
/// levels (n_max - margin, n_max]; states are certified by requiring the
/// population there to stay below tail_tol.
struct FockTruncation {
    int n_max;
    double tail_tol;
    int margin;

    explicit FockTruncation(int n_max_, double tail_tol_ = 1e-9, int margin_ = 5)
        : n_max(n_max_), tail_tol(tail_tol_), margin(margin_) {
        if (n_max < 1) throw Error("FockTruncation: n_max must be >= 1");
        if (margin < 0) throw Error("FockTruncation: margin must be >= 0");
        if (n_max < margin + 1) throw Error("FockTruncation: n_max must be >= margin + 1");
        if (tail_tol <= 0) throw Error("FockTruncation: tail_tol must be positive");
    }

    int dim() const { return n_max + 1; }
    int hybrid_dim() const { return 2 * (n_max + 1); }
    /// First Fock index inside the guard band.
    int guard_start() const { return n_max - margin + 1; }
    /// Number of rows/cols of the certified (interior) sub-block.
    int certified_dim() const { return n_max - margin + 1; }
};

/// Dense operator on the truncated space with a Hermiticity hint. When the
/// hint is set the constructor enforces max|M - M^dag| <= 1e-12 * max|M|.
class OperatorMatrix {
public:
    OperatorMatrix(CMat m, bool hermitian = false) : mat_(std::move(m)), hermitian_(hermitian) {
        if (mat_.rows() != mat_.cols()) throw DimensionMismatch("operator must be square");
        if (hermitian_ && mat_.hermiticity_defect() > 1e-12 * std::max(mat_.max_abs(), 1e-300))
            throw NonHermitianInput("hermitian_flag set on a non-Hermitian matrix");
    }

    std::size_t dim() const { return mat_.rows(); }
    bool hermitian() const { return hermitian_; }
    const CMat& mat() const { return mat_; }
    CMat& mat() { return mat_; }
    cd operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

private:
    CMat mat_;
    bool hermitian_;
};

/// Pure state on qubit (x) truncated Fock space. Amplitudes are stored as
/// (spin-up block, spin-down block), each block Fock-ordered n = 0..n_max.
class HybridKet {
public:
    explicit HybridKet(int n_max) : n_max_(n_max), amp_(2 * (n_max + 1)) {}
    HybridKet(int n_max, std::vector<cd> amplitudes)
        : n_max_(n_max), amp_(std::move(amplitudes)) {
        if (amp_.size() != static_cast<std::size_t>(2 * (n_max + 1)))
            throw DimensionMismatch("HybridKet amplitude vector has wrong length");
    }

    int n_max() const { return n_max_; }
    int osc_dim() const { return n_max_ + 1; }
    int dim() const { return 2 * (n_max_ + 1); }

    std::span<cd> up() { return {amp_.data(), static_cast<std::size_t>(osc_dim())}; }
    std::span<const cd> up() const { return {amp_.data(), static_cast<std::size_t>(osc_dim())}; }
    std::span<cd> down() { return {amp_.data() + osc_dim(), static_cast<std::size_t>(osc_dim())}; }
    std::span<const cd> down() const {
        return {amp_.data() + osc_dim(), static_cast<std::size_t>(osc_dim())};
    }

    cd* data() { return amp_.data(); }
    const cd* data() const { return amp_.data(); }
    std::vector<cd>& amplitudes() { return amp_; }
    const std::vector<cd>& amplitudes() const { return amp_; }

    double norm() const;
    void normalize();

private:
    int n_max_;
    std::vector<cd> amp_;
};

/// Density operator on the hybrid space; Hermitian by construction.
class HybridDensity {
public:
    explicit HybridDensity(int n_max) : n_max_(n_max), mat_(2 * (n_max + 1), 2 * (n_max + 1)) {}
    HybridDensity(int n_max, CMat m) : n_max_(n_max), mat_(std::move(m)) {
        if (mat_.rows() != static_cast<std::size_t>(2 * (n_max + 1)) || mat_.rows() != mat_.cols())
            throw DimensionMismatch("HybridDensity matrix has wrong shape");
    }

    static HybridDensity from_ket(const HybridKet& psi);

    int n_max() const { return n_max_; }
    int osc_dim() const { return n_max_ + 1; }
    int dim() const { return 2 * (n_max_ + 1); }
    const CMat& mat() const { return mat_; }
    CMat& mat() { return mat_; }

    /// Checks trace = 1 (1e-8), Hermiticity (1e-10) and numerical positivity
    /// (min eigenvalue >= -1e-8). Throws on violation.
    void validate() const;

private:
    int n_max_;
    CMat mat_;
};

struct TruncationReport {
    double guard_population;
    double tail_tol;
    bool pass;
};

// --- operator builders -----------------------------------------------------

/// Annihilation operator: <n-1|a|n> = sqrt(n). On the truncated space a and
/// a^dag are exact adjoints, but the commutator [a, a^dag] picks up a corner
/// defect: it equals I except at (n_max, n_max) where it is -n_max. This is
/// inherent to the truncation; check_truncation monitors it rather than any
/// code correcting it.
OperatorMatrix annihilation(const FockTruncation& trunc);
OperatorMatrix creation(const FockTruncation& trunc);
OperatorMatrix number_op(const FockTruncation& trunc);
/// a^dag + a
OperatorMatrix position_quadrature(const FockTruncation& trunc);
/// (-1)^n diagonal parity
OperatorMatrix parity_op(const FockTruncation& trunc);

/// exp(alpha a^dag - conj(alpha) a). Requires |alpha|^2 + 6|alpha| <= n_max,
/// else TruncationTooSmall. Unitary to 1e-10 on the certified block.
OperatorMatrix displacement(cd alpha, const FockTruncation& trunc);

/// Normalized coherent state amplitudes e^{-|alpha|^2/2} alpha^n / sqrt(n!).
/// Same precondition as displacement.
std::vector<cd> coherent_ket(cd alpha, const FockTruncation& trunc);

/// Kronecker product q_op (x) o_op in the (qubit (x) Fock) ordering used by
/// HybridKet. q_op must be 2x2.
OperatorMatrix qubit_tensor(const CMat& q_op, const OperatorMatrix& o_op);

CMat pauli_x();
CMat pauli_y();
CMat pauli_z();
CMat identity2();

/// Guard-band population report for a state (ket or density).
TruncationReport check_truncation(const HybridKet& psi, const FockTruncation& trunc);
TruncationReport check_truncation(const HybridDensity& rho, const FockTruncation& trunc);
/// Same for a bare oscillator vector.
TruncationReport check_truncation(std::span<const cd> osc_vec, const FockTruncation& trunc);

}  // namespace qnlo
