#pragma once

#include <vector>

#include "qnlo/cmatrix.hpp"

namespace qnlo::linalg {

struct EighResult {
    std::vector<double> values;  // ascending
    CMat vectors;                // column j is the eigenvector of values[j]
};

/// Hermitian eigendecomposition (values and vectors). Throws
/// EigensolveFailure when LAPACK does not converge.
EighResult eigh(const CMat& h);

/// Hermitian eigenvalues only (cheaper).
std::vector<double> eigvalsh(const CMat& h);

/// exp(factor * h) for Hermitian h, via eigendecomposition. Exact up to the
/// eigensolve: V diag(exp(factor*lambda)) V^dagger.
CMat expm_hermitian_scaled(const CMat& h, cd factor);

/// General matrix exponential, scaling-and-squaring with the degree-13 Pade
/// approximant. Used when the exponent is not (anti-)Hermitian-reducible.
CMat expm_pade(const CMat& a);

/// Matrix exponential choosing the route by structure: Hermitian and
/// anti-Hermitian exponents go through the eigendecomposition (relative
/// structure tolerance 1e-12), everything else through Pade.
CMat expm(const CMat& a);

/// Solve a x = b in place (b overwritten with the solution), partial-pivot LU.
void solve_inplace(CMat a, CMat& b);

/// Trace distance (1/2)||a - b||_1 between Hermitian matrices.
double trace_distance(const CMat& a, const CMat& b);

}  // namespace qnlo::linalg
