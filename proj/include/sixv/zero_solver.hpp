#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sixv/curve.hpp"
#include "sixv/functional.hpp"
#include "sixv/model.hpp"
#include "sixv/oracle.hpp"

namespace sixv {

/// Expand Lambda0 prod_j sinh(u_j - x)/sinh(u_j) (trigonometric) or
/// Lambda0 prod_j (u_j - x)/u_j (rational) into a coefficient curve.
Curve product_representation(cplx lambda0, const std::vector<cplx>& zeroes,
                             const ModelParams& p);

/// F(x) = sum_u coth(u - x) (trigonometric) or sum_u 1/(u - x) (rational);
/// the product representation satisfies dL/dx = -L F.
cplx log_derivative_sum(cplx x, const std::vector<cplx>& zeroes, const ModelParams& p);

/// Residual of the quadratic algebraic form
///   O2 L^2 + (Obar F - O1) L + O0 = 0
/// with coefficients built from the given zero subset and F from the full
/// zero set of the curve.
cplx quadratic_residual(const SpectralCurve& sc, const std::vector<cplx>& zero_subset, cplx x,
                        const ModelParams& p);
double quadratic_residual_rel(const SpectralCurve& sc, const std::vector<cplx>& zero_subset,
                              cplx x, const ModelParams& p);

/// Eliminate the quadratic term between two subset instances and reconstruct
/// the eigenvalue:  L = D23 / (D13 - F D12), with the 2x2 minors of the
/// coefficient pair rows. Throws on identical subsets and on a denominator
/// below the conditioning floor.
cplx reconstruct_lambda(cplx x, const std::vector<cplx>& subset_m,
                        const std::vector<cplx>& subset_mbar,
                        const std::vector<cplx>& full_zeroes, const ModelParams& p);

/// The two scalar boundary conditions fixing the zero set of a sector-n
/// eigenvalue, returned as dimensionless residuals:
///   first:  Lambda0 = (-1)^L (phi1 e^{(L-n)g} + phi2 e^{n g}) prod e^{u-mu} sinh(u)
///   second: phi1 sinh((L-n)g + S) + phi2 sinh(n g + S) = 0, S = sum(u - mu),
/// replaced by e^{2 n g + 2 S} = 1 in the degenerate case L = 2n.
/// Rational family: two normalized evaluations of the quadratic form at
/// large |x| (the leading-coefficient conditions of its expansion).
std::pair<double, double> boundary_conditions(int n, const std::vector<cplx>& zeroes,
                                              cplx lambda0, const ModelParams& p);

struct ZeroSolveResult {
    bool converged = false;
    int iterations = 0;
    std::vector<cplx> zeroes;
    double residual = 0.0;
    double heldout_max = 0.0;
    std::string to_json() const;
};

/// Damped Newton iteration on the square system: quadratic form at L-2 fixed
/// generic points (one zero subset) plus the two boundary conditions.
/// lambda0 is data for the eigenvalue being refined. Throws on a singular
/// Jacobian (colliding zeroes in the seed) and reports non-convergence.
ZeroSolveResult solve_zeroes(const ModelParams& p, int n, cplx lambda0,
                             const std::vector<cplx>& seed);

}  // namespace sixv
