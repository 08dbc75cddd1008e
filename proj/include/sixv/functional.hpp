#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "sixv/linalg.hpp"
#include "sixv/model.hpp"

namespace sixv {

/// Specialization points x_0..x_n for the compatibility system. Entries must
/// be pairwise distinct and stay away from the zero subset in use, otherwise
/// b-weight denominators vanish.
struct PointTuple {
    std::vector<cplx> x;
    void validate(const ModelParams& p) const;
};

using CurveFn = std::function<cplx(cplx)>;

/// M_i coefficient of the linear functional system for sector n = |pts| - 1.
cplx coefficient_M(int i, const PointTuple& pts, const CurveFn& lambda, const ModelParams& p);

/// Determinant of the permuted-coefficient matrix; vanishes iff lambda is a
/// transfer-matrix eigenvalue (row 0 carries M_j, diagonal the swapped M_0).
cplx compatibility_det(const PointTuple& pts, const CurveFn& lambda, const ModelParams& p);

/// Same determinant normalized by the product of row norms.
double compatibility_det_normalized(const PointTuple& pts, const CurveFn& lambda,
                                    const ModelParams& p);

/// omega matrix entry for sector n = |zeroes| + 1 (indices 0..n).
cplx omega_entry(int i, int j, cplx x0, cplx x1, const std::vector<cplx>& zeroes,
                 const ModelParams& p);

Mat omega_matrix(cplx x0, cplx x1, const std::vector<cplx>& zeroes, const ModelParams& p);

/// Riccati coefficient quadruple: Obar dL/dx = O0 - O1 L + O2 L^2.
struct RiccatiCoefficients {
    cplx obar, o0, o1, o2;
    bool fd_warning = false;  // set when the h vs h/2 derivative check disagrees
};

/// Coefficients from omega-minor determinants at x0 = x1 = x; the two
/// derivative-type coefficients are formed by Richardson finite differences
/// in x1 (the O0 quotient det/b(x1-x0) has a removable singularity at
/// coincidence, so only off-coincidence samples are used).
RiccatiCoefficients riccati_coefficients(int n, const std::vector<cplx>& zero_subset, cplx x,
                                         const ModelParams& p);

/// Residual of the Riccati equation for a curve with analytic derivative.
cplx riccati_residual(const RiccatiCoefficients& rc, cplx lambda, cplx dlambda);
double riccati_residual_rel(const RiccatiCoefficients& rc, cplx lambda, cplx dlambda);

}  // namespace sixv
