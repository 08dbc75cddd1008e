#pragma once

#include <string>
#include <vector>

#include "sixv/curve.hpp"
#include "sixv/linalg.hpp"
#include "sixv/model.hpp"

namespace sixv {

/// One transfer-matrix eigenvalue curve with its zero set.
struct SpectralCurve {
    int sector = 0;
    Curve curve;
    cplx lambda0{0.0, 0.0};
    std::vector<cplx> zeroes;

    cplx eval(cplx x) const { return curve.eval(x); }
    cplx eval_d(cplx x, int order = 1) const { return curve.eval_d(x, order); }
};

long binomial(int n, int k);

/// Full 2^L x 2^L twisted transfer matrix T(x) = phi1 A(x) + phi2 D(x).
Mat transfer_matrix(const ModelParams& p, cplx x);

/// Basis states of the n-down-spin sector as bitmasks (bit j set = down spin
/// at site j), in increasing mask order.
std::vector<unsigned> sector_basis(int L, int n);

/// Restriction of T(x) to the fixed-n subspace; dimension C(L, n).
Mat sector_matrix(const ModelParams& p, int n, cplx x);

/// Diagonalize the sector at one generic point, then evaluate each eigenvalue
/// curve through the bilinear left/right eigenvector quotient and fit its
/// coefficients. Curves are returned in canonical order (lexicographic on
/// coefficient vectors, real part before imaginary part).
/// Throws on eigenvector degeneracy or poor curve fit.
std::vector<SpectralCurve> diagonalize_sector(const ModelParams& p, int n);

/// Roots of a spectral curve (delegates to the curve, checks residuals).
std::vector<cplx> curve_zeroes(const SpectralCurve& sc);

/// JSON spectrum report for one sector.
std::string spectrum_report(const ModelParams& p, int n,
                            const std::vector<SpectralCurve>& curves);

}  // namespace sixv
