#pragma once

#include <array>
#include <memory>

#include "sixv/functional.hpp"
#include "sixv/model.hpp"
#include "sixv/poly.hpp"

namespace sixv {

/// Riccati coefficient provider with analytic or Richardson-extrapolated
/// derivatives: eval(x, k) returns the k-th derivative of
/// (Obar, O0, O1, O2) at x, k <= 3.
class RiccatiSystem {
public:
    virtual ~RiccatiSystem() = default;
    virtual std::array<cplx, 4> eval(cplx x, int order) const = 0;
    std::array<cplx, 4> operator()(cplx x) const { return eval(x, 0); }
};

/// Closed-form n=1 coefficients. Trigonometric family:
///   Obar = -c lambda_-,
///   O0   = [cosh(g) l+]^2 - [sinh(g) l-]^2 + sinh(g)cosh(g)(l+ l-' - l- l+'),
///   O1   = 2 cosh(g) l+ + sinh(g) l-',   O2 = 1.
/// Rational family (read off the determinant construction):
///   Obar = -l-,  O0 = l+^2 + l+ l-' - l- l+',  O1 = 2 l+ + l-',  O2 = 1.
std::unique_ptr<RiccatiSystem> coeffs_n1_system(const ModelParams& p);
RiccatiCoefficients coeffs_n1(cplx x, const ModelParams& p);

/// Closed-form n=2 coefficients with one eigenvalue zero u1.
std::unique_ptr<RiccatiSystem> coeffs_n2_system(cplx u1, const ModelParams& p);
RiccatiCoefficients coeffs_n2(cplx x, cplx u1, const ModelParams& p);

/// Determinant-built coefficients wrapped as a derivative-capable system
/// (Richardson finite differences for the derivative orders).
std::unique_ptr<RiccatiSystem> det_system(int n, const std::vector<cplx>& zero_subset,
                                          const ModelParams& p);

/// Alternative n=2 equation obtained from the x2 = 0 specialization:
///   Jbar dL + K+ L^2 + J1 L + J0 = 0,
/// with K+-, K0 built from m+- = lambda_+-(0) and Lambda0 = L(0).
struct AltFormN2 {
    cplx jbar, j1, j0, kp, km, k0;
};
AltFormN2 alt_form_n2(cplx x, cplx lambda0, const ModelParams& p);

/// Residual of the alternative equation on a curve value/derivative.
cplx alt_riccati_residual(cplx lambda, cplx dlambda, cplx lambda0, cplx x, const ModelParams& p);
double alt_riccati_residual_rel(cplx lambda, cplx dlambda, cplx lambda0, cplx x,
                                const ModelParams& p);

}  // namespace sixv
