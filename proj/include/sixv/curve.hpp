#pragma once

#include <functional>
#include <vector>

#include "sixv/model.hpp"

namespace sixv {

enum class CurveBasis { monomial, exponential };

/// One (trigonometric) polynomial curve.
///  - monomial basis: coeffs[k] multiplies x^k, k = 0..d
///  - exponential basis: coeffs[k] multiplies e^{(k-d) x}, k = 0..2d
class Curve {
public:
    Curve() = default;
    Curve(CurveBasis basis, std::vector<cplx> coeffs, int degree);

    CurveBasis basis() const { return basis_; }
    int degree() const { return d_; }
    const std::vector<cplx>& coeffs() const { return c_; }

    cplx eval(cplx x) const { return eval_d(x, 0); }
    /// Analytic derivative of the stated order.
    cplx eval_d(cplx x, int order) const;

    /// Max abs coefficient (scale for relative comparisons).
    double coeff_scale() const;

    /// Coefficientwise distance to another curve of the same shape.
    double coeff_distance(const Curve& other) const;

    /// Fit a curve of the given basis/degree to samples f(x_k) by least squares.
    /// Returns the curve plus the max relative fit residual at the nodes.
    static std::pair<Curve, double> fit(CurveBasis basis, int degree,
                                        const std::vector<cplx>& xs,
                                        const std::vector<cplx>& fs);

    /// Well-conditioned default sample grid: unit-circle nodes for the
    /// monomial basis, purely imaginary (uniform-angle) nodes for the
    /// exponential basis.
    static std::vector<cplx> fit_grid(CurveBasis basis, int npoints);

    /// All roots, one representative per sinh-periodicity class in the
    /// exponential basis (Im u in (-pi/2, pi/2]).
    std::vector<cplx> zeroes() const;

private:
    CurveBasis basis_ = CurveBasis::monomial;
    std::vector<cplx> c_;
    int d_ = 0;
};

}  // namespace sixv
