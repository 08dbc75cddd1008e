#include "sixv/curve.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "sixv/linalg.hpp"
#include "sixv/roots.hpp"

namespace sixv {

Curve::Curve(CurveBasis basis, std::vector<cplx> coeffs, int degree)
    : basis_(basis), c_(std::move(coeffs)), d_(degree) {
    size_t expected = basis_ == CurveBasis::monomial ? size_t(d_) + 1 : 2 * size_t(d_) + 1;
    if (c_.size() != expected) throw std::invalid_argument("Curve: coefficient count mismatch");
}

cplx Curve::eval_d(cplx x, int order) const {
    cplx acc = 0.0;
    if (basis_ == CurveBasis::monomial) {
        for (int k = d_; k >= order; --k) {
            double f = 1.0;
            for (int j = 0; j < order; ++j) f *= double(k - j);
            acc = acc * x + f * c_[k];
        }
        return acc;
    }
    for (int k = 0; k <= 2 * d_; ++k) {
        double m = double(k - d_);
        double f = 1.0;
        for (int j = 0; j < order; ++j) f *= m;
        acc += f * c_[k] * std::exp(m * x);
    }
    return acc;
}

double Curve::coeff_scale() const {
    double s = 0.0;
    for (const auto& v : c_) s = std::max(s, std::abs(v));
    return s;
}

double Curve::coeff_distance(const Curve& other) const {
    if (basis_ != other.basis_ || c_.size() != other.c_.size())
        return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (size_t k = 0; k < c_.size(); ++k) s = std::max(s, std::abs(c_[k] - other.c_[k]));
    return s;
}

std::vector<cplx> Curve::fit_grid(CurveBasis basis, int npoints) {
    std::vector<cplx> xs(npoints);
    for (int k = 0; k < npoints; ++k) {
        double th = 2.0 * std::numbers::pi * k / npoints + 0.37;
        xs[k] = basis == CurveBasis::monomial ? cplx(std::cos(th), std::sin(th))
                                              : cplx(0.0, th);
    }
    return xs;
}

std::pair<Curve, double> Curve::fit(CurveBasis basis, int degree, const std::vector<cplx>& xs,
                                    const std::vector<cplx>& fs) {
    int ncoef = basis == CurveBasis::monomial ? degree + 1 : 2 * degree + 1;
    int m = static_cast<int>(xs.size());
    if (m < ncoef) throw std::invalid_argument("Curve::fit: not enough sample points");
    Mat a(m, ncoef);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < ncoef; ++k)
            a(i, k) = basis == CurveBasis::monomial
                          ? std::pow(xs[i], double(k))
                          : std::exp(double(k - degree) * xs[i]);
    std::vector<cplx> coef = lstsq(a, fs);
    Curve curve(basis, coef, degree);
    double scale = 0.0, resid = 0.0;
    for (int i = 0; i < m; ++i) scale = std::max(scale, std::abs(fs[i]));
    for (int i = 0; i < m; ++i) resid = std::max(resid, std::abs(curve.eval(xs[i]) - fs[i]));
    return {curve, resid / (scale > 0 ? scale : 1.0)};
}

std::vector<cplx> Curve::zeroes() const {
    if (basis_ == CurveBasis::monomial) {
        return find_roots(Poly(c_)).roots;
    }
    // Vertex-weight parity: only exponents k with k = d (mod 2) carry weight,
    // so t^d * curve is a polynomial in v = t^2 = e^{2x} of degree d.
    double scale = coeff_scale();
    double off_parity = 0.0;
    for (int k = 0; k <= 2 * d_; ++k)
        if ((k - d_) % 2 != 0) off_parity = std::max(off_parity, std::abs(c_[k]));
    if (off_parity <= 1e-7 * scale) {
        std::vector<cplx> q(d_ + 1);
        for (int k = 0; k <= d_; ++k) q[k] = c_[2 * k];
        auto vv = find_roots(Poly(q)).roots;
        std::vector<cplx> out;
        out.reserve(vv.size());
        for (const auto& v : vv) out.push_back(0.5 * std::log(v));
        return out;
    }
    // General Laurent curve: roots in t = e^x, then one representative per
    // t^2 class (u and u + i pi describe the same sinh zero).
    auto tt = find_roots(Poly(c_)).roots;
    std::vector<cplx> out;
    for (const auto& t : tt) {
        cplx u = 0.5 * std::log(t * t);
        bool dup = false;
        for (const auto& o : out)
            if (std::abs(u - o) < 1e-7 * (1.0 + std::abs(u))) dup = true;
        if (!dup) out.push_back(u);
    }
    return out;
}

}  // namespace sixv
