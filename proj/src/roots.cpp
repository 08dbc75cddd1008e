#include "sixv/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sixv {

RootResult find_roots(const Poly& p, double tol, int max_iter) {
    const auto& c = p.coeffs();
    int n = p.degree();
    if (n < 1) throw std::invalid_argument("find_roots: polynomial is constant");

    // Cauchy-style radius from coefficient magnitudes.
    double an = std::abs(c[n]);
    double radius = 0.0;
    for (int k = 0; k < n; ++k)
        radius = std::max(radius, std::pow(std::abs(c[k]) / an, 1.0 / double(n - k)));
    radius = std::max(1e-3, 1.5 * radius);

    std::vector<cplx> z(n);
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * std::numbers::pi * k / n + 0.4;
        z[k] = radius * cplx(std::cos(th), std::sin(th));
    }

    Poly dp = p.derivative();
    double scale = 0.0;
    for (const auto& v : c) scale = std::max(scale, std::abs(v));

    RootResult res;
    for (int it = 0; it < max_iter; ++it) {
        res.iterations = it + 1;
        double moved = 0.0;
        for (int k = 0; k < n; ++k) {
            cplx pv = p(z[k]);
            cplx dv = dp(z[k]);
            if (pv == cplx(0.0)) continue;
            cplx newton = (dv != cplx(0.0)) ? pv / dv : cplx(tol);
            cplx sum = 0.0;
            for (int j = 0; j < n; ++j)
                if (j != k) sum += cplx(1.0) / (z[k] - z[j]);
            cplx denom = cplx(1.0) - newton * sum;
            cplx step = (std::abs(denom) > 1e-300) ? newton / denom : newton;
            z[k] -= step;
            moved = std::max(moved, std::abs(step) / (1.0 + std::abs(z[k])));
        }
        if (moved < tol) break;
    }

    res.max_residual = 0.0;
    for (int k = 0; k < n; ++k) {
        double growth = std::max(1.0, std::pow(std::abs(z[k]), n));
        res.max_residual = std::max(res.max_residual, std::abs(p(z[k])) / (scale * growth));
    }
    if (res.max_residual > 1e-8)
        throw std::runtime_error("find_roots: no convergence, residual " +
                                 std::to_string(res.max_residual));
    std::sort(z.begin(), z.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    res.roots = std::move(z);
    return res;
}

}  // namespace sixv
