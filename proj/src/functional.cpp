#include "sixv/functional.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sixv {

namespace {

constexpr double kCollisionTol = 1e-12;

double sep(cplx a, cplx b, const ModelParams& p) {
    if (p.family == Family::rational) return std::abs(a - b);
    // distinct mod 2 pi i
    cplx d = a - b;
    double im = std::remainder(d.imag(), 2.0 * 3.14159265358979323846);
    return std::abs(cplx(d.real(), im));
}

}  // namespace

void PointTuple::validate(const ModelParams& p) const {
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = i + 1; j < x.size(); ++j)
            if (sep(x[i], x[j], p) < kCollisionTol)
                throw std::invalid_argument("PointTuple: coincident points x_" +
                                            std::to_string(i) + ", x_" + std::to_string(j));
}

cplx coefficient_M(int i, const PointTuple& pts, const CurveFn& lambda, const ModelParams& p) {
    int n = static_cast<int>(pts.x.size()) - 1;
    if (i < 0 || i > n) throw std::invalid_argument("coefficient_M: index out of range");
    auto a = [&](cplx z) { return weight(WeightKind::a, z, p); };
    auto b = [&](cplx z) { return weight(WeightKind::b, z, p); };
    cplx x0 = pts.x[0];
    if (i == 0) {
        cplx t1 = p.phi1, t2 = p.phi2;
        for (int j = 1; j <= n; ++j) {
            if (sep(pts.x[j], x0, p) < kCollisionTol)
                throw std::invalid_argument("coefficient_M: x_0 collides with x_" +
                                            std::to_string(j));
            t1 *= a(pts.x[j] - x0) / b(pts.x[j] - x0);
            t2 *= a(x0 - pts.x[j]) / b(x0 - pts.x[j]);
        }
        return t1 * highest_weight(HwKind::A, x0, p) + t2 * highest_weight(HwKind::D, x0, p) -
               lambda(x0);
    }
    cplx xi = pts.x[i];
    if (sep(x0, xi, p) < kCollisionTol)
        throw std::invalid_argument("coefficient_M: x_0 collides with x_" + std::to_string(i));
    cplx t1 = p.phi1, t2 = p.phi2;
    for (int j = 1; j <= n; ++j) {
        if (j == i) continue;
        t1 *= a(pts.x[j] - xi) / b(pts.x[j] - xi);
        t2 *= a(xi - pts.x[j]) / b(xi - pts.x[j]);
    }
    cplx pref = weight(WeightKind::c, x0 - xi, p) / b(x0 - xi);
    return pref * (t1 * highest_weight(HwKind::A, xi, p) - t2 * highest_weight(HwKind::D, xi, p));
}

namespace {

Mat compatibility_matrix(const PointTuple& pts, const CurveFn& lambda, const ModelParams& p) {
    int n = static_cast<int>(pts.x.size()) - 1;
    Mat m(n + 1, n + 1);
    for (int j = 0; j <= n; ++j) {
        PointTuple swapped = pts;
        std::swap(swapped.x[0], swapped.x[j]);
        for (int i = 0; i <= n; ++i) {
            int idx = (i == 0) ? j : (i == j ? 0 : i);
            m(i, j) = coefficient_M(idx, swapped, lambda, p);
        }
    }
    return m;
}

}  // namespace

cplx compatibility_det(const PointTuple& pts, const CurveFn& lambda, const ModelParams& p) {
    pts.validate(p);
    return determinant(compatibility_matrix(pts, lambda, p));
}

double compatibility_det_normalized(const PointTuple& pts, const CurveFn& lambda,
                                    const ModelParams& p) {
    pts.validate(p);
    Mat m = compatibility_matrix(pts, lambda, p);
    double scale = 1.0;
    for (int i = 0; i < m.rows(); ++i) {
        double rn = 0.0;
        for (int j = 0; j < m.cols(); ++j) rn += std::norm(m(i, j));
        scale *= std::sqrt(rn);
    }
    if (scale == 0.0) return 0.0;
    return std::abs(determinant(m)) / scale;
}

cplx omega_entry(int i, int j, cplx x0, cplx x1, const std::vector<cplx>& zeroes,
                 const ModelParams& p) {
    int n = static_cast<int>(zeroes.size()) + 1;
    if (i < 0 || i > n || j < 0 || j > n)
        throw std::invalid_argument("omega_entry: index out of range");
    auto a = [&](cplx z) { return weight(WeightKind::a, z, p); };
    auto b = [&](cplx z) {
        cplx v = weight(WeightKind::b, z, p);
        if (std::abs(v) < kCollisionTol)
            throw std::invalid_argument("omega_entry: vanishing b-denominator at entry (" +
                                        std::to_string(i) + "," + std::to_string(j) + ")");
        return v;
    };
    cplx cw = weight(WeightKind::c, cplx(0.0), p);
    const cplx xi_arr[2] = {x0, x1};
    auto la = [&](cplx z) { return highest_weight(HwKind::A, z, p); };
    auto ld = [&](cplx z) { return highest_weight(HwKind::D, z, p); };

    if (i <= 1 && j == i) {
        cplx xx = xi_arr[i], xb = xi_arr[1 - i];
        cplx t1 = p.phi1 * a(xb - xx), t2 = p.phi2 * a(xx - xb);
        for (const auto& u : zeroes) {
            t1 *= a(u - xx) / b(u - xx);
            t2 *= a(xx - u) / b(xx - u);
        }
        double sign = (i == 0) ? 1.0 : -1.0;
        return sign * (t1 * la(xx) - t2 * ld(xx));
    }
    if (i <= 1 && j == 1 - i) {
        cplx xx = xi_arr[i];
        cplx t1 = p.phi1, t2 = p.phi2;
        for (const auto& u : zeroes) {
            t1 *= a(u - xx) / b(u - xx);
            t2 *= a(xx - u) / b(xx - u);
        }
        double sign = (i == 0) ? 1.0 : -1.0;
        return sign * cw * (t1 * la(xx) - t2 * ld(xx));
    }
    if (i <= 1) {  // j >= 2
        cplx xx = xi_arr[i], xb = xi_arr[1 - i];
        cplx uj = zeroes[j - 2];
        cplx t1 = p.phi1 * a(xb - xx) * cw / b(xx - uj);
        cplx t2 = p.phi2 * a(xx - xb) * cw / b(uj - xx);
        for (int k = 0; k < n - 1; ++k) {
            if (k == j - 2) continue;
            t1 *= a(zeroes[k] - xx) / b(zeroes[k] - xx);
            t2 *= a(xx - zeroes[k]) / b(xx - zeroes[k]);
        }
        double sign = (i == 0) ? -1.0 : 1.0;
        return sign * (t1 * la(xx) - t2 * ld(xx));
    }
    cplx ui = zeroes[i - 2];
    if (j <= 1) {
        cplx xj = xi_arr[j], xb = xi_arr[1 - j];
        cplx t1 = p.phi1 * (cw / b(ui - xj)) * (a(xb - ui) / b(xb - ui));
        cplx t2 = p.phi2 * (cw / b(xj - ui)) * (a(ui - xb) / b(ui - xb));
        for (int k = 0; k < n - 1; ++k) {
            if (k == i - 2) continue;
            t1 *= a(zeroes[k] - ui) / b(zeroes[k] - ui);
            t2 *= a(ui - zeroes[k]) / b(ui - zeroes[k]);
        }
        return -t1 * la(ui) - t2 * ld(ui);
    }
    if (i == j) {
        cplx t1 = p.phi1 * (a(x0 - ui) / b(x0 - ui)) * (a(x1 - ui) / b(x1 - ui));
        cplx t2 = p.phi2 * (a(ui - x0) / b(ui - x0)) * (a(ui - x1) / b(ui - x1));
        for (int k = 0; k < n - 1; ++k) {
            if (k == i - 2) continue;
            t1 *= a(zeroes[k] - ui) / b(zeroes[k] - ui);
            t2 *= a(ui - zeroes[k]) / b(ui - zeroes[k]);
        }
        return t1 * la(ui) + t2 * ld(ui);
    }
    cplx uj = zeroes[j - 2];
    cplx t1 = p.phi1 * (cw / b(ui - uj)) * (a(x0 - ui) / b(x0 - ui)) * (a(x1 - ui) / b(x1 - ui));
    cplx t2 = p.phi2 * (cw / b(uj - ui)) * (a(ui - x0) / b(ui - x0)) * (a(ui - x1) / b(ui - x1));
    for (int k = 0; k < n - 1; ++k) {
        if (k == i - 2 || k == j - 2) continue;
        t1 *= a(zeroes[k] - ui) / b(zeroes[k] - ui);
        t2 *= a(ui - zeroes[k]) / b(ui - zeroes[k]);
    }
    return -t1 * la(ui) - t2 * ld(ui);
}

Mat omega_matrix(cplx x0, cplx x1, const std::vector<cplx>& zeroes, const ModelParams& p) {
    int n = static_cast<int>(zeroes.size()) + 1;
    Mat m(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) m(i, j) = omega_entry(i, j, x0, x1, zeroes, p);
    return m;
}

namespace {

cplx minor_det(const Mat& m, std::initializer_list<int> drop) {
    int n = m.rows();
    std::vector<int> keep;
    for (int k = 0; k < n; ++k) {
        bool d = false;
        for (int v : drop)
            if (v == k) d = true;
        if (!d) keep.push_back(k);
    }
    if (keep.empty()) return 1.0;
    Mat s(static_cast<int>(keep.size()), static_cast<int>(keep.size()));
    for (size_t i = 0; i < keep.size(); ++i)
        for (size_t j = 0; j < keep.size(); ++j) s(int(i), int(j)) = m(keep[i], keep[j]);
    return determinant(s);
}

// 4th-order central difference d/dx1 at x1 = x.
template <typename F>
cplx central4(F&& f, cplx x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

}  // namespace

RiccatiCoefficients riccati_coefficients(int n, const std::vector<cplx>& zero_subset, cplx x,
                                         const ModelParams& p) {
    if (static_cast<int>(zero_subset.size()) != n - 1)
        throw std::invalid_argument("riccati_coefficients: subset must hold n-1 zeroes");
    for (const auto& u : zero_subset)
        if (std::abs(weight(WeightKind::b, x - u, p)) < 1e-10)
            throw std::invalid_argument("riccati_coefficients: x collides with a subset zero");

    RiccatiCoefficients rc;
    Mat m0 = omega_matrix(x, x, zero_subset, p);
    rc.obar = minor_det(m0, {1});
    rc.o2 = minor_det(m0, {0, 1});

    auto minors01 = [&](cplx x1) {
        Mat m = omega_matrix(x, x1, zero_subset, p);
        return minor_det(m, {0}) + minor_det(m, {1});
    };
    auto quotient = [&](cplx x1) {
        Mat m = omega_matrix(x, x1, zero_subset, p);
        return determinant(m) / weight(WeightKind::b, x1 - x, p);
    };

    double h = 1e-3 * std::max(1.0, std::abs(x));
    cplx o1a = central4(minors01, x, h), o1b = central4(minors01, x, h / 2.0);
    cplx o0a = central4(quotient, x, h), o0b = central4(quotient, x, h / 2.0);
    // one Richardson step on the 4th-order stencil
    rc.o1 = (16.0 * o1b - o1a) / 15.0;
    rc.o0 = (16.0 * o0b - o0a) / 15.0;
    double rel1 = std::abs(o1a - o1b) / (std::abs(rc.o1) + 1e-300);
    double rel0 = std::abs(o0a - o0b) / (std::abs(rc.o0) + 1e-300);
    rc.fd_warning = (rel0 > 1e-5) || (rel1 > 1e-5);
    return rc;
}

cplx riccati_residual(const RiccatiCoefficients& rc, cplx lambda, cplx dlambda) {
    return rc.obar * dlambda - (rc.o0 - rc.o1 * lambda + rc.o2 * lambda * lambda);
}

double riccati_residual_rel(const RiccatiCoefficients& rc, cplx lambda, cplx dlambda) {
    double scale = std::abs(rc.obar * dlambda) + std::abs(rc.o0) + std::abs(rc.o1 * lambda) +
                   std::abs(rc.o2 * lambda * lambda);
    if (scale == 0.0) return 0.0;
    return std::abs(riccati_residual(rc, lambda, dlambda)) / scale;
}

}  // namespace sixv
