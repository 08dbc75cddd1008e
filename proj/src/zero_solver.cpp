#include "sixv/zero_solver.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include <json.hpp>

#include "sixv/linalg.hpp"
#include "sixv/poly.hpp"
#include "sixv/report.hpp"

namespace sixv {

Curve product_representation(cplx lambda0, const std::vector<cplx>& zeroes,
                             const ModelParams& p) {
    int L = static_cast<int>(zeroes.size());
    if (p.family == Family::rational) {
        Poly prod = Poly::constant(lambda0);
        for (const auto& u : zeroes) {
            if (std::abs(u) < 1e-12)
                throw std::invalid_argument("product_representation: zero at origin");
            prod = prod * Poly({cplx(1.0), -1.0 / u});  // (u - x)/u
        }
        std::vector<cplx> c = prod.coeffs();
        c.resize(L + 1, cplx(0.0));
        return Curve(CurveBasis::monomial, c, L);
    }
    // sinh(u - x)/sinh(u) = (e^u e^{-x} - e^{-u} e^x) / (2 sinh u)
    std::vector<cplx> acc = {lambda0};  // exponents centered as we convolve
    for (const auto& u : zeroes) {
        cplx s = std::sinh(u);
        if (std::abs(s) < 1e-12)
            throw std::invalid_argument("product_representation: sinh(u) vanishes");
        cplx lo = std::exp(u) / (2.0 * s), hi = -std::exp(-u) / (2.0 * s);
        std::vector<cplx> next(acc.size() + 2, cplx(0.0));
        for (size_t k = 0; k < acc.size(); ++k) {
            next[k] += acc[k] * lo;
            next[k + 2] += acc[k] * hi;
        }
        acc = std::move(next);
    }
    return Curve(CurveBasis::exponential, acc, L);
}

cplx log_derivative_sum(cplx x, const std::vector<cplx>& zeroes, const ModelParams& p) {
    cplx sum = 0.0;
    for (const auto& u : zeroes) {
        cplx b = weight(WeightKind::b, u - x, p);
        if (std::abs(b) < 1e-12)
            throw std::invalid_argument("log_derivative_sum: x hits a zero");
        if (p.family == Family::rational)
            sum += 1.0 / (u - x);
        else
            sum += std::cosh(u - x) / std::sinh(u - x);
    }
    return sum;
}

cplx quadratic_residual(const SpectralCurve& sc, const std::vector<cplx>& zero_subset, cplx x,
                        const ModelParams& p) {
    int n = static_cast<int>(zero_subset.size()) + 1;
    auto rc = riccati_coefficients(n, zero_subset, x, p);
    cplx f = log_derivative_sum(x, sc.zeroes, p);
    cplx lam = sc.eval(x);
    return rc.o2 * lam * lam + (rc.obar * f - rc.o1) * lam + rc.o0;
}

double quadratic_residual_rel(const SpectralCurve& sc, const std::vector<cplx>& zero_subset,
                              cplx x, const ModelParams& p) {
    int n = static_cast<int>(zero_subset.size()) + 1;
    auto rc = riccati_coefficients(n, zero_subset, x, p);
    cplx f = log_derivative_sum(x, sc.zeroes, p);
    cplx lam = sc.eval(x);
    cplx r = rc.o2 * lam * lam + (rc.obar * f - rc.o1) * lam + rc.o0;
    double scale = std::abs(rc.o2 * lam * lam) + std::abs(rc.obar * f * lam) +
                   std::abs(rc.o1 * lam) + std::abs(rc.o0);
    return scale > 0 ? std::abs(r) / scale : 0.0;
}

namespace {

struct DeltaMinors {
    cplx d12, d13, d23;
};

DeltaMinors delta_minors(cplx x, const std::vector<cplx>& sm, const std::vector<cplx>& sb,
                         const ModelParams& p) {
    int n = static_cast<int>(sm.size()) + 1;
    auto a = riccati_coefficients(n, sm, x, p);
    auto b = riccati_coefficients(n, sb, x, p);
    DeltaMinors d;
    d.d12 = a.obar * b.o2 - b.obar * a.o2;
    d.d13 = a.o1 * b.o2 - b.o1 * a.o2;
    d.d23 = a.o0 * b.o2 - b.o0 * a.o2;
    return d;
}

bool same_subset(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const auto& va : a) {
        bool found = false;
        for (size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(va - b[j]) < 1e-10) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

cplx reconstruct_lambda(cplx x, const std::vector<cplx>& subset_m,
                        const std::vector<cplx>& subset_mbar,
                        const std::vector<cplx>& full_zeroes, const ModelParams& p) {
    if (same_subset(subset_m, subset_mbar))
        throw std::invalid_argument(
            "reconstruct_lambda: subsets coincide (all pair minors vanish)");
    auto d = delta_minors(x, subset_m, subset_mbar, p);
    cplx f = log_derivative_sum(x, full_zeroes, p);
    cplx den = d.d13 - f * d.d12;
    double scale = std::abs(d.d13) + std::abs(f * d.d12);
    if (std::abs(den) < 1e-12 * scale)
        throw std::runtime_error("reconstruct_lambda: denominator below conditioning floor");
    return d.d23 / den;
}

std::pair<double, double> boundary_conditions(int n, const std::vector<cplx>& zeroes,
                                              cplx lambda0, const ModelParams& p) {
    int L = p.L;
    if (static_cast<int>(zeroes.size()) != L)
        throw std::invalid_argument("boundary_conditions: need the full zero set");
    if (p.family == Family::trigonometric) {
        cplx g = p.gamma;
        cplx prod = 1.0;
        cplx S = 0.0;
        for (int j = 0; j < L; ++j) {
            prod *= std::exp(zeroes[j] - p.mu[j]) * std::sinh(zeroes[j]);
            S += zeroes[j] - p.mu[j];
        }
        double sign = (L % 2 == 0) ? 1.0 : -1.0;
        cplx rhs = sign * (p.phi1 * std::exp(double(L - n) * g) + p.phi2 * std::exp(double(n) * g)) *
                   prod;
        double r1 = std::abs(lambda0 - rhs) / (std::abs(lambda0) + std::abs(rhs) + 1e-300);
        double r2;
        if (L == 2 * n) {
            r2 = std::abs(std::exp(2.0 * double(n) * g + 2.0 * S) - 1.0);
        } else {
            cplx lhs = p.phi1 * std::sinh(double(L - n) * g + S) +
                       p.phi2 * std::sinh(double(n) * g + S);
            r2 = std::abs(lhs) / (std::abs(p.phi1) + std::abs(p.phi2));
        }
        return {r1, r2};
    }
    // Rational family: vanishing of the two leading coefficients of the
    // quadratic form's polynomial expansion reduces to
    //   Lambda0 = (phi1 + phi2) (-1)^L prod u_j
    //   (phi1 + phi2) S + (L - n) phi1 + n phi2 = 0,  S = sum(u - mu).
    cplx prod = 1.0, S = 0.0;
    for (int j = 0; j < L; ++j) {
        prod *= zeroes[j];
        S += zeroes[j] - p.mu[j];
    }
    double sign = (L % 2 == 0) ? 1.0 : -1.0;
    cplx rhs = (p.phi1 + p.phi2) * sign * prod;
    double r1 = std::abs(lambda0 - rhs) / (std::abs(lambda0) + std::abs(rhs) + 1e-300);
    cplx second = (p.phi1 + p.phi2) * S + double(L - n) * p.phi1 + double(n) * p.phi2;
    double r2 = std::abs(second) / (std::abs(p.phi1) + std::abs(p.phi2)) / (1.0 + std::abs(S));
    return {r1, r2};
}

namespace {

std::vector<cplx> sample_points_for_quad(int count, const std::vector<cplx>& avoid) {
    std::mt19937 rng(0xBE7A);
    std::uniform_real_distribution<double> re(-0.9, 0.9), im(-0.5, 0.5);
    std::vector<cplx> pts;
    int guard = 0;
    while (static_cast<int>(pts.size()) < count && ++guard < 10000) {
        cplx cand(re(rng), im(rng));
        bool ok = true;
        for (const auto& u : avoid)
            if (std::abs(cand - u) < 1e-3) ok = false;
        for (const auto& q : pts)
            if (std::abs(cand - q) < 1e-3) ok = false;
        if (ok) pts.push_back(cand);
    }
    return pts;
}

}  // namespace

ZeroSolveResult solve_zeroes(const ModelParams& p, int n, cplx lambda0,
                             const std::vector<cplx>& seed) {
    int L = p.L;
    if (static_cast<int>(seed.size()) != L)
        throw std::invalid_argument("solve_zeroes: seed must hold L zeroes");
    for (size_t i = 0; i < seed.size(); ++i)
        for (size_t j = i + 1; j < seed.size(); ++j)
            if (std::abs(seed[i] - seed[j]) < 1e-8)
                throw std::invalid_argument("solve_zeroes: seed zeroes collide (singular system)");

    auto pts = sample_points_for_quad(std::max(0, L - 2), seed);

    auto residual_map = [&](const std::vector<cplx>& u) {
        std::vector<cplx> r;
        r.reserve(L);
        SpectralCurve sc;
        sc.sector = n;
        sc.curve = product_representation(lambda0, u, p);
        sc.lambda0 = lambda0;
        sc.zeroes = u;
        std::vector<cplx> subset(u.begin(), u.begin() + (n - 1));
        for (const auto& x : pts) {
            int nn = n;
            auto rc = riccati_coefficients(nn, subset, x, p);
            cplx f = log_derivative_sum(x, u, p);
            cplx lam = sc.eval(x);
            cplx q = rc.o2 * lam * lam + (rc.obar * f - rc.o1) * lam + rc.o0;
            double scale = std::abs(rc.o2 * lam * lam) + std::abs(rc.obar * f * lam) +
                           std::abs(rc.o1 * lam) + std::abs(rc.o0) + 1e-300;
            r.push_back(q / scale);
        }
        if (p.family == Family::trigonometric) {
            cplx g = p.gamma;
            cplx prod = 1.0, S = 0.0;
            for (int j = 0; j < L; ++j) {
                prod *= std::exp(u[j] - p.mu[j]) * std::sinh(u[j]);
                S += u[j] - p.mu[j];
            }
            double sign = (L % 2 == 0) ? 1.0 : -1.0;
            cplx rhs = sign *
                       (p.phi1 * std::exp(double(L - n) * g) + p.phi2 * std::exp(double(n) * g)) *
                       prod;
            r.push_back((lambda0 - rhs) / (std::abs(lambda0) + std::abs(rhs) + 1e-300));
            if (L == 2 * n)
                r.push_back(std::exp(2.0 * double(n) * g + 2.0 * S) - 1.0);
            else
                r.push_back((p.phi1 * std::sinh(double(L - n) * g + S) +
                             p.phi2 * std::sinh(double(n) * g + S)) /
                            (std::abs(p.phi1) + std::abs(p.phi2)));
        } else {
            cplx prod = 1.0, S = 0.0;
            for (int j = 0; j < L; ++j) {
                prod *= u[j];
                S += u[j] - p.mu[j];
            }
            double sign = (L % 2 == 0) ? 1.0 : -1.0;
            cplx rhs = (p.phi1 + p.phi2) * sign * prod;
            r.push_back((lambda0 - rhs) / (std::abs(lambda0) + std::abs(rhs) + 1e-300));
            r.push_back(((p.phi1 + p.phi2) * S + double(L - n) * p.phi1 + double(n) * p.phi2) /
                        (std::abs(p.phi1) + std::abs(p.phi2)));
        }
        return r;
    };

    auto norm2 = [](const std::vector<cplx>& v) {
        double s = 0.0;
        for (const auto& t : v) s += std::norm(t);
        return std::sqrt(s);
    };

    ZeroSolveResult res;
    std::vector<cplx> u = seed;
    std::vector<cplx> f = residual_map(u);
    double fn = norm2(f);
    const int max_iter = 40;
    for (int it = 0; it < max_iter && fn > 1e-10; ++it) {
        res.iterations = it + 1;
        // finite-difference Jacobian
        Mat jac(L, L);
        double h = 1e-7;
        for (int jcol = 0; jcol < L; ++jcol) {
            auto up = u;
            up[jcol] += h;
            auto fp = residual_map(up);
            for (int i = 0; i < L; ++i) jac(i, jcol) = (fp[i] - f[i]) / h;
        }
        std::vector<cplx> step;
        try {
            step = lu_solve(jac, f);
        } catch (const std::exception&) {
            throw std::runtime_error("solve_zeroes: singular Jacobian");
        }
        // Armijo backtracking on the residual norm
        double t = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < 40; ++bt) {
            auto cand = u;
            for (int i = 0; i < L; ++i) cand[i] -= t * step[i];
            std::vector<cplx> fc;
            try {
                fc = residual_map(cand);
            } catch (const std::exception&) {
                t *= 0.5;
                continue;
            }
            double fcn = norm2(fc);
            if (fcn < (1.0 - 1e-4 * t) * fn) {
                u = cand;
                f = fc;
                fn = fcn;
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted) break;
    }
    res.zeroes = u;
    res.residual = fn;
    res.converged = fn < 1e-10;
    if (!res.converged) return res;

    // held-out verification: reconstruction at x = 0 from random subset pairs
    std::mt19937 rng(0xC0FFEE);
    double worst = 0.0;
    int checks = 0, guard = 0;
    while (checks < 3 && ++guard < 60) {
        std::vector<int> idx(L);
        for (int i = 0; i < L; ++i) idx[i] = i;
        std::shuffle(idx.begin(), idx.end(), rng);
        std::vector<cplx> sm, sb;
        for (int i = 0; i < n - 1; ++i) sm.push_back(u[idx[i]]);
        for (int i = 1; i < n; ++i) sb.push_back(u[idx[i]]);
        if (same_subset(sm, sb)) continue;
        try {
            cplx rec = reconstruct_lambda(cplx(0.0), sm, sb, u, p);
            worst = std::max(worst, std::abs(rec - lambda0) / (std::abs(lambda0) + 1e-300));
            ++checks;
        } catch (const std::exception&) {
            continue;
        }
    }
    res.heldout_max = worst;
    return res;
}

std::string ZeroSolveResult::to_json() const {
    nlohmann::json j;
    j["converged"] = converged;
    j["iterations"] = iterations;
    nlohmann::json zs = nlohmann::json::array();
    for (const auto& z : zeroes) zs.push_back({round_sig(z.real()), round_sig(z.imag())});
    j["zeroes"] = zs;
    j["residual"] = round_sig(residual);
    j["heldout_max"] = round_sig(heldout_max);
    return j.dump(2);
}

}  // namespace sixv
