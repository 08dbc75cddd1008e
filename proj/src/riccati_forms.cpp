#include "sixv/riccati_forms.hpp"

#include <cmath>
#include <stdexcept>

namespace sixv {

namespace {

// Derivatives of lambda_A / lambda_D up to maxorder via Leibniz products.
std::vector<cplx> hw_derivs(HwKind kind, cplx x, const ModelParams& p, int maxorder) {
    WeightKind w = (kind == HwKind::A) ? WeightKind::a : WeightKind::b;
    std::vector<cplx> prod(maxorder + 1, cplx(0.0));
    prod[0] = 1.0;
    for (const auto& m : p.mu) {
        // factor derivatives f^(k)
        std::vector<cplx> f(maxorder + 1);
        if (p.family == Family::rational) {
            f[0] = weight(w, x - m, p);
            if (maxorder >= 1) f[1] = (w == WeightKind::a || w == WeightKind::b) ? 1.0 : 0.0;
        } else {
            cplx arg = (w == WeightKind::a) ? x - m + p.gamma : x - m;
            for (int k = 0; k <= maxorder; ++k)
                f[k] = (k % 2 == 0) ? std::sinh(arg) : std::cosh(arg);
        }
        std::vector<cplx> next(maxorder + 1, cplx(0.0));
        for (int k = 0; k <= maxorder; ++k) {
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                next[k] += binom * prod[j] * f[k - j];
                binom = binom * (k - j) / (j + 1.0);
            }
        }
        prod = std::move(next);
    }
    return prod;
}

struct LambdaDerivs {
    std::vector<cplx> lp, lm;  // index = derivative order
};

LambdaDerivs lambda_derivs(cplx x, const ModelParams& p, int maxorder) {
    auto da = hw_derivs(HwKind::A, x, p, maxorder);
    auto dd = hw_derivs(HwKind::D, x, p, maxorder);
    LambdaDerivs out;
    out.lp.resize(maxorder + 1);
    out.lm.resize(maxorder + 1);
    for (int k = 0; k <= maxorder; ++k) {
        out.lp[k] = p.phi1 * da[k] + p.phi2 * dd[k];
        out.lm[k] = p.phi2 * dd[k] - p.phi1 * da[k];
    }
    return out;
}

class TrigN1System : public RiccatiSystem {
public:
    explicit TrigN1System(const ModelParams& p) : p_(p) {}
    std::array<cplx, 4> eval(cplx x, int order) const override {
        // All four coefficients are entire; differentiate termwise through
        // the lambda products (one extra order feeds the O0 derivatives).
        auto ld = lambda_derivs(x, p_, order + 1);
        cplx ch = std::cosh(p_.gamma), sh = std::sinh(p_.gamma);
        // leibniz for products of lambda-derivative streams
        auto prod_d = [&](const std::vector<cplx>& a, const std::vector<cplx>& b, int shift_b,
                          int k) {
            cplx acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                acc += binom * a[j] * b[k - j + shift_b];
                binom = binom * (k - j) / (j + 1.0);
            }
            return acc;
        };
        cplx obar = -sh * ld.lm[order];
        cplx o0 = ch * ch * prod_d(ld.lp, ld.lp, 0, order) -
                  sh * sh * prod_d(ld.lm, ld.lm, 0, order) +
                  sh * ch * (prod_d(ld.lp, ld.lm, 1, order) - prod_d(ld.lm, ld.lp, 1, order));
        cplx o1 = 2.0 * ch * ld.lp[order] + sh * ld.lm[order + 1];
        cplx o2 = order == 0 ? 1.0 : 0.0;
        return {obar, o0, o1, o2};
    }

private:
    ModelParams p_;
};

class RationalN1System : public RiccatiSystem {
public:
    explicit RationalN1System(const ModelParams& p) : p_(p) {}
    std::array<cplx, 4> eval(cplx x, int order) const override {
        auto ld = lambda_derivs(x, p_, order + 1);
        auto prod_d = [&](const std::vector<cplx>& a, const std::vector<cplx>& b, int shift_b,
                          int k) {
            cplx acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                acc += binom * a[j] * b[k - j + shift_b];
                binom = binom * (k - j) / (j + 1.0);
            }
            return acc;
        };
        cplx obar = -ld.lm[order];
        cplx o0 = prod_d(ld.lp, ld.lp, 0, order) + prod_d(ld.lp, ld.lm, 1, order) -
                  prod_d(ld.lm, ld.lp, 1, order);
        cplx o1 = 2.0 * ld.lp[order] + ld.lm[order + 1];
        cplx o2 = order == 0 ? 1.0 : 0.0;
        return {obar, o0, o1, o2};
    }

private:
    ModelParams p_;
};

// Richardson-extrapolated derivatives of a value-level coefficient set.
template <typename F>
std::array<cplx, 4> fd_coeffs(F&& values, cplx x, int order) {
    if (order == 0) return values(x);
    double h = 1e-3 * std::max(1.0, std::abs(x));
    auto diff = [&](double step, int comp) {
        if (order == 1)
            return (values(x - 2.0 * step)[comp] - 8.0 * values(x - step)[comp] +
                    8.0 * values(x + step)[comp] - values(x + 2.0 * step)[comp]) /
                   (12.0 * step);
        if (order == 2)
            return (-values(x - 2.0 * step)[comp] + 16.0 * values(x - step)[comp] -
                    30.0 * values(x)[comp] + 16.0 * values(x + step)[comp] -
                    values(x + 2.0 * step)[comp]) /
                   (12.0 * step * step);
        // order 3, 4th-order stencil
        return (values(x - 3.0 * step)[comp] - 8.0 * values(x - 2.0 * step)[comp] +
                13.0 * values(x - step)[comp] - 13.0 * values(x + step)[comp] +
                8.0 * values(x + 2.0 * step)[comp] - values(x + 3.0 * step)[comp]) /
               (8.0 * step * step * step);
    };
    std::array<cplx, 4> out;
    for (int comp = 0; comp < 4; ++comp) {
        cplx a = diff(h, comp), b = diff(h / 2.0, comp);
        out[comp] = (16.0 * b - a) / 15.0;
    }
    return out;
}

class TrigN2System : public RiccatiSystem {
public:
    TrigN2System(cplx u1, const ModelParams& p) : u1_(u1), p_(p) {}
    std::array<cplx, 4> eval(cplx x, int order) const override {
        auto vals = [this](cplx z) { return values(z); };
        return fd_coeffs(vals, x, order);
    }

private:
    std::array<cplx, 4> values(cplx x) const {
        cplx s = std::sinh(u1_ - x);
        if (std::abs(s) < 1e-10)
            throw std::invalid_argument("coeffs_n2: x collides with u1 (sinh pole)");
        auto ld = lambda_derivs(x, p_, 1);
        cplx g = p_.gamma;
        cplx ch = std::cosh(g), sh = std::sinh(g);
        cplx ch2 = std::cosh(2.0 * g), sh2 = std::sinh(2.0 * g);
        cplx lp = ld.lp[0], lm = ld.lm[0], dlp = ld.lp[1], dlm = ld.lm[1];
        auto ldu = lambda_derivs(u1_, p_, 0);
        cplx l_p = ldu.lp[0], l_m = ldu.lm[0];
        cplx ux = u1_ - x;
        auto P = [&](cplx z) { return l_p * ch2 * std::sinh(z) + l_m * sh2 * std::cosh(z); };
        cplx Q = l_p * ch2 * std::sinh(2.0 * ux) + l_m * sh2 * std::cosh(2.0 * ux);
        cplx s2 = s * s;

        cplx obar = (sh * sh / (4.0 * s2)) *
                        ((l_p + l_m) * std::sinh(2.0 * (ux + g)) +
                         (l_m - l_p) * std::sinh(2.0 * (-ux + g))) *
                        lp -
                    (sh2 / (4.0 * s2)) *
                        ((l_p + l_m) * std::sinh(ux + g) * std::sinh(ux + g) +
                         (l_p - l_m) * std::sinh(-ux + g) * std::sinh(-ux + g)) *
                        lm;
        cplx o0 = 2.0 * l_p * (sh * ch * lm / s) * (sh * ch * lm / s) +
                  (lp / s) * (ch2 * lp + sh * ch * dlm) * P(ux) -
                  sh * ch * (lm / s) * (P(2.0 * ux) * lp / s + P(ux) * dlp);
        cplx o1 = -(Q / (2.0 * s2)) * (sh2 * lm + sh * sh * dlp) +
                  (lp / s2) * (l_p * ch2 * (ch * ch * std::cosh(2.0 * ux) - 1.0) +
                               l_m * sh2 * ch * ch * std::sinh(2.0 * ux)) +
                  (sh2 * dlm / (4.0 * s2)) *
                      (l_p * (std::sinh(ux + g) * std::sinh(ux + g) +
                              std::sinh(-ux + g) * std::sinh(-ux + g)) +
                       l_m * sh2 * std::sinh(2.0 * ux));
        cplx o2 = (1.0 / (2.0 * s2)) * ((l_p + l_m) * std::sinh(ux + g) * std::sinh(ux + g) +
                                        (l_p - l_m) * std::sinh(-ux + g) * std::sinh(-ux + g));
        return {obar, o0, o1, o2};
    }

    cplx u1_;
    ModelParams p_;
};

// Rational n=2 coefficients: each equals N(x) / (x - u1)^2 with N built from
// lambda_A, lambda_D and degree-2 polynomials in X = x - u1. Derivatives are
// exact (Leibniz with (X^-2)^(k) = (-1)^k (k+1)! X^(-2-k)).
class RationalN2System : public RiccatiSystem {
public:
    RationalN2System(cplx u1, const ModelParams& p) : u1_(u1), p_(p) {
        auto ldu = lambda_derivs(u1_, p_, 0);
        cplx f1 = p.phi1, f2 = p.phi2;
        // A(u1), D(u1) scaled by twists
        au_ = (ldu.lp[0] - ldu.lm[0]) / (2.0 * f1);
        du_ = (ldu.lp[0] + ldu.lm[0]) / (2.0 * f2);
    }

    std::array<cplx, 4> eval(cplx x, int order) const override {
        cplx X = x - u1_;
        if (std::abs(X) < 1e-10)
            throw std::invalid_argument("coeffs_n2: x collides with u1");
        cplx f1 = p_.phi1, f2 = p_.phi2;
        cplx Au = au_, Du = du_;
        int no = order + 1;  // numerators need one extra order for the X-polynomials
        auto da = hw_derivs(HwKind::A, x, p_, no + 1);
        auto dd = hw_derivs(HwKind::D, x, p_, no + 1);

        // degree-2 polynomials in X and their derivative streams
        auto quad = [&](cplx c2, cplx c1, cplx c0, int k) -> cplx {
            if (k == 0) return c2 * X * X + c1 * X + c0;
            if (k == 1) return 2.0 * c2 * X + c1;
            if (k == 2) return 2.0 * c2;
            return 0.0;
        };
        // numerator streams: N^(k) for each coefficient
        auto lei = [&](auto&& fa, auto&& fb, int k) {
            cplx acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k; ++j) {
                acc += binom * fa(j) * fb(k - j);
                binom = binom * (k - j) / (j + 1.0);
            }
            return acc;
        };

        auto n_obar = [&](int k) {
            auto t1 = [&](int j) { return da[j]; };
            auto q1 = [&](int j) {
                return quad(f1 * (Au * f1 + Du * f2), f1 * (Au * f1 - 3.0 * Du * f2),
                            2.0 * f1 * Du * f2, j);
            };
            auto t2 = [&](int j) { return dd[j]; };
            auto q2 = [&](int j) {
                return quad(-f2 * (Au * f1 + Du * f2), -f2 * (3.0 * Au * f1 - Du * f2),
                            -2.0 * f2 * Au * f1, j);
            };
            return lei(t1, q1, k) + lei(t2, q2, k);
        };
        auto n_o2 = [&](int k) {
            return quad(f1 * Au + f2 * Du, 2.0 * (f1 * Au - f2 * Du), f1 * Au + f2 * Du, k);
        };
        auto n_o1 = [&](int k) {
            auto ta = [&](int j) { return da[j]; };
            auto qa = [&](int j) {
                return quad(2.0 * f1 * (Au * f1 + Du * f2), 2.0 * f1 * (Au * f1 - 3.0 * Du * f2),
                            f1 * (3.0 * Du * f2 - Au * f1), j);
            };
            auto tap = [&](int j) { return da[j + 1]; };
            auto qap = [&](int j) {
                return quad(-f1 * (Au * f1 + Du * f2), -f1 * (Au * f1 - 3.0 * Du * f2),
                            -2.0 * f1 * Du * f2, j);
            };
            auto td = [&](int j) { return dd[j]; };
            auto qd = [&](int j) {
                return quad(2.0 * f2 * (Au * f1 + Du * f2), 2.0 * f2 * (3.0 * Au * f1 - Du * f2),
                            f2 * (3.0 * Au * f1 - Du * f2), j);
            };
            auto tdp = [&](int j) { return dd[j + 1]; };
            auto qdp = [&](int j) {
                return quad(f2 * (Au * f1 + Du * f2), f2 * (3.0 * Au * f1 - Du * f2),
                            2.0 * f2 * Au * f1, j);
            };
            return lei(ta, qa, k) + lei(tap, qap, k) + lei(td, qd, k) + lei(tdp, qdp, k);
        };
        auto n_o0 = [&](int k) {
            // O0 X^2 = 2 f1 f2 [ (A D' - A' D) Q1 + A D Q2 ]
            //        + f1^2 A^2 [f1 Au X^2 + f2 Du (X-2)^2]
            //        + f2^2 D^2 [f1 Au (X+2)^2 + f2 Du X^2]
            auto q1 = [&](int l) {
                return quad(Au * f1 + Du * f2, 2.0 * (Au * f1 - Du * f2), 0.0, l);
            };
            auto q2 = [&](int l) {
                return quad(Au * f1 + Du * f2, 2.0 * (Au * f1 - Du * f2),
                            -2.0 * (Au * f1 + Du * f2), l);
            };
            auto pa = [&](int l) {
                return quad(Au * f1 + Du * f2, -4.0 * Du * f2, 4.0 * Du * f2, l);
            };
            auto pd = [&](int l) {
                return quad(Au * f1 + Du * f2, 4.0 * Au * f1, 4.0 * Au * f1, l);
            };
            auto A = [&](int j) { return da[j]; };
            auto Ap = [&](int j) { return da[j + 1]; };
            auto D = [&](int j) { return dd[j]; };
            auto Dp = [&](int j) { return dd[j + 1]; };
            cplx cross = lei(A, [&](int j) { return lei(Dp, q1, j); }, k) -
                         lei(Ap, [&](int j) { return lei(D, q1, j); }, k) +
                         lei(A, [&](int j) { return lei(D, q2, j); }, k);
            cplx aa = lei(A, [&](int j) { return lei(A, pa, j); }, k);
            cplx ddq = lei(D, [&](int j) { return lei(D, pd, j); }, k);
            return 2.0 * f1 * f2 * cross + f1 * f1 * aa + f2 * f2 * ddq;
        };

        // f = N / X^2: f^(order) = sum_j C(order,j) N^(j) (-1)^(order-j) (order-j+1)! X^(-2-order+j)
        auto assemble = [&](auto&& nstream) {
            cplx acc = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= order; ++j) {
                double fact = 1.0;
                for (int t = 2; t <= order - j + 1; ++t) fact *= t;
                double sign = ((order - j) % 2 == 0) ? 1.0 : -1.0;
                acc += binom * nstream(j) * sign * fact * std::pow(X, double(j - order) - 2.0);
                binom = binom * (order - j) / (j + 1.0);
            }
            return acc;
        };
        return {assemble(n_obar), assemble(n_o0), assemble(n_o1), assemble(n_o2)};
    }

private:
    cplx u1_;
    ModelParams p_;
    cplx au_, du_;
};

class DetSystem : public RiccatiSystem {
public:
    DetSystem(int n, std::vector<cplx> subset, const ModelParams& p)
        : n_(n), subset_(std::move(subset)), p_(p) {}
    std::array<cplx, 4> eval(cplx x, int order) const override {
        auto vals = [this](cplx z) {
            auto rc = riccati_coefficients(n_, subset_, z, p_);
            return std::array<cplx, 4>{rc.obar, rc.o0, rc.o1, rc.o2};
        };
        return fd_coeffs(vals, x, order);
    }

private:
    int n_;
    std::vector<cplx> subset_;
    ModelParams p_;
};

}  // namespace

std::unique_ptr<RiccatiSystem> coeffs_n1_system(const ModelParams& p) {
    if (p.family == Family::trigonometric) return std::make_unique<TrigN1System>(p);
    return std::make_unique<RationalN1System>(p);
}

RiccatiCoefficients coeffs_n1(cplx x, const ModelParams& p) {
    auto v = coeffs_n1_system(p)->eval(x, 0);
    return {v[0], v[1], v[2], v[3], false};
}

std::unique_ptr<RiccatiSystem> coeffs_n2_system(cplx u1, const ModelParams& p) {
    if (p.family == Family::trigonometric) return std::make_unique<TrigN2System>(u1, p);
    return std::make_unique<RationalN2System>(u1, p);
}

RiccatiCoefficients coeffs_n2(cplx x, cplx u1, const ModelParams& p) {
    auto v = coeffs_n2_system(u1, p)->eval(x, 0);
    return {v[0], v[1], v[2], v[3], false};
}

std::unique_ptr<RiccatiSystem> det_system(int n, const std::vector<cplx>& zero_subset,
                                          const ModelParams& p) {
    return std::make_unique<DetSystem>(n, zero_subset, p);
}

AltFormN2 alt_form_n2(cplx x, cplx lambda0, const ModelParams& p) {
    if (p.family != Family::trigonometric)
        throw std::invalid_argument("alt_form_n2: trigonometric family only");
    cplx g = p.gamma;
    cplx ch = std::cosh(g), sh = std::sinh(g);
    cplx ch2 = std::cosh(2.0 * g), sh2 = std::sinh(2.0 * g);
    cplx mp = lambda_pm(Sign::plus, 0.0, p), mm = lambda_pm(Sign::minus, 0.0, p);
    cplx lp = lambda_pm(Sign::plus, x, p), lm = lambda_pm(Sign::minus, x, p);
    cplx dlp = lambda_pm_d(Sign::plus, x, p), dlm = lambda_pm_d(Sign::minus, x, p);
    cplx c2x = std::cosh(2.0 * x), s2x = std::sinh(2.0 * x), sx = std::sinh(x);

    AltFormN2 f;
    f.kp = mp * (c2x * ch2 - 1.0) - mm * sh2 * s2x - 2.0 * lambda0 * sx * sx;
    f.km = mp * s2x * ch2 - mm * sh2 * c2x - lambda0 * s2x;
    f.k0 = 2.0 * mp * ch2 * sx * sx - mm * sh2 * s2x + lambda0 * (ch2 - c2x);
    f.jbar = lp * sh * sh * f.km + lm * sh * ch * f.kp;
    f.j1 = -f.km * (sh2 * lm + sh * sh * dlp) - 0.5 * sh2 * f.kp * dlm +
           2.0 * lp *
               (ch2 * (mp * (1.0 - ch * ch * c2x) - lambda0) +
                ch * ch * (lambda0 * c2x + mm * sh2 * s2x));
    f.j0 = (mp - lambda0) * sh2 * sh2 * lm * lm + (ch2 * lp + sh * ch * dlm) * lp * f.k0 +
           sh * ch * lm * (2.0 * lp * f.km - f.k0 * dlp);
    return f;
}

cplx alt_riccati_residual(cplx lambda, cplx dlambda, cplx lambda0, cplx x, const ModelParams& p) {
    AltFormN2 f = alt_form_n2(x, lambda0, p);
    return f.jbar * dlambda + f.kp * lambda * lambda + f.j1 * lambda + f.j0;
}

double alt_riccati_residual_rel(cplx lambda, cplx dlambda, cplx lambda0, cplx x,
                                const ModelParams& p) {
    AltFormN2 f = alt_form_n2(x, lambda0, p);
    cplx r = f.jbar * dlambda + f.kp * lambda * lambda + f.j1 * lambda + f.j0;
    double scale = std::abs(f.jbar * dlambda) + std::abs(f.kp * lambda * lambda) +
                   std::abs(f.j1 * lambda) + std::abs(f.j0);
    if (scale == 0.0) return 0.0;
    return std::abs(r) / scale;
}

}  // namespace sixv
