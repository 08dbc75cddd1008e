#include <doctest.h>

#include <cmath>
#include <random>

#include "sixv/curve.hpp"
#include "sixv/model.hpp"

using namespace sixv;

namespace {
ModelParams rational_params(int L) {
    ModelParams p;
    p.family = Family::rational;
    p.L = L;
    p.mu.assign(L, cplx(0.0));
    return p;
}
ModelParams trig_params(int L) {
    ModelParams p;
    p.family = Family::trigonometric;
    p.gamma = cplx(0.3, 0.1);
    p.phi1 = cplx(1.1, 0.0);
    p.phi2 = cplx(0.8, 0.0);
    p.L = L;
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int j = 0; j < L; ++j) p.mu.emplace_back(u(rng), u(rng));
    return p;
}
}  // namespace

TEST_CASE("weights: closed-form values") {
    auto pr = rational_params(1);
    CHECK(weight(WeightKind::a, cplx(1.0), pr) == cplx(2.0));
    CHECK(weight(WeightKind::b, cplx(1.0), pr) == cplx(1.0));
    CHECK(weight(WeightKind::c, cplx(5.0), pr) == cplx(1.0));
    auto pt = trig_params(1);
    CHECK(std::abs(weight(WeightKind::b, cplx(0.0), pt)) == 0.0);
    // a(0) = c in both families
    CHECK(std::abs(weight(WeightKind::a, cplx(0.0), pt) - weight(WeightKind::c, cplx(0.0), pt)) <
          1e-15);
    CHECK(std::abs(weight(WeightKind::a, cplx(0.0), pr) - weight(WeightKind::c, cplx(0.0), pr)) <
          1e-15);
}

TEST_CASE("highest weight products") {
    auto pr = rational_params(2);
    CHECK(std::abs(highest_weight(HwKind::A, cplx(1.0), pr) - cplx(4.0)) < 1e-15);
    CHECK(std::abs(highest_weight(HwKind::D, pr.mu[0], pr)) == 0.0);
    ModelParams pt = trig_params(1);
    pt.mu = {cplx(0.0)};
    cplx x(0.37, -0.2);
    CHECK(std::abs(highest_weight(HwKind::A, x, pt) - std::sinh(x + pt.gamma)) < 1e-15);
}

TEST_CASE("lambda_pm definition and identities") {
    auto pr = rational_params(3);
    pr.phi1 = cplx(1.3, 0.2);
    pr.phi2 = cplx(0.7, -0.4);
    // lambda_-(0) = -phi1 when mu = 0 (lambda_D(0) = 0, lambda_A(0) = 1)
    CHECK(std::abs(lambda_pm(Sign::minus, cplx(0.0), pr) + pr.phi1) < 1e-15);
    // lambda_+ + lambda_- = 2 phi2 lambda_D, lambda_+ - lambda_- = 2 phi1 lambda_A
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 8; ++k) {
        cplx x(u(rng), u(rng));
        cplx lp = lambda_pm(Sign::plus, x, pr), lm = lambda_pm(Sign::minus, x, pr);
        CHECK(std::abs(lp + lm - 2.0 * pr.phi2 * highest_weight(HwKind::D, x, pr)) < 1e-12);
        CHECK(std::abs(lp - lm - 2.0 * pr.phi1 * highest_weight(HwKind::A, x, pr)) < 1e-12);
    }
}

TEST_CASE("lambda_plus for L=3 equals 2x^3+3x^2+3x+1") {
    auto pr = rational_params(3);
    for (double xv : {0.0, 0.5, 1.0, -2.0}) {
        cplx x(xv);
        cplx expect = 2.0 * x * x * x + 3.0 * x * x + 3.0 * x + 1.0;
        CHECK(std::abs(lambda_pm(Sign::plus, x, pr) - expect) < 1e-12);
    }
}

TEST_CASE("zeroes of lambda_minus for L=3 are -1/2 +- i/(2 sqrt 3)") {
    auto pr = rational_params(3);
    // lambda_- = x^3 - (x+1)^3 = -(3x^2 + 3x + 1)
    Curve lm(CurveBasis::monomial, {cplx(-1.0), cplx(-3.0), cplx(-3.0)}, 2);
    auto zs = lm.zeroes();
    REQUIRE(zs.size() == 2);
    double s3 = 1.0 / (2.0 * std::sqrt(3.0));
    CHECK(std::abs(zs[0] - cplx(-0.5, -s3)) < 1e-12);
    CHECK(std::abs(zs[1] - cplx(-0.5, s3)) < 1e-12);
    for (const auto& z : zs) CHECK(std::abs(lambda_pm(Sign::minus, z, pr)) < 1e-12);
}

TEST_CASE("lambda derivative matches finite differences") {
    auto pt = trig_params(3);
    cplx x(0.41, 0.2);
    double h = 1e-6;
    for (Sign s : {Sign::plus, Sign::minus}) {
        cplx fd = (lambda_pm(s, x + h, pt) - lambda_pm(s, x - h, pt)) / (2.0 * h);
        CHECK(std::abs(lambda_pm_d(s, x, pt) - fd) < 1e-8);
    }
}

TEST_CASE("curve fit round-trips coefficients") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (CurveBasis basis : {CurveBasis::monomial, CurveBasis::exponential}) {
        int d = 5;
        int nc = basis == CurveBasis::monomial ? d + 1 : 2 * d + 1;
        std::vector<cplx> coef(nc);
        for (auto& v : coef) v = cplx(u(rng), u(rng));
        Curve c(basis, coef, d);
        auto xs = Curve::fit_grid(basis, 2 * d + 7);
        std::vector<cplx> fs(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) fs[k] = c.eval(xs[k]);
        auto [fit, resid] = Curve::fit(basis, d, xs, fs);
        CHECK(resid < 1e-11);
        CHECK(fit.coeff_distance(c) < 1e-10 * (1.0 + c.coeff_scale()));
    }
}

TEST_CASE("curve analytic derivatives") {
    Curve c(CurveBasis::exponential, {cplx(0.3), cplx(-0.2, 0.1), cplx(1.0), cplx(0.5), cplx(0.9, -0.4)},
            2);
    cplx x(0.2, -0.5);
    double h = 1e-5;
    cplx fd1 = (c.eval(x + h) - c.eval(x - h)) / (2.0 * h);
    cplx fd2 = (c.eval(x + h) - 2.0 * c.eval(x) + c.eval(x - h)) / (h * h);
    CHECK(std::abs(c.eval_d(x, 1) - fd1) < 1e-8);
    CHECK(std::abs(c.eval_d(x, 2) - fd2) < 1e-5);
}

TEST_CASE("params json round trip") {
    auto pt = trig_params(4);
    auto text = pt.to_json();
    auto back = ModelParams::from_json(text);
    CHECK(back.family == pt.family);
    CHECK(back.L == pt.L);
    CHECK(std::abs(back.gamma - pt.gamma) == 0.0);
    CHECK(back.mu.size() == pt.mu.size());
    for (size_t k = 0; k < pt.mu.size(); ++k) CHECK(std::abs(back.mu[k] - pt.mu[k]) == 0.0);
}

TEST_CASE("params invariants rejected") {
    ModelParams p;
    p.L = 0;
    CHECK_THROWS(p.validate());
    p = ModelParams{};
    p.L = 1;
    p.mu = {cplx(0.0)};
    p.phi1 = 0.0;
    CHECK_THROWS(p.validate());
    p.phi1 = 1.0;
    p.family = Family::trigonometric;
    p.gamma = 0.0;
    CHECK_THROWS(p.validate());
}
