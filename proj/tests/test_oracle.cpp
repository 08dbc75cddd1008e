#include <doctest.h>

#include <cmath>
#include <random>

#include "sixv/oracle.hpp"

using namespace sixv;

namespace {
ModelParams rational_params(int L) {
    ModelParams p;
    p.family = Family::rational;
    p.L = L;
    p.mu.assign(L, cplx(0.0));
    return p;
}
ModelParams trig_params(int L, unsigned seed = 7) {
    ModelParams p;
    p.family = Family::trigonometric;
    p.gamma = cplx(0.3, 0.1);
    p.phi1 = cplx(1.1, 0.0);
    p.phi2 = cplx(0.8, 0.0);
    p.L = L;
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int j = 0; j < L; ++j) p.mu.emplace_back(u(rng), u(rng));
    return p;
}
std::mt19937 grng(123);
cplx rnd(double s = 1.0) {
    std::uniform_real_distribution<double> u(-s, s);
    return {u(grng), u(grng)};
}
}  // namespace

TEST_CASE("L=1 transfer matrix acts diagonally") {
    auto p = trig_params(1);
    p.mu = {cplx(0.0)};
    cplx x(0.37, 0.21);
    Mat t = transfer_matrix(p, x);
    // basis: bit0 clear = up, set = down
    cplx a = std::sinh(x + p.gamma), b = std::sinh(x);
    CHECK(std::abs(t(0, 0) - (p.phi1 * a + p.phi2 * b)) < 1e-14);
    CHECK(std::abs(t(1, 1) - (p.phi1 * b + p.phi2 * a)) < 1e-14);
    CHECK(std::abs(t(0, 1)) < 1e-14);
    CHECK(std::abs(t(1, 0)) < 1e-14);
    Mat s0 = sector_matrix(p, 0, x);
    CHECK(s0.rows() == 1);
    CHECK(std::abs(s0(0, 0) - (p.phi1 * a + p.phi2 * b)) < 1e-14);
}

TEST_CASE("sector dimensions and invalid input") {
    auto p = rational_params(4);
    CHECK(sector_matrix(p, 1, cplx(0.3)).rows() == 4);
    CHECK(sector_matrix(p, 2, cplx(0.3)).rows() == 6);
    CHECK_THROWS(sector_matrix(p, 5, cplx(0.3)));
    CHECK(binomial(6, 3) == 20);
}

TEST_CASE("magnon-number block structure of the full transfer matrix") {
    for (int L = 2; L <= 4; ++L) {
        auto p = trig_params(L, 100 + L);
        Mat t = transfer_matrix(p, rnd(0.6));
        double off = 0.0;
        for (int i = 0; i < t.rows(); ++i)
            for (int j = 0; j < t.cols(); ++j)
                if (__builtin_popcount(unsigned(i)) != __builtin_popcount(unsigned(j)))
                    off += std::norm(t(i, j));
        CHECK(std::sqrt(off) < 1e-12 * t.frobenius());
    }
}

TEST_CASE("transfer matrices commute at different spectral points") {
    auto p = trig_params(3);
    for (int trial = 0; trial < 5; ++trial) {
        cplx x = rnd(0.8), y = rnd(0.8);
        Mat tx = sector_matrix(p, 1, x), ty = sector_matrix(p, 1, y);
        Mat comm = tx * ty - ty * tx;
        CHECK(comm.frobenius() < 1e-10 * tx.frobenius() * ty.frobenius());
    }
}

TEST_CASE("trace identity: sum of curve values equals full trace") {
    auto p = trig_params(3, 21);
    cplx x = cplx(0.29, -0.13);
    cplx total = 0.0;
    for (int n = 0; n <= p.L; ++n)
        for (const auto& sc : diagonalize_sector(p, n)) total += sc.eval(x);
    Mat t = transfer_matrix(p, x);
    cplx tr = 0.0;
    for (int i = 0; i < t.rows(); ++i) tr += t(i, i);
    CHECK(std::abs(total - tr) < 1e-9 * std::abs(tr));
}

TEST_CASE("vacuum sector curve equals lambda_plus") {
    auto p = trig_params(3, 31);
    auto curves = diagonalize_sector(p, 0);
    REQUIRE(curves.size() == 1);
    for (int k = 0; k < 6; ++k) {
        cplx x = rnd(0.7);
        CHECK(std::abs(curves[0].eval(x) - lambda_pm(Sign::plus, x, p)) <
              1e-9 * (1.0 + std::abs(lambda_pm(Sign::plus, x, p))));
    }
}

TEST_CASE("Spec_1 for rational L=3 contains the tabulated curves") {
    auto p = rational_params(3);
    auto curves = diagonalize_sector(p, 1);
    REQUIRE(curves.size() == 3);
    double s3 = std::sqrt(3.0);
    Curve t1(CurveBasis::monomial, {cplx(-0.5, -s3 / 2.0), cplx(0.0), cplx(3.0), cplx(2.0)}, 3);
    Curve t2(CurveBasis::monomial, {cplx(-0.5, s3 / 2.0), cplx(0.0), cplx(3.0), cplx(2.0)}, 3);
    Curve lp(CurveBasis::monomial, {cplx(1.0), cplx(3.0), cplx(3.0), cplx(2.0)}, 3);
    for (const auto& target : {t1, t2, lp}) {
        double best = 1e9;
        for (const auto& sc : curves) best = std::min(best, sc.curve.coeff_distance(target));
        CHECK(best < 1e-8 * target.coeff_scale());
    }
}

TEST_CASE("Spec_1 for rational L=4 contains 2x^4+4x^3+2x^2-1") {
    auto p = rational_params(4);
    auto curves = diagonalize_sector(p, 1);
    Curve t(CurveBasis::monomial, {cplx(-1.0), cplx(0.0), cplx(2.0), cplx(4.0), cplx(2.0)}, 4);
    double best = 1e9;
    for (const auto& sc : curves) best = std::min(best, sc.curve.coeff_distance(t));
    CHECK(best < 1e-8 * t.coeff_scale());
}

TEST_CASE("curve zeroes satisfy the curve and are pairwise distinct") {
    auto p = rational_params(3);
    auto curves = diagonalize_sector(p, 1);
    for (const auto& sc : curves) {
        REQUIRE(int(sc.zeroes.size()) == p.L);
        for (const auto& u : sc.zeroes)
            CHECK(std::abs(sc.eval(u)) < 1e-10 * sc.curve.coeff_scale() *
                                             std::max(1.0, std::pow(std::abs(u), p.L)));
        for (size_t i = 0; i < sc.zeroes.size(); ++i)
            for (size_t j = i + 1; j < sc.zeroes.size(); ++j)
                CHECK(std::abs(sc.zeroes[i] - sc.zeroes[j]) > 1e-6);
    }
    // lambda_+ factorizes as (2x+1)(x^2+x+1)
    Curve lp(CurveBasis::monomial, {cplx(1.0), cplx(3.0), cplx(3.0), cplx(2.0)}, 3);
    auto zs = lp.zeroes();
    REQUIRE(zs.size() == 3);
    bool found_half = false;
    for (const auto& z : zs) {
        if (std::abs(z - cplx(-0.5, 0.0)) < 1e-10) found_half = true;
    }
    CHECK(found_half);
}

TEST_CASE("no two curves in a sector share a zero (L <= 5)") {
    for (int L = 2; L <= 5; ++L) {
        auto p = trig_params(L, 60 + L);
        for (int n = 1; n <= L; ++n) {
            auto curves = diagonalize_sector(p, n);
            for (size_t a = 0; a < curves.size(); ++a)
                for (size_t b = a + 1; b < curves.size(); ++b)
                    for (const auto& ua : curves[a].zeroes)
                        for (const auto& ub : curves[b].zeroes)
                            CHECK(std::abs(ua - ub) > 1e-6);
        }
    }
}

TEST_CASE("product representation round trip for a trig sector curve") {
    auto p = trig_params(3, 77);
    auto curves = diagonalize_sector(p, 2);
    const auto& sc = curves[0];
    for (int k = 0; k < 5; ++k) {
        cplx x = rnd(0.6);
        cplx prod = sc.lambda0;
        for (const auto& u : sc.zeroes) prod *= std::sinh(u - x) / std::sinh(u);
        CHECK(std::abs(prod - sc.eval(x)) < 1e-8 * (1.0 + std::abs(sc.eval(x))));
    }
}

TEST_CASE("spectrum report is valid json with expected fields") {
    auto p = rational_params(3);
    auto curves = diagonalize_sector(p, 1);
    auto text = spectrum_report(p, 1, curves);
    CHECK(text.find("\"sector\"") != std::string::npos);
    CHECK(text.find("\"curves\"") != std::string::npos);
    CHECK(text.find("\"zeroes\"") != std::string::npos);
}
