// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Every tolerance is pinned here.
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "sixv/functional.hpp"
#include "sixv/lie.hpp"
#include "sixv/model.hpp"
#include "sixv/oracle.hpp"
#include "sixv/riccati_forms.hpp"
#include "sixv/spectral_maps.hpp"
#include "sixv/zero_solver.hpp"

using namespace sixv;

namespace {

int failures = 0;

void report(const char* name, bool ok, const std::string& detail = "") {
    std::printf("[%s] %s%s%s\n", ok ? "PASS" : "FAIL", name, detail.empty() ? "" : " -- ",
                detail.c_str());
    if (!ok) ++failures;
}

double now_s() {
    using clk = std::chrono::steady_clock;
    static const auto t0 = clk::now();
    return std::chrono::duration<double>(clk::now() - t0).count();
}

ModelParams rational_params(int L) {
    ModelParams p;
    p.family = Family::rational;
    p.L = L;
    p.mu.assign(L, cplx(0.0));
    return p;
}

ModelParams trig_generic(int L) {
    ModelParams p;
    p.family = Family::trigonometric;
    p.gamma = cplx(0.3, 0.1);
    p.phi1 = cplx(1.1, 0.0);
    p.phi2 = cplx(0.8, 0.0);
    p.L = L;
    std::mt19937 rng(0xFEED + L);
    std::uniform_real_distribution<double> u(-0.1, 0.1);
    for (int j = 0; j < L; ++j) p.mu.emplace_back(u(rng), u(rng));
    return p;
}

std::mt19937 grng(31337);
cplx rnd(double re = 0.8, double im = 0.4) {
    std::uniform_real_distribution<double> ur(-re, re), ui(-im, im);
    return {ur(grng), ui(grng)};
}

std::vector<std::vector<cplx>> table2(int L) {
    using namespace std::complex_literals;
    if (L == 3) {
        double s3 = std::sqrt(3.0);
        return {{{-0.5, -s3 / 2}, 0, 3, 2}, {{-0.5, s3 / 2}, 0, 3, 2}, {1, 3, 3, 2}};
    }
    if (L == 4) {
        return {{-1, 0, 2, 4, 2},
                {{0, -1}, {0, -2}, 2, 4, 2},
                {{0, 1}, {0, 2}, 2, 4, 2},
                {1, 4, 6, 4, 2}};
    }
    cplx w = std::exp(cplx(0.0, M_PI / 5.0));  // principal branch of (-1)^(1/5)
    cplx w2 = w * w, w3 = w2 * w, w4 = w3 * w;
    return {{w4, 1.0 - w3 + 3.0 * w4, 3.0 + w - w3 + 2.0 * w4, 5, 5, 2},
            {-w, 1.0 - 3.0 * w + w2, 3.0 - 2.0 * w + w2 - w4, 5, 5, 2},
            {w2, 1.0 + 3.0 * w2 + w4, 3.0 + 2.0 * w2 + w3 + w4, 5, 5, 2},
            {-w3, 1.0 - w - 3.0 * w3, 3.0 - w - w2 - 2.0 * w3, 5, 5, 2},
            {1, 5, 10, 10, 5, 2}};
}

std::vector<std::vector<cplx>> spectrum_via_cli(int L) {
#ifndef SIXV_CLI_PATH
    return {};
#else
    std::string out = std::string("acceptance_spectrum_L") + std::to_string(L) + ".json";
    std::string cmd = std::string(SIXV_CLI_PATH) +
                      " spectrum --family rational --L " + std::to_string(L) +
                      " --phi1 1 --phi2 1 --sector 1 --out " + out;
    if (std::system(cmd.c_str()) != 0) return {};
    std::ifstream f(out);
    nlohmann::json j;
    f >> j;
    std::vector<std::vector<cplx>> curves;
    for (const auto& c : j.at("curves")) {
        std::vector<cplx> coeffs;
        for (const auto& v : c.at("coeffs"))
            coeffs.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        curves.push_back(coeffs);
    }
    return curves;
#endif
}

// ---------------------------------------------------------------------------

void criterion1_table2() {
    double t0 = now_s();
    bool ok = true;
    std::string detail;
    for (int L : {3, 4, 5}) {
        auto got = spectrum_via_cli(L);
        auto expect = table2(L);
        if (got.empty()) {
            ok = false;
            detail = "CLI spectrum run failed";
            break;
        }
        for (const auto& row : expect) {
            double best = 1e300;
            double scale = 0.0;
            for (const auto& c : row) scale = std::max(scale, std::abs(c));
            for (const auto& cand : got) {
                if (cand.size() != row.size()) continue;
                double d = 0.0;
                for (size_t k = 0; k < row.size(); ++k)
                    d = std::max(d, std::abs(cand[k] - row[k]));
                best = std::min(best, d);
            }
            if (best > 1e-8 * scale) ok = false;
        }
    }
    double dt = now_s() - t0;
    if (dt > 5.0) {
        ok = false;
        detail += " runtime " + std::to_string(dt) + "s > 5s";
    }
    report("criterion 1: tabulated sector-1 spectra, L=3,4,5 (via CLI, 1e-8)", ok, detail);
}

void criterion2_compatibility() {
    double t0 = now_s();
    double worst = 0.0;
    for (int L = 1; L <= 5; ++L) {
        for (auto p : {rational_params(L), trig_generic(L)}) {
            for (int n = 1; n <= L; ++n) {
                for (const auto& sc : diagonalize_sector(p, n)) {
                    auto fn = [&](cplx x) { return sc.eval(x); };
                    for (int t = 0; t < 10; ++t) {
                        PointTuple pts;
                        for (int k = 0; k <= n; ++k) pts.x.push_back(rnd());
                        try {
                            worst = std::max(worst, compatibility_det_normalized(pts, fn, p));
                        } catch (const std::exception&) {
                            --t;
                        }
                    }
                }
            }
        }
    }
    double dt = now_s() - t0;
    bool ok = worst < 1e-7 && dt < 60.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "max normalized |det| = %.2e, %.1fs", worst, dt);
    report("criterion 2: compatibility determinant on all eigenvalues, L<=5", ok, buf);
}

void criterion3_riccati() {
    double worst = 0.0;
    for (int L = 1; L <= 5; ++L) {
        for (auto p : {rational_params(L), trig_generic(L)}) {
            for (int n = 1; n <= L; ++n) {
                for (const auto& sc : diagonalize_sector(p, n)) {
                    // subsets: all when few, else fixed-seed selection
                    std::vector<std::vector<cplx>> subsets;
                    std::vector<int> idx(L);
                    std::vector<std::vector<int>> combos;
                    std::vector<int> cur;
                    std::function<void(int)> rec = [&](int start) {
                        if (static_cast<int>(cur.size()) == n - 1) {
                            combos.push_back(cur);
                            return;
                        }
                        for (int k = start; k < L; ++k) {
                            cur.push_back(k);
                            rec(k + 1);
                            cur.pop_back();
                        }
                    };
                    rec(0);
                    std::mt19937 rng(0xC0FFEE);
                    if (combos.size() > 20) {
                        std::shuffle(combos.begin(), combos.end(), rng);
                        combos.resize(20);
                    }
                    for (const auto& cb : combos) {
                        std::vector<cplx> sset;
                        for (int k : cb) sset.push_back(sc.zeroes[k]);
                        subsets.push_back(sset);
                    }
                    int pts_per_subset =
                        std::max(1, 20 / static_cast<int>(subsets.size()));
                    for (const auto& sub : subsets) {
                        for (int t = 0; t < pts_per_subset; ++t) {
                            cplx x = rnd();
                            try {
                                auto rc = riccati_coefficients(n, sub, x, p);
                                worst = std::max(worst, riccati_residual_rel(rc, sc.eval(x),
                                                                             sc.eval_d(x)));
                            } catch (const std::exception&) {
                                --t;
                            }
                        }
                    }
                }
            }
        }
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "max relative residual = %.2e", worst);
    report("criterion 3: determinant-built Riccati residuals, all sectors, L<=5", worst < 1e-6,
           buf);
}

void criterion4_closed_forms() {
    bool ok = true;
    std::string detail;
    // closed forms vs determinants (trigonometric)
    double worst_cf = 0.0;
    {
        auto p = trig_generic(3);
        auto curves = diagonalize_sector(p, 2);
        cplx u1 = curves[0].zeroes[0];
        for (int t = 0; t < 10; ++t) {
            cplx x = rnd();
            auto c1 = coeffs_n1(x, p);
            auto d1 = riccati_coefficients(1, {}, x, p);
            auto c2 = coeffs_n2(x, u1, p);
            auto d2 = riccati_coefficients(2, {u1}, x, p);
            double s1 = std::abs(d1.obar) + std::abs(d1.o0) + std::abs(d1.o1) + std::abs(d1.o2);
            double s2 = std::abs(d2.obar) + std::abs(d2.o0) + std::abs(d2.o1) + std::abs(d2.o2);
            worst_cf = std::max({worst_cf, std::abs(c1.obar - d1.obar) / s1,
                                 std::abs(c1.o0 - d1.o0) / s1, std::abs(c1.o1 - d1.o1) / s1,
                                 std::abs(c1.o2 - d1.o2) / s1, std::abs(c2.obar - d2.obar) / s2,
                                 std::abs(c2.o0 - d2.o0) / s2, std::abs(c2.o1 - d2.o1) / s2,
                                 std::abs(c2.o2 - d2.o2) / s2});
        }
        if (worst_cf > 1e-8) ok = false;
    }
    // the x2 = 0 equation on every n=2 eigenvalue, L in {2,3,4}
    double worst_alt = 0.0;
    for (int L : {2, 3, 4}) {
        ModelParams uniform;
        uniform.family = Family::trigonometric;
        uniform.gamma = cplx(0.41, 0.0);
        uniform.L = L;
        uniform.mu.assign(L, cplx(0.0));
        for (auto p : {trig_generic(L), uniform}) {
            for (const auto& sc : diagonalize_sector(p, 2)) {
                for (int t = 0; t < 20; ++t) {
                    cplx x = rnd();
                    worst_alt = std::max(worst_alt, alt_riccati_residual_rel(
                                                        sc.eval(x), sc.eval_d(x), sc.lambda0,
                                                        x, p));
                }
            }
        }
    }
    if (worst_alt > 1e-6) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "closed-vs-det %.2e, alt residual %.2e", worst_cf, worst_alt);
    report("criterion 4: closed-form coefficient sets and the x2=0 equation", ok, buf);
}

void criterion5_zero_fixing() {
    bool ok = true;
    double worst_bc = 0.0, worst_heldout = 0.0, worst_rec = 0.0, worst_res = 0.0;
    for (int L : {3, 4}) {
        auto p = trig_generic(L);
        for (int n = 1; n <= L; ++n) {
            auto curves = diagonalize_sector(p, n);
            for (const auto& sc : curves) {
                auto [r1, r2] = boundary_conditions(n, sc.zeroes, sc.lambda0, p);
                worst_bc = std::max({worst_bc, r1, r2});
            }
            // newton reconvergence on one representative per sector
            const auto& sc = curves[0];
            std::mt19937 rng(17 + n);
            std::uniform_real_distribution<double> uni(-0.01, 0.01);
            auto seed = sc.zeroes;
            for (auto& u : seed) u += cplx(uni(rng), uni(rng)) * std::abs(u);
            auto res = solve_zeroes(p, n, sc.lambda0, seed);
            if (!res.converged) ok = false;
            worst_res = std::max(worst_res, res.residual);
            worst_heldout = std::max(worst_heldout, res.heldout_max);
            // reconstruction from subset pairs at 10 points
            if (n >= 2) {
                std::vector<cplx> sm(sc.zeroes.begin(), sc.zeroes.begin() + (n - 1));
                std::vector<cplx> sb(sc.zeroes.begin() + 1, sc.zeroes.begin() + n);
                for (int t = 0; t < 10; ++t) {
                    cplx x = rnd();
                    try {
                        cplx rec = reconstruct_lambda(x, sm, sb, sc.zeroes, p);
                        worst_rec = std::max(worst_rec, std::abs(rec - sc.eval(x)) /
                                                            (1.0 + std::abs(sc.eval(x))));
                    } catch (const std::exception&) {
                        --t;
                    }
                }
            }
        }
    }
    if (worst_bc > 1e-8 || worst_res > 1e-10 || worst_heldout > 1e-7 || worst_rec > 1e-6)
        ok = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "bc %.2e, newton %.2e, heldout %.2e, reconstruction %.2e",
                  worst_bc, worst_res, worst_heldout, worst_rec);
    report("criterion 5: zero-fixing system, reconvergence and held-out checks", ok, buf);
}

void criterion6_sl2_n1() {
    auto p = rational_params(3);
    auto sys = coeffs_n1_system(p);
    auto gens = generators_n1(p);
    bool ok = true;
    double worst_det = 0.0;
    for (const auto& t : gens)
        for (int k = 0; k < 8; ++k) {
            cplx x = rnd(0.9, 0.45);
            auto res = determining_residuals(t, *sys, x);
            double scale = determining_scale(*sys, x);
            for (const auto& r : res) worst_det = std::max(worst_det, std::abs(r) / scale);
        }
    if (worst_det > 1e-9) ok = false;

    VectorField xp = gens[0].field("X+"), xm = gens[1].field("X-"), h = gens[2].field("H");
    double worst_comm = 0.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) {
            cplx x(0.5 + 0.3 * a, 0.1);
            cplx lam(0.4 + 0.5 * b, -0.2);
            auto chk = [&](const VectorField& c, const VectorField& tgt, double sgn) {
                double scale = 1.0 + std::abs(tgt.xi(x, lam)) + std::abs(tgt.phi(x, lam));
                worst_comm = std::max(worst_comm,
                                      std::abs(c.xi(x, lam) - sgn * tgt.xi(x, lam)) / scale);
                worst_comm = std::max(worst_comm,
                                      std::abs(c.phi(x, lam) - sgn * tgt.phi(x, lam)) / scale);
            };
            chk(commutator(xp, xm), h, 1.0);
            chk(commutator(h, xp), xp, 2.0);
            chk(commutator(h, xm), xm, -2.0);
        }
    if (worst_comm > 1e-9) ok = false;

    // the X+ finite map preserves solutions
    auto curves = diagonalize_sector(p, 1);
    const cplx alpha(0.37, 0.11);
    const cplx I(0.0, 1.0);
    double worst_map = 0.0;
    for (const auto& sc : curves) {
        auto lam_bar = [&](cplx y) {
            return (sc.eval(y + I * alpha) - lambda_pm(Sign::plus, y + I * alpha, p)) *
                       lambda_pm(Sign::minus, y, p) / lambda_pm(Sign::minus, y + I * alpha, p) +
                   lambda_pm(Sign::plus, y, p);
        };
        double hh = 1e-5;
        for (int k = 0; k < 5; ++k) {
            cplx y = rnd(0.7, 0.3);
            cplx val = lam_bar(y);
            cplx der = (lam_bar(y - 2.0 * hh) - 8.0 * lam_bar(y - hh) + 8.0 * lam_bar(y + hh) -
                        lam_bar(y + 2.0 * hh)) /
                       (12.0 * hh);
            auto o = sys->eval(y, 0);
            cplx resid = o[0] * der - (o[1] - o[2] * val + o[3] * val * val);
            double scale = std::abs(o[0] * der) + std::abs(o[1]) + std::abs(o[2] * val) +
                           std::abs(o[3] * val * val);
            worst_map = std::max(worst_map, std::abs(resid) / scale);
        }
    }
    if (worst_map > 1e-6) ok = false;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "deter %.2e, commutators %.2e, map %.2e", worst_det,
                  worst_comm, worst_map);
    report("criterion 6: sector-1 sl(2) closed forms and the induced map", ok, buf);
}

void criterion7_f0_pipeline() {
    bool ok = true;
    auto p = rational_params(3);
    // sector 1: Upsilons vanish and {1, x, x^2} solve the equation
    auto sys1 = coeffs_n1_system(p);
    double worst_ups = 0.0, worst_f0 = 0.0;
    Smooth basis[3] = {
        smooth_const(1.0),
        [](cplx x, int k) { return k == 0 ? x : (k == 1 ? cplx(1.0) : cplx(0.0)); },
        [](cplx x, int k) {
            return k == 0 ? x * x : (k == 1 ? 2.0 * x : (k == 2 ? cplx(2.0) : cplx(0.0)));
        }};
    for (int k = 0; k < 8; ++k) {
        cplx x = rnd(1.1, 0.5);
        auto o = sys1->eval(x, 0);
        double s = std::abs(o[0]) + std::abs(o[1]) + std::abs(o[2]) + std::abs(o[3]);
        auto u = upsilons(*sys1, x);
        worst_ups = std::max({worst_ups, std::abs(u.u0) / (s * s * s), std::abs(u.u1) / (s * s * s)});
        cplx den = o[3] * o[0];
        for (const auto& f : basis)
            worst_f0 = std::max(worst_f0,
                                std::abs(f0_ode_residual(f, *sys1, x)) / std::abs(den * den * den));
    }
    if (worst_ups > 1e-8 || worst_f0 > 1e-8) ok = false;

    // sector 2 with a generic zero parameter: integrate, check, classify
    cplx u1(0.7, 0.2);
    auto sys2 = coeffs_n2_system(u1, p);
    auto sol = solve_symmetries(*sys2);
    double worst_det2 = 0.0;
    for (const auto& t : sol.triples)
        for (double fr : {0.2, 0.4, 0.6, 0.8}) {
            cplx x(sol.x0 + sol.len * fr);
            auto res = determining_residuals(t, *sys2, x);
            double scale = determining_scale(*sys2, x);
            for (const auto& r : res) worst_det2 = std::max(worst_det2, std::abs(r) / scale);
        }
    if (worst_det2 > 1e-6) ok = false;
    std::vector<cplx> xs, ls;
    for (int k = 0; k < 4; ++k) {
        xs.emplace_back(sol.x0 + sol.len * (0.2 + 0.2 * k));
        ls.emplace_back(0.7 + 0.5 * k, -0.3 + 0.2 * k);
    }
    auto cls = classify_algebra(sol.fields, xs, ls);
    if (cls.closure_residual > 1e-5 || cls.killing_rank != 3 || cls.verdict != "sl2") ok = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "ups %.2e, f0 %.2e, deter %.2e, closure %.2e rank %d",
                  worst_ups, worst_f0, worst_det2, cls.closure_residual, cls.killing_rank);
    report("criterion 7: f0 elimination pipeline and integrated sl(2) fields", ok, buf);
}

void criterion8_cycles() {
    double t0 = now_s();
    bool ok = true;
    std::string detail;
    auto expect_set = [](int L) -> std::vector<double> {
        double s3 = 1.0 / std::sqrt(3.0);
        if (L == 3) return {-s3, s3};
        if (L == 4) return {-1.0, -0.5, 0.5, 1.0};
        double a = std::sqrt(1.0 - 2.0 / std::sqrt(5.0));
        double b = std::sqrt(1.0 + 2.0 / std::sqrt(5.0));
        return {-b, -(a + b) / 2, -(b - a) / 2, -a, a, (b - a) / 2, (a + b) / 2, b};
    };
    for (int L : {3, 4, 5}) {
        auto p = rational_params(L);
        auto g = build_cycle_graph(p);
        // distinct alpha values over cross edges
        std::vector<double> got;
        for (const auto& e : g.edges)
            if (e.src != e.dst) got.push_back(e.alpha.real());
        std::sort(got.begin(), got.end());
        got.erase(std::unique(got.begin(), got.end(),
                              [](double a, double b) { return std::abs(a - b) < 1e-10; }),
                  got.end());
        auto expect = expect_set(L);
        if (got.size() != expect.size()) ok = false;
        else
            for (size_t k = 0; k < got.size(); ++k)
                if (std::abs(got[k] - expect[k]) > 1e-10) ok = false;
        // figure structure: one self-loop, complete digraph on the rest
        int others = static_cast<int>(g.nodes.size()) - 1;
        if (g.loop_node < 0 || static_cast<int>(g.edges.size()) != 1 + others * (others - 1))
            ok = false;
        if (!g.dropped.empty()) ok = false;
        // fixed point for 5 random alphas
        for (int k = 0; k < 5; ++k) {
            Curve image = k1_as_curve(g.nodes[g.loop_node], rnd(1.0, 0.7), p);
            if (image.coeff_distance(g.nodes[g.loop_node].curve) >
                1e-8 * g.nodes[g.loop_node].curve.coeff_scale())
                ok = false;
        }
    }
    double dt = now_s() - t0;
    if (dt > 30.0) {
        ok = false;
        detail = "runtime " + std::to_string(dt) + "s > 30s";
    }
    report("criterion 8: spectral map parameter sets and cycle graphs, L=3,4,5", ok, detail);
}

void criterion9_properties() {
    bool ok = true;
    double worst_comm = 0.0, worst_block = 0.0, worst_trace = 0.0;
    double min_zero_gap = 1e300;
    for (int L = 2; L <= 5; ++L) {
        auto p = trig_generic(L);
        // commutation in each sector, 5 random pairs
        for (int n = 1; n < L; ++n) {
            for (int t = 0; t < 5; ++t) {
                cplx x = rnd(0.7, 0.3), y = rnd(0.7, 0.3);
                Mat tx = sector_matrix(p, n, x), ty = sector_matrix(p, n, y);
                Mat comm = tx * ty - ty * tx;
                worst_comm = std::max(worst_comm,
                                      comm.frobenius() / (tx.frobenius() * ty.frobenius()));
            }
        }
        // block diagonality of the full matrix (L <= 4 keeps it cheap)
        if (L <= 4) {
            Mat t = transfer_matrix(p, rnd(0.6, 0.3));
            double off = 0.0;
            for (int i = 0; i < t.rows(); ++i)
                for (int j = 0; j < t.cols(); ++j)
                    if (__builtin_popcount(unsigned(i)) != __builtin_popcount(unsigned(j)))
                        off += std::norm(t(i, j));
            worst_block = std::max(worst_block, std::sqrt(off) / t.frobenius());
        }
        // trace identity and zero sharing
        cplx x = rnd(0.5, 0.25);
        cplx total = 0.0;
        for (int n = 0; n <= L; ++n) {
            auto curves = diagonalize_sector(p, n);
            for (const auto& sc : curves) total += sc.eval(x);
            for (size_t a = 0; a < curves.size(); ++a)
                for (size_t b = a + 1; b < curves.size(); ++b)
                    for (const auto& ua : curves[a].zeroes)
                        for (const auto& ub : curves[b].zeroes)
                            min_zero_gap = std::min(min_zero_gap, std::abs(ua - ub));
        }
        Mat t = transfer_matrix(p, x);
        cplx tr = 0.0;
        for (int i = 0; i < t.rows(); ++i) tr += t(i, i);
        worst_trace = std::max(worst_trace, std::abs(total - tr) / std::abs(tr));
    }
    if (worst_comm > 1e-10 || worst_block > 1e-12 || worst_trace > 1e-9 ||
        min_zero_gap < 1e-6)
        ok = false;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "comm %.2e, block %.2e, trace %.2e, zero gap %.2e",
                  worst_comm, worst_block, worst_trace, min_zero_gap);
    report("criterion 9: commuting family, block structure, trace, zero sharing", ok, buf);
}

}  // namespace

int main() {
    criterion1_table2();
    criterion2_compatibility();
    criterion3_riccati();
    criterion4_closed_forms();
    criterion5_zero_fixing();
    criterion6_sl2_n1();
    criterion7_f0_pipeline();
    criterion8_cycles();
    criterion9_properties();
    std::printf("%s (%d failing)\n", failures == 0 ? "ALL CRITERIA PASS" : "FAILURES PRESENT",
                failures);
    return failures == 0 ? 0 : 1;
}
