#include "sixv/lie.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "sixv/linalg.hpp"
#include "sixv/poly.hpp"
#include "sixv/report.hpp"

namespace sixv {

namespace {

// --- derivative streams: value plus derivatives, index = order -------------

using DStream = std::vector<cplx>;

DStream dmul(const DStream& a, const DStream& b, int maxorder) {
    DStream r(maxorder + 1, cplx(0.0));
    for (int k = 0; k <= maxorder; ++k) {
        double binom = 1.0;
        for (int j = 0; j <= k; ++j) {
            r[k] += binom * a[j] * b[k - j];
            binom = binom * (k - j) / (j + 1.0);
        }
    }
    return r;
}

// quotient stream q = n / d via n^(k) = sum C(k,j) d^(j) q^(k-j)
DStream dquot(const DStream& n, const DStream& d, int maxorder) {
    if (std::abs(d[0]) < 1e-280) throw std::runtime_error("dquot: vanishing denominator");
    DStream q(maxorder + 1, cplx(0.0));
    for (int k = 0; k <= maxorder; ++k) {
        cplx acc = n[k];
        double binom = 1.0;
        for (int j = 1; j <= k; ++j) {
            binom = binom * (k - j + 1) / double(j);
            acc -= binom * d[j] * q[k - j];
        }
        q[k] = acc / d[0];
    }
    return q;
}

DStream dlin(const DStream& a, cplx ca, const DStream& b, cplx cb, int maxorder) {
    DStream r(maxorder + 1, cplx(0.0));
    for (int k = 0; k <= maxorder; ++k) r[k] = ca * a[k] + cb * b[k];
    return r;
}

DStream dpoly(const Poly& p, cplx x, int maxorder) {
    DStream r(maxorder + 1, cplx(0.0));
    for (int k = 0; k <= maxorder; ++k) r[k] = p.derivative(k)(x);
    return r;
}

constexpr int kMaxOrder = 4;

}  // namespace

Smooth smooth_fd(std::function<cplx(cplx)> value) {
    return [value = std::move(value)](cplx x, int order) -> cplx {
        if (order == 0) return value(x);
        double h = 1e-4 * std::max(1.0, std::abs(x));
        if (order >= 3) h = 5e-3 * std::max(1.0, std::abs(x));
        auto stencil = [&](double step) -> cplx {
            switch (order) {
                case 1:
                    return (value(x - 2.0 * step) - 8.0 * value(x - step) +
                            8.0 * value(x + step) - value(x + 2.0 * step)) /
                           (12.0 * step);
                case 2:
                    return (-value(x - 2.0 * step) + 16.0 * value(x - step) - 30.0 * value(x) +
                            16.0 * value(x + step) - value(x + 2.0 * step)) /
                           (12.0 * step * step);
                default:
                    return (value(x - 3.0 * step) - 8.0 * value(x - 2.0 * step) +
                            13.0 * value(x - step) - 13.0 * value(x + step) +
                            8.0 * value(x + 2.0 * step) - value(x + 3.0 * step)) /
                           (8.0 * step * step * step);
            }
        };
        cplx a = stencil(h), b = stencil(h / 2.0);
        return (16.0 * b - a) / 15.0;
    };
}

Smooth smooth_const(cplx v) {
    return [v](cplx, int order) { return order == 0 ? v : cplx(0.0); };
}

namespace {
constexpr double kPartialStep = 1e-5;

cplx partial(const std::function<cplx(cplx, cplx)>& f, cplx x, cplx lam, bool in_x) {
    double h = kPartialStep * std::max(1.0, in_x ? std::abs(x) : std::abs(lam));
    auto at = [&](double t) {
        return in_x ? f(x + t, lam) : f(x, lam + t);
    };
    return (at(-2.0 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2.0 * h)) / (12.0 * h);
}
}  // namespace

cplx VectorField::xi_x(cplx x, cplx lam) const {
    return d_xi_x ? d_xi_x(x, lam) : partial(xi, x, lam, true);
}
cplx VectorField::xi_L(cplx x, cplx lam) const {
    return d_xi_L ? d_xi_L(x, lam) : partial(xi, x, lam, false);
}
cplx VectorField::phi_x(cplx x, cplx lam) const {
    return d_phi_x ? d_phi_x(x, lam) : partial(phi, x, lam, true);
}
cplx VectorField::phi_L(cplx x, cplx lam) const {
    return d_phi_L ? d_phi_L(x, lam) : partial(phi, x, lam, false);
}

VectorField SymTriple::field(const std::string& label) const {
    VectorField v;
    Smooth f0c = f0, g0c = g0, g1c = g1;
    v.xi = [f0c](cplx x, cplx) { return f0c(x, 0); };
    v.phi = [g0c, g1c](cplx x, cplx lam) { return g0c(x, 0) + g1c(x, 0) * lam; };
    v.d_xi_x = [f0c](cplx x, cplx) { return f0c(x, 1); };
    v.d_xi_L = [](cplx, cplx) { return cplx(0.0); };
    v.d_phi_x = [g0c, g1c](cplx x, cplx lam) { return g0c(x, 1) + g1c(x, 1) * lam; };
    v.d_phi_L = [g1c](cplx x, cplx) { return g1c(x, 0); };
    v.label = label;
    return v;
}

cplx prolong1(const VectorField& v, cplx x, cplx lam, cplx lam1) {
    return v.phi_x(x, lam) + (v.phi_L(x, lam) - v.xi_x(x, lam)) * lam1 -
           v.xi_L(x, lam) * lam1 * lam1;
}

cplx prolong2(const VectorField& v, cplx x, cplx lam, cplx lam1, cplx lam2) {
    double hx = kPartialStep * std::max(1.0, std::abs(x));
    double hl = kPartialStep * std::max(1.0, std::abs(lam));
    auto d2 = [&](const std::function<cplx(cplx, cplx)>& f, int which) {
        // which: 0 = xx, 1 = xL, 2 = LL
        if (which == 0)
            return (f(x + hx, lam) - 2.0 * f(x, lam) + f(x - hx, lam)) / (hx * hx);
        if (which == 2)
            return (f(x, lam + hl) - 2.0 * f(x, lam) + f(x, lam - hl)) / (hl * hl);
        return (f(x + hx, lam + hl) - f(x + hx, lam - hl) - f(x - hx, lam + hl) +
                f(x - hx, lam - hl)) /
               (4.0 * hx * hl);
    };
    cplx phixx = d2(v.phi, 0), phixL = d2(v.phi, 1), phiLL = d2(v.phi, 2);
    cplx xixx = d2(v.xi, 0), xixL = d2(v.xi, 1), xiLL = d2(v.xi, 2);
    return phixx + (2.0 * phixL - xixx) * lam1 + (phiLL - 2.0 * xixL) * lam1 * lam1 -
           xiLL * lam1 * lam1 * lam1 + (v.phi_L(x, lam) - 2.0 * v.xi_x(x, lam)) * lam2 -
           3.0 * v.xi_L(x, lam) * lam1 * lam2;
}

std::array<cplx, 3> determining_residuals(const SymTriple& t, const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    auto od = sys.eval(x, 1);
    cplx ob = o[0], o0 = o[1], o1 = o[2], o2 = o[3];
    cplx obp = od[0], o0p = od[1], o1p = od[2], o2p = od[3];
    cplx f0 = t.f0(x, 0), f0p = t.f0(x, 1);
    cplx g0 = t.g0(x, 0), g0p = t.g0(x, 1);
    cplx g1 = t.g1(x, 0), g1p = t.g1(x, 1);
    cplx e1 = (f0p + g1) * o2 * ob + f0 * (o2p * ob - o2 * obp);
    cplx e2 = (f0p * o1 + g1p * ob) * ob + f0 * (o1p * ob - o1 * obp) - 2.0 * g0 * o2 * ob;
    cplx e3 = (f0p - g1) * o0 * ob - (g0 * o1 + g0p * ob) * ob + f0 * (o0p * ob - o0 * obp);
    return {e1, e2, e3};
}

double determining_scale(const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    double s = std::abs(o[0]) + std::abs(o[1]) + std::abs(o[2]) + std::abs(o[3]);
    return s * s;
}

cplx g1_from_f0(const Smooth& f0, const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    auto od = sys.eval(x, 1);
    cplx den = o[3] * o[0];
    if (std::abs(den) < 1e-250) throw std::runtime_error("g1_from_f0: O2*Obar vanishes");
    return f0(x, 0) * (o[3] * od[0] - od[3] * o[0]) / den - f0(x, 1);
}

cplx g0_from_f0(const Smooth& f0, const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    auto od = sys.eval(x, 1);
    auto odd = sys.eval(x, 2);
    cplx ob = o[0], o1 = o[2], o2 = o[3];
    cplx obp = od[0], o1p = od[2], o2p = od[3];
    cplx obpp = odd[0], o2pp = odd[3];
    cplx den = o2 * ob;
    if (std::abs(den) < 1e-250) throw std::runtime_error("g0_from_f0: O2*Obar vanishes");
    cplx term_f0 = (f0(x, 0) / (2.0 * den)) *
                   (ob * (o1p + obpp) - obp * (o1 + obp) +
                    (ob / o2) * (ob / o2) * (o2p * o2p - o2 * o2pp));
    cplx term_f0p = (f0(x, 1) / (2.0 * o2 * o2)) * (o2 * (o1 + obp) - ob * o2p);
    cplx term_f0pp = -f0(x, 2) * ob / (2.0 * o2);
    return term_f0 + term_f0p + term_f0pp;
}

namespace {

// first derivatives of the eliminated coefficients, using the systems'
// derivative orders directly (orders >= 2 fall back to differences)
cplx g1_from_f0_d(const Smooth& f0, const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    auto od = sys.eval(x, 1);
    auto odd = sys.eval(x, 2);
    cplx D = o[3] * o[0];
    cplx N = o[3] * od[0] - od[3] * o[0];
    cplx Np = o[3] * odd[0] - odd[3] * o[0];
    cplx Dp = od[3] * o[0] + o[3] * od[0];
    return f0(x, 1) * N / D + f0(x, 0) * (Np * D - N * Dp) / (D * D) - f0(x, 2);
}

cplx g0_from_f0_d(const Smooth& f0, const RiccatiSystem& sys, cplx x) {
    auto o = sys.eval(x, 0);
    auto od = sys.eval(x, 1);
    auto odd = sys.eval(x, 2);
    auto oddd = sys.eval(x, 3);
    cplx ob = o[0], o1 = o[2], o2 = o[3];
    cplx obp = od[0], o1p = od[2], o2p = od[3];
    cplx obpp = odd[0], o1pp = odd[2], o2pp = odd[3];
    cplx obppp = oddd[0], o2ppp = oddd[3];
    cplx D = o2 * ob, Dp = o2p * ob + o2 * obp;
    cplx r = ob / o2;
    cplx rp = (obp * o2 - ob * o2p) / (o2 * o2);
    cplx E = ob * (o1p + obpp) - obp * (o1 + obp) + r * r * (o2p * o2p - o2 * o2pp);
    cplx Ep = ob * (o1pp + obppp) - obpp * (o1 + obp) + 2.0 * r * rp * (o2p * o2p - o2 * o2pp) +
              r * r * (o2p * o2pp - o2 * o2ppp);
    cplx G = o2 * (o1 + obp) - ob * o2p;
    cplx Gp = o2p * (o1 + obp) + o2 * (o1p + obpp) - obp * o2p - ob * o2pp;
    cplx f = f0(x, 0), fp = f0(x, 1), fpp = f0(x, 2), fppp = f0(x, 3);
    return (fp * D - f * Dp) / (2.0 * D * D) * E + f / (2.0 * D) * Ep +
           (fpp * o2 - 2.0 * fp * o2p) / (2.0 * o2 * o2 * o2) * G +
           fp / (2.0 * o2 * o2) * Gp - (fppp * ob + fpp * obp) / (2.0 * o2) +
           fpp * ob * o2p / (2.0 * o2 * o2);
}

}  // namespace

SymTriple triple_from_f0(const Smooth& f0, const RiccatiSystem& sys) {
    SymTriple t;
    t.f0 = f0;
    const RiccatiSystem* s = &sys;
    Smooth g1fd = smooth_fd([f0, s](cplx x) { return g1_from_f0(f0, *s, x); });
    Smooth g0fd = smooth_fd([f0, s](cplx x) { return g0_from_f0(f0, *s, x); });
    t.g1 = [f0, s, g1fd](cplx x, int order) -> cplx {
        if (order == 0) return g1_from_f0(f0, *s, x);
        if (order == 1) return g1_from_f0_d(f0, *s, x);
        return g1fd(x, order);
    };
    t.g0 = [f0, s, g0fd](cplx x, int order) -> cplx {
        if (order == 0) return g0_from_f0(f0, *s, x);
        if (order == 1) return g0_from_f0_d(f0, *s, x);
        return g0fd(x, order);
    };
    return t;
}

UpsilonPair upsilons(const RiccatiSystem& sys, cplx x) {
    auto v0 = sys.eval(x, 0);
    auto v1 = sys.eval(x, 1);
    auto v2 = sys.eval(x, 2);
    auto v3 = sys.eval(x, 3);
    cplx ob = v0[0], o0 = v0[1], o1 = v0[2], o2 = v0[3];
    cplx obp = v1[0], o0p = v1[1], o1p = v1[2], o2p = v1[3];
    cplx obpp = v2[0], o1pp = v2[2], o2pp = v2[3];
    cplx obppp = v3[0], o2ppp = v3[3];

    UpsilonPair u;
    u.u1 = o2 * ob *
           (2.0 * ob * o2 * o2 * o1p - o2 * o2 * obp * obp - 2.0 * o1 * ob * o2 * o2p -
            2.0 * ob * o2 * o2p * obp + 3.0 * ob * ob * o2p * o2p + 2.0 * ob * o2 * o2 * obpp -
            2.0 * ob * ob * o2 * o2pp - 4.0 * o0 * o2 * o2 * o2 + o1 * o1 * o2 * o2);
    u.u0 = 2.0 * o2 * o2 * o2 * o2 * (2.0 * o0 * obp - ob * o0p) -
           3.0 * ob * ob * ob * o2p * o2p * o2p +
           o2 * ob * ob * o2p * (o1 * o2p + obp * o2p + 4.0 * ob * o2pp) -
           o2 * o2 * ob *
               (ob * (o2p * obpp + obp * o2pp + o1p * o2p + o1 * o2pp) -
                o2p * obp * (obp + o1) + o2ppp * ob * ob) +
           o2 * o2 * o2 *
               (obp * obp * obp - 2.0 * ob * obp * obpp - o1 * o1 * obp - ob * o1p * obp +
                o1 * ob * o1p - 2.0 * o0 * ob * o2p + ob * ob * o1pp + ob * ob * obppp);
    return u;
}

cplx f0_ode_residual(const Smooth& f0, const RiccatiSystem& sys, cplx x) {
    auto u = upsilons(sys, x);
    auto o = sys.eval(x, 0);
    cplx den = o[3] * o[0];
    return u.u0 * f0(x, 0) + u.u1 * f0(x, 1) - den * den * den * f0(x, 3);
}

// --- ODE integration (modified midpoint + Richardson extrapolation) --------

namespace {

using State = std::array<cplx, 3>;

State ode_rhs(const RiccatiSystem& sys, double t, const State& y) {
    auto u = upsilons(sys, cplx(t));
    auto o = sys.eval(cplx(t), 0);
    cplx den = o[3] * o[0];
    cplx f3 = (u.u0 * y[0] + u.u1 * y[1]) / (den * den * den);
    return {y[1], y[2], f3};
}

State midpoint_pass(const RiccatiSystem& sys, double t0, const State& y0, double big_h,
                    int nsub) {
    double h = big_h / nsub;
    State z0 = y0;
    State z1;
    auto f0 = ode_rhs(sys, t0, z0);
    for (int c = 0; c < 3; ++c) z1[c] = z0[c] + h * f0[c];
    for (int k = 1; k < nsub; ++k) {
        auto fk = ode_rhs(sys, t0 + k * h, z1);
        State z2;
        for (int c = 0; c < 3; ++c) z2[c] = z0[c] + 2.0 * h * fk[c];
        z0 = z1;
        z1 = z2;
    }
    auto fn = ode_rhs(sys, t0 + big_h, z1);
    State out;
    for (int c = 0; c < 3; ++c) out[c] = 0.5 * (z1[c] + z0[c] + h * fn[c]);
    return out;
}

// one adaptive extrapolated step; returns (state, error_estimate)
std::pair<State, double> gbs_step(const RiccatiSystem& sys, double t0, const State& y0,
                                  double h) {
    static const int seq[5] = {2, 4, 6, 8, 10};
    State table[5];
    double err = 0.0;
    for (int i = 0; i < 5; ++i) {
        table[i] = midpoint_pass(sys, t0, y0, h, seq[i]);
        // Neville update in h^2
        for (int j = i - 1; j >= 0; --j) {
            double q = double(seq[i]) / double(seq[j]);
            double fac = q * q - 1.0;
            State next;
            for (int c = 0; c < 3; ++c)
                next[c] = table[j + 1][c] + (table[j + 1][c] - table[j][c]) / fac;
            table[j] = table[j + 1];
            table[j + 1] = next;
            // after the loop table[j+1] holds the improved value; shift convention below
        }
        if (i > 0) {
            err = 0.0;
            for (int c = 0; c < 3; ++c)
                err = std::max(err, std::abs(table[i][c] - table[i - 1][c]) /
                                        (1.0 + std::abs(table[i][c])));
        }
    }
    return {table[4], err};
}

}  // namespace

SymmetrySolution solve_symmetries(const RiccatiSystem& sys, double x0_hint, double len) {
    // pre-scan: choose the interval on which the equation's coefficient
    // functions Ups/(O2 Obar)^3 stay smallest (poles of the coefficient set
    // inflate them)
    double best_x0 = x0_hint, best_score = 1e300;
    for (double cand = 0.3; cand <= 3.0; cand += 0.05) {
        double x0 = x0_hint + cand;
        double score = 0.0;
        bool ok = true;
        for (int k = 0; k <= 80; ++k) {
            double t = x0 + len * k / 80.0;
            try {
                auto o = sys.eval(cplx(t), 0);
                auto u = upsilons(sys, cplx(t));
                cplx den = o[3] * o[0];
                double d3 = std::abs(den * den * den);
                if (d3 < 1e-300) { ok = false; break; }
                score = std::max(score, (std::abs(u.u0) + std::abs(u.u1)) / d3);
            } catch (const std::exception&) {
                ok = false;
                break;
            }
        }
        if (ok && score < best_score) {
            best_score = score;
            best_x0 = x0;
        }
    }
    if (best_score >= 1e300)
        throw std::runtime_error("solve_symmetries: no pole-free interval found");
    double x0 = best_x0;

    SymmetrySolution sol;
    sol.x0 = x0;
    sol.len = len;

    struct Node {
        double t;
        State y;
    };
    const State ics[3] = {{cplx(1.0), cplx(0.0), cplx(0.0)},
                          {cplx(0.0), cplx(1.0), cplx(0.0)},
                          {cplx(0.0), cplx(0.0), cplx(1.0)}};

    std::vector<std::vector<Node>> tracks(3);
    const double tol = 1e-12;
    for (int ic = 0; ic < 3; ++ic) {
        double t = x0;
        State y = ics[ic];
        tracks[ic].push_back({t, y});
        double h = len / 256.0;
        const double hmax = len / 256.0;
        int guard = 0;
        while (t < x0 + len - 1e-12) {
            if (++guard > 100000)
                throw std::runtime_error("solve_symmetries: integration stalled");
            h = std::min({h, hmax, x0 + len - t});
            auto [ynext, err] = gbs_step(sys, t, y, h);
            if (err > tol) {
                if (h <= 1e-6)
                    throw std::runtime_error(
                        "solve_symmetries: step floor reached at x = " + std::to_string(t) +
                        " with local error " + std::to_string(err));
                h *= 0.5;
                continue;
            }
            t += h;
            y = ynext;
            tracks[ic].push_back({t, y});
            if (err < tol / 64.0) h *= 1.6;
        }
    }

    // min |Wronskian| over shared nodes (canonical ICs make it 1 at x0)
    double wmin = 1e300;
    for (size_t k = 0; k < tracks[0].size(); ++k) {
        double t = tracks[0][k].t;
        Mat w(3, 3);
        for (int ic = 0; ic < 3; ++ic) {
            // locate the nearest node of track ic
            const auto& tr = tracks[ic];
            size_t idx = std::min(k, tr.size() - 1);
            // nodes differ across tracks только if steps differ; find closest
            while (idx + 1 < tr.size() && std::abs(tr[idx + 1].t - t) < std::abs(tr[idx].t - t))
                ++idx;
            while (idx > 0 && std::abs(tr[idx - 1].t - t) < std::abs(tr[idx].t - t)) --idx;
            for (int c = 0; c < 3; ++c) w(c, ic) = tr[idx].y[c];
        }
        wmin = std::min(wmin, std::abs(determinant(w)));
    }
    sol.wronskian_min = wmin;

    auto make_smooth = [&sys](std::vector<Node> nodes) -> Smooth {
        auto shared = std::make_shared<std::vector<Node>>(std::move(nodes));
        const RiccatiSystem* s = &sys;
        return [shared, s](cplx xc, int order) -> cplx {
            double x = xc.real();
            const auto& nd = *shared;
            if (x < nd.front().t - 1e-9 || x > nd.back().t + 1e-9)
                throw std::runtime_error("symmetry solution evaluated outside its interval");
            size_t hi = 1;
            while (hi + 1 < nd.size() && nd[hi].t < x) ++hi;
            const Node& a = nd[hi - 1];
            const Node& b = nd[hi];
            double h = b.t - a.t;
            double s01 = (x - a.t) / h;
            // septic Hermite from (f, f', f'', f''') at both ends; f''' at
            // the nodes is exact through the differential equation
            auto node_f3 = [&](const Node& n) {
                auto u = upsilons(*s, cplx(n.t));
                auto o = s->eval(cplx(n.t), 0);
                cplx den = o[3] * o[0];
                return (u.u0 * n.y[0] + u.u1 * n.y[1]) / (den * den * den);
            };
            auto hermite = [&](int order_req) -> cplx {
                cplx f0 = a.y[0], f1 = b.y[0];
                cplx d0 = a.y[1] * h, d1 = b.y[1] * h;
                cplx s0 = a.y[2] * h * h, s1 = b.y[2] * h * h;
                cplx t0 = node_f3(a) * h * h * h, t1 = node_f3(b) * h * h * h;
                cplx cs[8];
                cs[0] = f0;
                cs[1] = d0;
                cs[2] = 0.5 * s0;
                cs[3] = t0 / 6.0;
                // remaining four from the s = 1 constraints
                cplx F1 = f1 - (cs[0] + cs[1] + cs[2] + cs[3]);
                cplx D1 = d1 - (cs[1] + 2.0 * cs[2] + 3.0 * cs[3]);
                cplx S1 = s1 - (2.0 * cs[2] + 6.0 * cs[3]);
                cplx T1 = t1 - 6.0 * cs[3];
                // solve [[1,1,1,1],[4,5,6,7],[12,20,30,42],[24,60,120,210]]
                cs[4] = 35.0 * F1 - 15.0 * D1 + 2.5 * S1 - T1 / 6.0;
                cs[5] = -84.0 * F1 + 39.0 * D1 - 7.0 * S1 + 0.5 * T1;
                cs[6] = 70.0 * F1 - 34.0 * D1 + 6.5 * S1 - 0.5 * T1;
                cs[7] = -20.0 * F1 + 10.0 * D1 - 2.0 * S1 + T1 / 6.0;
                cplx acc = 0.0;
                for (int k8 = 7; k8 >= order_req; --k8) {
                    double fct = 1.0;
                    for (int j = 0; j < order_req; ++j) fct *= double(k8 - j);
                    acc = acc * s01 + fct * cs[k8];
                }
                return acc / std::pow(h, order_req);
            };
            if (order <= 2) return hermite(order);
            // third derivative from the equation itself
            cplx f = hermite(0), fp = hermite(1);
            auto u = upsilons(*s, cplx(x));
            auto o = s->eval(cplx(x), 0);
            cplx den = o[3] * o[0];
            return (u.u0 * f + u.u1 * fp) / (den * den * den);
        };
    };

    for (int ic = 0; ic < 3; ++ic) {
        Smooth f0 = make_smooth(tracks[ic]);
        SymTriple t = triple_from_f0(f0, sys);
        sol.triples.push_back(t);
        sol.fields.push_back(t.field("v" + std::to_string(ic)));
    }
    return sol;
}

VectorField commutator(const VectorField& v, const VectorField& w) {
    VectorField c;
    auto vcopy = v, wcopy = w;
    c.xi = [vcopy, wcopy](cplx x, cplx lam) {
        return vcopy.xi(x, lam) * wcopy.xi_x(x, lam) + vcopy.phi(x, lam) * wcopy.xi_L(x, lam) -
               wcopy.xi(x, lam) * vcopy.xi_x(x, lam) - wcopy.phi(x, lam) * vcopy.xi_L(x, lam);
    };
    c.phi = [vcopy, wcopy](cplx x, cplx lam) {
        return vcopy.xi(x, lam) * wcopy.phi_x(x, lam) + vcopy.phi(x, lam) * wcopy.phi_L(x, lam) -
               wcopy.xi(x, lam) * vcopy.phi_x(x, lam) - wcopy.phi(x, lam) * vcopy.phi_L(x, lam);
    };
    c.label = "[" + v.label + "," + w.label + "]";
    return c;
}

AlgebraClassification classify_algebra(const std::vector<VectorField>& fields,
                                       const std::vector<cplx>& xs, const std::vector<cplx>& ls) {
    if (fields.size() != 3) throw std::invalid_argument("classify_algebra: need three fields");
    AlgebraClassification cls;
    double worst = 0.0;
    bool rank_ok = true;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            VectorField br = commutator(fields[i], fields[j]);
            int rows = static_cast<int>(xs.size() * ls.size()) * 2;
            Mat a(rows, 3);
            std::vector<cplx> b(rows);
            int r = 0;
            for (const auto& x : xs)
                for (const auto& lam : ls) {
                    for (int k = 0; k < 3; ++k) {
                        a(r, k) = fields[k].xi(x, lam);
                        a(r + 1, k) = fields[k].phi(x, lam);
                    }
                    b[r] = br.xi(x, lam);
                    b[r + 1] = br.phi(x, lam);
                    r += 2;
                }
            std::vector<cplx> coef;
            try {
                coef = lstsq(a, b);
            } catch (const std::exception&) {
                cls.verdict = "inconclusive";
                return cls;
            }
            double scale = 0.0, resid = 0.0;
            for (int rr = 0; rr < rows; ++rr) {
                cplx pred = 0.0;
                for (int k = 0; k < 3; ++k) pred += a(rr, k) * coef[k];
                resid = std::max(resid, std::abs(pred - b[rr]));
                scale = std::max(scale, std::abs(b[rr]));
                for (int k = 0; k < 3; ++k) scale = std::max(scale, std::abs(a(rr, k)));
            }
            worst = std::max(worst, resid / (scale > 0 ? scale : 1.0));
            for (int k = 0; k < 3; ++k) {
                cls.constants[i][j][k] = coef[k];
                cls.constants[j][i][k] = -coef[k];
            }
            (void)rank_ok;
        }
    cls.closure_residual = worst;

    // Killing form K_ab = sum_{c,d} c[a][c][d] c[b][d][c]
    Mat killing(3, 3);
    for (int a_ = 0; a_ < 3; ++a_)
        for (int b_ = 0; b_ < 3; ++b_) {
            cplx s = 0.0;
            for (int c_ = 0; c_ < 3; ++c_)
                for (int d_ = 0; d_ < 3; ++d_)
                    s += cls.constants[a_][c_][d_] * cls.constants[b_][d_][c_];
            killing(a_, b_) = s;
        }
    auto ev = eigenvalues(killing);
    double emax = 0.0;
    for (const auto& e : ev) emax = std::max(emax, std::abs(e));
    int rank = 0;
    for (const auto& e : ev)
        if (std::abs(e) > 1e-5 * (emax > 0 ? emax : 1.0)) ++rank;
    cls.killing_rank = rank;
    if (cls.closure_residual < 1e-5 && rank == 3)
        cls.verdict = "sl2";
    else if (cls.closure_residual < 1e-5)
        cls.verdict = "not-semisimple";
    else
        cls.verdict = "inconclusive";
    return cls;
}

// --- closed-form generators -------------------------------------------------

namespace {

// lambda_+ / lambda_- as monomial polynomials (rational family)
std::pair<Poly, Poly> lambda_polys(const ModelParams& p) {
    Poly la = Poly::constant(1.0), ld = Poly::constant(1.0);
    for (const auto& m : p.mu) {
        la = la * Poly({cplx(1.0) - m, cplx(1.0)});
        ld = ld * Poly({-m, cplx(1.0)});
    }
    Poly lp = p.phi1 * la + p.phi2 * ld;
    Poly lm = p.phi2 * ld + cplx(-1.0) * (p.phi1 * la);
    return {lp, lm};
}

Smooth smooth_poly(Poly p) {
    return [p = std::move(p)](cplx x, int order) { return p.derivative(order)(x); };
}

Smooth smooth_ratio(Poly num, Poly den) {
    return [num = std::move(num), den = std::move(den)](cplx x, int order) {
        DStream n = dpoly(num, x, kMaxOrder);
        DStream d = dpoly(den, x, kMaxOrder);
        return dquot(n, d, kMaxOrder)[order];
    };
}

}  // namespace

std::array<SymTriple, 3> generators_n1(const ModelParams& p) {
    if (p.family != Family::rational)
        throw std::invalid_argument("generators_n1: rational family only");
    auto [lp, lm] = lambda_polys(p);
    Poly lpd = lp.derivative(), lmd = lm.derivative();
    const cplx I(0.0, 1.0);
    Poly x = Poly::x();

    // X+: xi = -i, phi = -i [ lp' + (L - lp) lm'/lm ]
    SymTriple xp;
    xp.f0 = smooth_const(-I);
    xp.g1 = smooth_ratio(-I * lmd, lm);
    xp.g0 = smooth_ratio(-I * (lpd * lm - lp * lmd), lm);
    // H: xi = -2x, phi = -2 [ x lp' + (L - lp)(x lm'/lm - 1) ]
    SymTriple h;
    h.f0 = smooth_poly(cplx(-2.0) * x);
    h.g1 = smooth_ratio(cplx(-2.0) * (x * lmd - lm), lm);
    h.g0 = smooth_ratio(cplx(-2.0) * (x * lpd * lm - lp * (x * lmd - lm)), lm);
    // X-: xi = -i x^2, phi = -i [ lm + x^2 lp' + x (L - lp)(x lm'/lm - 2) ]
    SymTriple xm;
    xm.f0 = smooth_poly(-I * (x * x));
    xm.g1 = smooth_ratio(-I * (x * (x * lmd - cplx(2.0) * lm)), lm);
    xm.g0 = smooth_ratio(-I * (lm * lm + (x * x) * lpd * lm - x * lp * (x * lmd - cplx(2.0) * lm)),
                         lm);
    return {xp, xm, h};
}

namespace detail {
// tabulated phi components of the sector-2 closed forms (see
// n2_generator_tables.cpp); which: 0 = H, 1 = X+, 2 = X-
cplx n2_phi_table(int which, cplx x, cplx lam, cplx u1, const Poly& lp, const Poly& lm);
}  // namespace detail
using detail::n2_phi_table;

GeneratorsN2 generators_n2(cplx u1, const ModelParams& p) {
    if (p.family != Family::rational)
        throw std::invalid_argument("generators_n2: rational family only");
    auto [lp, lm] = lambda_polys(p);
    cplx lpu = lp(u1), lmu = lm(u1);

    // shared denominator: W(x) = 2(u1 - x) lmu + (x^2 - 2 u1 x + u1^2 + 1) lpu
    Poly X = Poly::x();
    Poly W = Poly({2.0 * u1 * lmu + (u1 * u1 + 1.0) * lpu, -2.0 * lmu - 2.0 * u1 * lpu, lpu});
    cplx cH = lmu + u1 * lpu;
    cplx cP = 2.0 * u1 * lmu + (u1 * u1 + 1.0) * lpu;

    Poly q1 = Poly({-u1 * lpu - lmu, lpu});                             // (x-u1) lpu - lmu
    Poly q2 = Poly({-2.0 * u1 * lmu - (u1 * u1 + 1.0) * lpu, lmu + u1 * lpu});
    // q2 = (x - 2u1) lmu - (u1^2 - u1 x + 1) lpu
    Poly q3 = Poly({lmu + u1 * lpu, -lpu});                             // lmu + (u1 - x) lpu

    Poly numH = cplx(2.0) * X * q1 * q2;
    Poly numP = X * X * q2 * q2;
    Poly numM = cplx(-1.0) * (cP * cP) * (q3 * q3);

    auto xiH = smooth_ratio(numH, cH * W);
    auto xiP = smooth_ratio(numP, (cP * cP) * W);
    auto xiM = smooth_ratio(numM, (cH * cH) * W);

    auto sys = std::shared_ptr<RiccatiSystem>(coeffs_n2_system(u1, p).release());
    auto own_triple = [sys](Smooth f0) {
        // keep the coefficient system alive inside the closures
        SymTriple t = triple_from_f0(f0, *sys);
        Smooth g0 = t.g0, g1 = t.g1;
        t.g0 = [sys, g0](cplx x, int order) { return g0(x, order); };
        t.g1 = [sys, g1](cplx x, int order) { return g1(x, order); };
        return t;
    };

    GeneratorsN2 out;
    out.triples = {own_triple(xiP), own_triple(xiM), own_triple(xiH)};

    // compare the tabulated phi transcriptions on a sample grid
    const char* names[3] = {"phi_plus", "phi_minus", "phi_H"};
    const int table_idx[3] = {1, 2, 0};  // X+, X-, H
    std::vector<cplx> xs = {cplx(0.45, 0.1), cplx(1.2, -0.3), cplx(2.0, 0.5), cplx(0.8, 0.0)};
    std::vector<cplx> lams = {cplx(0.7, 0.3), cplx(2.0, -1.0)};
    for (int g = 0; g < 3; ++g) {
        GeneratorReportEntry e;
        e.name = names[g];
        double worst = 0.0;
        for (const auto& x : xs)
            for (const auto& lam : lams) {
                cplx built =
                    out.triples[g].g0(x, 0) + out.triples[g].g1(x, 0) * lam;
                cplx tab = n2_phi_table(table_idx[g], x, lam, u1, lp, lm);
                worst = std::max(worst, std::abs(tab - built) / (1.0 + std::abs(built)));
            }
        e.max_rel_dev = worst;
        e.matches = worst < 1e-6;
        out.tabulated_phi_report.push_back(e);
    }
    return out;
}

std::string symmetry_report(int n, const AlgebraClassification& cls) {
    nlohmann::json j;
    j["n"] = n;
    nlohmann::json rows = nlohmann::json::array();
    for (int i = 0; i < 3; ++i)
        for (int jx = i + 1; jx < 3; ++jx) {
            nlohmann::json row;
            row["pair"] = {i, jx};
            nlohmann::json cs = nlohmann::json::array();
            for (int k = 0; k < 3; ++k)
                cs.push_back({round_sig(cls.constants[i][jx][k].real()),
                              round_sig(cls.constants[i][jx][k].imag())});
            row["coefficients"] = cs;
            rows.push_back(row);
        }
    j["structure_constants"] = rows;
    j["closure_residual"] = round_sig(cls.closure_residual);
    j["killing_rank"] = cls.killing_rank;
    j["verdict"] = cls.verdict == "sl2" ? "sl2" : "other";
    return j.dump(2);
}

}  // namespace sixv
