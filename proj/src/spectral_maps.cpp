#include "sixv/spectral_maps.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "sixv/linalg.hpp"
#include "sixv/report.hpp"
#include "sixv/roots.hpp"

namespace sixv {

namespace {

Poly lambda_minus_poly(const ModelParams& p) {
    Poly la = Poly::constant(1.0), ld = Poly::constant(1.0);
    for (const auto& m : p.mu) {
        la = la * Poly({cplx(1.0) - m, cplx(1.0)});
        ld = ld * Poly({-m, cplx(1.0)});
    }
    return p.phi2 * ld + cplx(-1.0) * (p.phi1 * la);
}

void require_rational_sector1(const SpectralCurve& sc, const ModelParams& p, const char* who) {
    if (p.family != Family::rational)
        throw std::invalid_argument(std::string(who) + ": rational family only");
    if (sc.sector != 1) throw std::invalid_argument(std::string(who) + ": sector 1 only");
}

}  // namespace

K1Image k1_apply(const SpectralCurve& sc, cplx alpha, const ModelParams& p) {
    require_rational_sector1(sc, p, "k1_apply");
    const cplx ia(0.0, 1.0);
    cplx shift = ia * alpha;
    Curve curve = sc.curve;

    K1Image img;
    img.eval = [curve, shift, p](cplx x) {
        cplx lm_x = lambda_pm(Sign::minus, x, p);
        cplx lm_s = lambda_pm(Sign::minus, x + shift, p);
        return (curve.eval(x + shift) - lambda_pm(Sign::plus, x + shift, p)) * lm_x / lm_s +
               lambda_pm(Sign::plus, x, p);
    };

    // poles sit at roots w of l- shifted back: x = w - i alpha
    Poly lm = lambda_minus_poly(p);
    auto ws = find_roots(lm).roots;
    double scale = sc.curve.coeff_scale();
    img.polynomial = true;
    for (const auto& w : ws) {
        // residue of the image at x = w - i alpha:
        //   [L(w) - l+(w)] * l-(w - i alpha) / l-'(w)
        cplx num = (sc.eval(w) - lambda_pm(Sign::plus, w, p)) *
                   lambda_pm(Sign::minus, w - shift, p);
        cplx res = num / lm.derivative()(w);
        img.residues.push_back(res);
        if (std::abs(res) > 1e-8 * scale) img.polynomial = false;
    }
    if (img.polynomial) {
        auto xs = Curve::fit_grid(CurveBasis::monomial, 2 * p.L + 7);
        std::vector<cplx> fs(xs.size());
        for (size_t k = 0; k < xs.size(); ++k) fs[k] = img.eval(xs[k]);
        auto [fit, resid] = Curve::fit(CurveBasis::monomial, p.L, xs, fs);
        if (resid < 1e-8) img.fitted = fit;
        else img.polynomial = false;
    }
    return img;
}

Curve k1_as_curve(const SpectralCurve& sc, cplx alpha, const ModelParams& p) {
    K1Image img = k1_apply(sc, alpha, p);
    if (!img.polynomial || !img.fitted) {
        std::ostringstream os;
        os << "k1_as_curve: image is not polynomial; residues:";
        for (const auto& r : img.residues) os << " " << std::abs(r);
        throw std::runtime_error(os.str());
    }
    return *img.fitted;
}

std::vector<AlphaCandidate> admissible_alphas(const SpectralCurve& sc, const ModelParams& p) {
    require_rational_sector1(sc, p, "admissible_alphas");
    Poly lm = lambda_minus_poly(p);
    auto ws = find_roots(lm).roots;
    std::vector<AlphaCandidate> out;
    const cplx I(0.0, 1.0);
    for (size_t l = 0; l < ws.size(); ++l) {
        cplx dl = sc.eval(ws[l]) - lambda_pm(Sign::plus, ws[l], p);
        double sl = std::abs(lambda_pm(Sign::plus, ws[l], p)) + 1.0;
        if (std::abs(dl) > 1e-8 * sl) continue;  // need equality at w_l
        for (size_t m = 0; m < ws.size(); ++m) {
            if (m == l) continue;
            cplx dm = sc.eval(ws[m]) - lambda_pm(Sign::plus, ws[m], p);
            double sm = std::abs(lambda_pm(Sign::plus, ws[m], p)) + 1.0;
            if (std::abs(dm) < 1e-4 * sm) continue;  // need inequality at w_m
            out.push_back({I * (ws[l] - ws[m]), ws[l], ws[m]});
        }
    }
    return out;
}

CycleGraph build_cycle_graph(const ModelParams& p) {
    if (p.family != Family::rational)
        throw std::invalid_argument("build_cycle_graph: rational family only");
    CycleGraph g;
    g.nodes = diagonalize_sector(p, 1);
    int count = static_cast<int>(g.nodes.size());

    // locate the lambda_+ node and verify its fixed-point property
    std::mt19937 rng(0xA1FA);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    for (int i = 0; i < count; ++i) {
        bool is_lp = true;
        for (int k = 0; k < 4; ++k) {
            cplx x(uni(rng), uni(rng));
            if (std::abs(g.nodes[i].eval(x) - lambda_pm(Sign::plus, x, p)) >
                1e-8 * (1.0 + std::abs(g.nodes[i].eval(x)))) {
                is_lp = false;
                break;
            }
        }
        if (is_lp) {
            g.loop_node = i;
            bool loop_ok = true;
            for (int k = 0; k < 5; ++k) {
                cplx alpha(uni(rng), uni(rng));
                Curve image = k1_as_curve(g.nodes[i], alpha, p);
                if (image.coeff_distance(g.nodes[i].curve) >
                    1e-8 * g.nodes[i].curve.coeff_scale())
                    loop_ok = false;
            }
            if (loop_ok)
                g.edges.push_back({i, i, cplx(1.0, 0.0)});
            else
                g.dropped.push_back("self-loop verification failed on node " + std::to_string(i));
            break;
        }
    }

    for (int i = 0; i < count; ++i) {
        if (i == g.loop_node) continue;
        for (const auto& cand : admissible_alphas(g.nodes[i], p)) {
            Curve image;
            try {
                image = k1_as_curve(g.nodes[i], cand.alpha, p);
            } catch (const std::exception& e) {
                g.dropped.push_back("node " + std::to_string(i) + ": " + e.what());
                continue;
            }
            int target = -1;
            for (int j = 0; j < count; ++j)
                if (image.coeff_distance(g.nodes[j].curve) <=
                    1e-8 * std::max(1.0, g.nodes[j].curve.coeff_scale())) {
                    target = j;
                    break;
                }
            if (target < 0) {
                g.dropped.push_back("node " + std::to_string(i) +
                                    ": image matches no sector curve");
                continue;
            }
            bool dup = false;
            for (const auto& e : g.edges)
                if (e.src == i && e.dst == target && std::abs(e.alpha - cand.alpha) < 1e-10)
                    dup = true;
            if (!dup) g.edges.push_back({i, target, cand.alpha});
        }
    }
    return g;
}

std::string cycle_graph_dot(const CycleGraph& g) {
    std::ostringstream os;
    os << "digraph cycles {\n";
    for (const auto& e : g.edges)
        os << "  \"L" << e.src << "\" -> \"L" << e.dst << "\" [label=\"alpha="
           << fmt_complex(e.alpha) << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string cycle_graph_json(const CycleGraph& g) {
    nlohmann::json j;
    j["nodes"] = nlohmann::json::array();
    for (size_t i = 0; i < g.nodes.size(); ++i) {
        nlohmann::json node;
        node["label"] = "L" + std::to_string(i);
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& c : g.nodes[i].curve.coeffs())
            coeffs.push_back({round_sig(c.real()), round_sig(c.imag())});
        node["coeffs"] = coeffs;
        j["nodes"].push_back(node);
    }
    j["edges"] = nlohmann::json::array();
    for (const auto& e : g.edges) {
        nlohmann::json edge;
        edge["src"] = e.src;
        edge["dst"] = e.dst;
        edge["alpha"] = {round_sig(e.alpha.real()), round_sig(e.alpha.imag())};
        j["edges"].push_back(edge);
    }
    j["loop_node"] = g.loop_node;
    return j.dump(2);
}

}  // namespace sixv
