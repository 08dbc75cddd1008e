// Batch front end: spectra, verification suites, zero solves, symmetry
// analysis and cycle graphs, with JSON/CSV/DOT reports.
#include <CLI11.hpp>

#include <complex>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "sixv/functional.hpp"
#include "sixv/lie.hpp"
#include "sixv/model.hpp"
#include "sixv/oracle.hpp"
#include "sixv/report.hpp"
#include "sixv/riccati_forms.hpp"
#include "sixv/spectral_maps.hpp"
#include "sixv/zero_solver.hpp"

using namespace sixv;

namespace {

cplx parse_complex(const std::string& text) {
    // forms: "1.2", "3i", "1.2+0.7i", "-0.5-2i"
    std::string s = text;
    if (s.empty()) throw CLI::ValidationError("empty complex literal");
    if (s.back() == 'i' || s.back() == 'I') {
        s.pop_back();
        // split into real and imaginary pieces at the last +/- not after e/E
        int split = -1;
        for (int k = static_cast<int>(s.size()) - 1; k > 0; --k) {
            if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
                split = k;
                break;
            }
        }
        if (split < 0) {
            if (s.empty() || s == "+") s = "1";
            if (s == "-") s = "-1";
            return {0.0, std::stod(s)};
        }
        std::string im = s.substr(split);
        if (im == "+") im = "1";
        if (im == "-") im = "-1";
        return {std::stod(s.substr(0, split)), std::stod(im)};
    }
    return {std::stod(s), 0.0};
}

struct Options {
    std::string family;
    std::string gamma = "0", phi1 = "1", phi2 = "1", mu, u1;
    int L = -1;
    int sector = -1;
    double tol = -1.0;
    std::string out;
    std::string config;
};

ModelParams build_params(const Options& o) {
    ModelParams p;
    if (o.family == "rational")
        p.family = Family::rational;
    else if (o.family == "trigonometric")
        p.family = Family::trigonometric;
    else
        throw CLI::ValidationError("--family must be rational or trigonometric");
    if (o.L < 1) throw CLI::ValidationError("--L must be >= 1");
    p.L = o.L;
    p.gamma = parse_complex(o.gamma);
    p.phi1 = parse_complex(o.phi1);
    p.phi2 = parse_complex(o.phi2);
    if (o.mu.empty()) {
        p.mu.assign(p.L, cplx(0.0));
    } else {
        std::stringstream ss(o.mu);
        std::string tok;
        while (std::getline(ss, tok, ',')) p.mu.push_back(parse_complex(tok));
        if (static_cast<int>(p.mu.size()) != p.L)
            throw CLI::ValidationError("--mu must list exactly L entries");
    }
    try {
        p.validate();
    } catch (const std::exception& e) {
        throw CLI::ValidationError(e.what());
    }
    return p;
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty()) {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open output file " + out);
    f << text;
}

int cmd_spectrum(const Options& o) {
    ModelParams p = build_params(o);
    if (o.sector < 0 || o.sector > p.L)
        throw CLI::ValidationError("--sector must satisfy 0 <= n <= L");
    auto curves = diagonalize_sector(p, o.sector);
    emit(o.out, spectrum_report(p, o.sector, curves));
    return 0;
}

int cmd_verify(const Options& o) {
    ModelParams p = build_params(o);
    if (o.tol == 0.0 || (o.tol > 0 && o.tol < 1e-18)) {
        // double precision cannot reach it; report failure after the run
    }
    double tol_cc = o.tol > 0 ? o.tol : 1e-7;
    double tol_ric = o.tol > 0 ? o.tol : 1e-6;
    double tol_quad = o.tol > 0 ? o.tol : 1e-6;
    double tol_bc = o.tol > 0 ? o.tol : 1e-8;
    double tol_alt = o.tol > 0 ? o.tol : 1e-6;

    nlohmann::json rep;
    rep["params"] = nlohmann::json::parse(p.to_json());
    bool all_ok = true;
    std::mt19937 rng(0xC0FFEE);
    std::uniform_real_distribution<double> re(-0.8, 0.8), im(-0.4, 0.4);
    nlohmann::json sectors = nlohmann::json::array();
    for (int n = 1; n <= p.L; ++n) {
        auto curves = diagonalize_sector(p, n);
        nlohmann::json sec;
        sec["n"] = n;
        nlohmann::json rows = nlohmann::json::array();
        for (size_t ci = 0; ci < curves.size(); ++ci) {
            const auto& sc = curves[ci];
            auto fn = [&](cplx x) { return sc.eval(x); };
            double worst_cc = 0.0;
            for (int t = 0; t < 10; ++t) {
                PointTuple pts;
                for (int k = 0; k <= n; ++k) pts.x.emplace_back(re(rng), im(rng));
                try {
                    worst_cc = std::max(worst_cc, compatibility_det_normalized(pts, fn, p));
                } catch (const std::exception&) {
                    --t;  // rejected tuple (collision); redraw
                }
            }
            double worst_ric = 0.0, worst_quad = 0.0;
            std::vector<std::vector<cplx>> subsets;
            {
                std::vector<std::vector<int>> combos;
                std::vector<int> cur;
                std::function<void(int)> rec = [&](int start) {
                    if (static_cast<int>(cur.size()) == n - 1) {
                        combos.push_back(cur);
                        return;
                    }
                    for (int k = start; k < p.L; ++k) {
                        cur.push_back(k);
                        rec(k + 1);
                        cur.pop_back();
                    }
                };
                rec(0);
                std::mt19937 rng2(0xC0FFEE);
                if (combos.size() > 20) {
                    std::shuffle(combos.begin(), combos.end(), rng2);
                    combos.resize(20);
                }
                for (const auto& cb : combos) {
                    std::vector<cplx> s;
                    for (int k : cb) s.push_back(sc.zeroes[k]);
                    subsets.push_back(s);
                }
            }
            for (const auto& sub : subsets) {
                for (int t = 0; t < 20; ++t) {
                    cplx x(re(rng), im(rng));
                    try {
                        auto rc = riccati_coefficients(n, sub, x, p);
                        worst_ric = std::max(worst_ric,
                                             riccati_residual_rel(rc, sc.eval(x), sc.eval_d(x)));
                        worst_quad = std::max(worst_quad, quadratic_residual_rel(sc, sub, x, p));
                    } catch (const std::exception&) {
                        --t;
                    }
                }
            }
            double worst_alt = 0.0;
            if (n == 2 && p.family == Family::trigonometric) {
                for (int t = 0; t < 20; ++t) {
                    cplx x(re(rng), im(rng));
                    worst_alt = std::max(
                        worst_alt,
                        alt_riccati_residual_rel(sc.eval(x), sc.eval_d(x), sc.lambda0, x, p));
                }
            }
            auto [bc1, bc2] = boundary_conditions(n, sc.zeroes, sc.lambda0, p);
            bool ok = worst_cc < tol_cc && worst_ric < tol_ric && worst_quad < tol_quad &&
                      worst_alt < tol_alt && bc1 < tol_bc && bc2 < tol_bc;
            all_ok = all_ok && ok;
            nlohmann::json row;
            row["curve"] = ci;
            row["compatibility_det"] = round_sig(worst_cc);
            row["riccati_residual"] = round_sig(worst_ric);
            row["quadratic_residual"] = round_sig(worst_quad);
            row["alt_riccati_residual"] = round_sig(worst_alt);
            row["boundary1"] = round_sig(bc1);
            row["boundary2"] = round_sig(bc2);
            row["ok"] = ok;
            rows.push_back(row);
        }
        sec["curves"] = rows;
        sectors.push_back(sec);
    }
    rep["sectors"] = sectors;
    rep["ok"] = all_ok;
    emit(o.out, rep.dump(2));
    return all_ok ? 0 : 1;
}

int cmd_zeroes(const Options& o) {
    ModelParams p = build_params(o);
    if (o.sector < 1 || o.sector > p.L)
        throw CLI::ValidationError("--sector must satisfy 1 <= n <= L");
    auto curves = diagonalize_sector(p, o.sector);
    std::mt19937 rng(4242);
    std::uniform_real_distribution<double> uni(-0.01, 0.01);
    nlohmann::json rep = nlohmann::json::array();
    bool all_ok = true;
    for (const auto& sc : curves) {
        auto seed = sc.zeroes;
        for (auto& u : seed) u += cplx(uni(rng), uni(rng)) * std::abs(u);
        auto res = solve_zeroes(p, o.sector, sc.lambda0, seed);
        all_ok = all_ok && res.converged;
        rep.push_back(nlohmann::json::parse(res.to_json()));
    }
    emit(o.out, rep.dump(2));
    return all_ok ? 0 : 1;
}

int cmd_symmetry(const Options& o) {
    ModelParams p = build_params(o);
    if (p.family != Family::rational)
        throw CLI::ValidationError("--family rational required for closed-form symmetry runs");
    std::vector<VectorField> fields;
    if (o.sector == 1) {
        auto gens = generators_n1(p);
        fields = {gens[0].field("X+"), gens[1].field("X-"), gens[2].field("H")};
    } else if (o.sector == 2) {
        if (o.u1.empty()) throw CLI::ValidationError("--u1 required for sector 2");
        auto gens = generators_n2(parse_complex(o.u1), p);
        fields = {gens.triples[0].field("X+"), gens.triples[1].field("X-"),
                  gens.triples[2].field("H")};
    } else {
        throw CLI::ValidationError("--sector must be 1 or 2 (closed forms)");
    }
    std::vector<cplx> xs, ls;
    for (int k = 0; k < 5; ++k) {
        xs.emplace_back(0.45 + 0.35 * k, 0.1 - 0.05 * k);
        ls.emplace_back(0.6 + 0.4 * k, -0.2 + 0.15 * k);
    }
    auto cls = classify_algebra(fields, xs, ls);
    emit(o.out, symmetry_report(o.sector, cls));
    return cls.verdict == "sl2" ? 0 : 1;
}

int cmd_cycles(const Options& o) {
    ModelParams p = build_params(o);
    if (p.family != Family::rational)
        throw CLI::ValidationError("--family rational required for cycle graphs");
    auto g = build_cycle_graph(p);
    emit(o.out, cycle_graph_dot(g));
    if (!o.out.empty()) emit(o.out + ".json", cycle_graph_json(g));
    return 0;
}

void apply_config(Options& o, const CLI::App& app) {
    if (o.config.empty()) return;
    std::ifstream f(o.config);
    if (!f) throw CLI::ValidationError("cannot read config file " + o.config);
    nlohmann::json j;
    f >> j;
    auto unset = [&](const char* flag) { return app.count(flag) == 0; };
    auto cstr = [](const nlohmann::json& v) -> std::string {
        if (v.is_array()) {
            cplx z(v.at(0).get<double>(), v.at(1).get<double>());
            return fmt_complex(z);
        }
        return v.get<std::string>();
    };
    if (j.contains("family") && unset("--family")) o.family = j["family"].get<std::string>();
    if (j.contains("gamma") && unset("--gamma")) o.gamma = cstr(j["gamma"]);
    if (j.contains("phi1") && unset("--phi1")) o.phi1 = cstr(j["phi1"]);
    if (j.contains("phi2") && unset("--phi2")) o.phi2 = cstr(j["phi2"]);
    if (j.contains("u1") && unset("--u1")) o.u1 = cstr(j["u1"]);
    if (j.contains("L") && unset("--L")) o.L = j["L"].get<int>();
    if (j.contains("sector") && unset("--sector")) o.sector = j["sector"].get<int>();
    if (j.contains("tol") && unset("--tol")) o.tol = j["tol"].get<double>();
    if (j.contains("out") && unset("--out")) o.out = j["out"].get<std::string>();
    if (j.contains("mu") && unset("--mu")) {
        std::string acc;
        for (const auto& m : j["mu"]) {
            if (!acc.empty()) acc += ",";
            acc += cstr(m);
        }
        o.mu = acc;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"six-vertex transfer-matrix spectrum laboratory"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--family", o.family, "rational | trigonometric");
        sub->add_option("--gamma", o.gamma, "anisotropy (complex, e.g. 0.3+0.1i)");
        sub->add_option("--phi1", o.phi1, "first twist");
        sub->add_option("--phi2", o.phi2, "second twist");
        sub->add_option("--mu", o.mu, "comma list of inhomogeneities");
        sub->add_option("--L", o.L, "lattice length");
        sub->add_option("--sector", o.sector, "magnon sector n");
        sub->add_option("--u1", o.u1, "eigenvalue zero parameter (sector 2)");
        sub->add_option("--tol", o.tol, "tolerance override");
        sub->add_option("--out", o.out, "output path (stdout when omitted)");
        sub->add_option("--config", o.config, "JSON config file (flags take precedence)");
    };

    auto* spectrum = app.add_subcommand("spectrum", "diagonalize one sector");
    auto* verify = app.add_subcommand("verify", "run the residual verification suites");
    auto* zeroes = app.add_subcommand("zeroes", "re-solve eigenvalue zero sets");
    auto* symmetry = app.add_subcommand("symmetry", "symmetry algebra classification");
    auto* cycles = app.add_subcommand("cycles", "sector-1 cycle graph (DOT + JSON)");
    for (auto* sub : {spectrum, verify, zeroes, symmetry, cycles}) add_common(sub);

    try {
        app.parse(argc, argv);
        CLI::App* sub = app.get_subcommands().front();
        apply_config(o, *sub);
        if (sub == spectrum) return cmd_spectrum(o);
        if (sub == verify) return cmd_verify(o);
        if (sub == zeroes) return cmd_zeroes(o);
        if (sub == symmetry) return cmd_symmetry(o);
        return cmd_cycles(o);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        nlohmann::json err;
        err["error"] = e.what();
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
