#include "sixv/model.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace sixv {

void ModelParams::validate() const {
    if (L < 1) throw std::invalid_argument("ModelParams: L must be >= 1");
    if (phi1 == cplx(0.0) || phi2 == cplx(0.0))
        throw std::invalid_argument("ModelParams: twists must be nonzero");
    if (static_cast<int>(mu.size()) != L)
        throw std::invalid_argument("ModelParams: mu must have exactly L entries");
    if (family == Family::trigonometric && std::abs(std::sinh(gamma)) == 0.0)
        throw std::invalid_argument("ModelParams: sinh(gamma) must be nonzero");
}

cplx weight(WeightKind kind, cplx x, const ModelParams& p) {
    if (p.family == Family::rational) {
        switch (kind) {
            case WeightKind::a: return x + 1.0;
            case WeightKind::b: return x;
            case WeightKind::c: return 1.0;
        }
    }
    switch (kind) {
        case WeightKind::a: return std::sinh(x + p.gamma);
        case WeightKind::b: return std::sinh(x);
        case WeightKind::c: return std::sinh(p.gamma);
    }
    return 0.0;
}

namespace {
cplx weight_d(WeightKind kind, cplx x, const ModelParams& p) {
    if (p.family == Family::rational) return kind == WeightKind::c ? cplx(0.0) : cplx(1.0);
    switch (kind) {
        case WeightKind::a: return std::cosh(x + p.gamma);
        case WeightKind::b: return std::cosh(x);
        case WeightKind::c: return 0.0;
    }
    return 0.0;
}
}  // namespace

cplx highest_weight(HwKind kind, cplx x, const ModelParams& p) {
    WeightKind w = (kind == HwKind::A) ? WeightKind::a : WeightKind::b;
    cplx prod = 1.0;
    for (const auto& m : p.mu) prod *= weight(w, x - m, p);
    return prod;
}

cplx highest_weight_d(HwKind kind, cplx x, const ModelParams& p) {
    WeightKind w = (kind == HwKind::A) ? WeightKind::a : WeightKind::b;
    cplx sum = 0.0;
    for (size_t j = 0; j < p.mu.size(); ++j) {
        cplx term = weight_d(w, x - p.mu[j], p);
        for (size_t k = 0; k < p.mu.size(); ++k)
            if (k != j) term *= weight(w, x - p.mu[k], p);
        sum += term;
    }
    return sum;
}

cplx lambda_pm(Sign sign, cplx x, const ModelParams& p) {
    cplx la = p.phi1 * highest_weight(HwKind::A, x, p);
    cplx ld = p.phi2 * highest_weight(HwKind::D, x, p);
    return sign == Sign::plus ? la + ld : ld - la;
}

cplx lambda_pm_d(Sign sign, cplx x, const ModelParams& p) {
    cplx la = p.phi1 * highest_weight_d(HwKind::A, x, p);
    cplx ld = p.phi2 * highest_weight_d(HwKind::D, x, p);
    return sign == Sign::plus ? la + ld : ld - la;
}

std::string ModelParams::to_json() const {
    nlohmann::json j;
    j["family"] = family == Family::rational ? "rational" : "trigonometric";
    j["gamma"] = {gamma.real(), gamma.imag()};
    j["phi1"] = {phi1.real(), phi1.imag()};
    j["phi2"] = {phi2.real(), phi2.imag()};
    nlohmann::json mus = nlohmann::json::array();
    for (const auto& m : mu) mus.push_back({m.real(), m.imag()});
    j["mu"] = mus;
    j["L"] = L;
    return j.dump();
}

ModelParams ModelParams::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    ModelParams p;
    std::string fam = j.at("family").get<std::string>();
    if (fam == "rational")
        p.family = Family::rational;
    else if (fam == "trigonometric")
        p.family = Family::trigonometric;
    else
        throw std::invalid_argument("ModelParams: unknown family " + fam);
    auto getc = [&](const char* key) {
        auto v = j.at(key);
        return cplx(v.at(0).get<double>(), v.at(1).get<double>());
    };
    p.gamma = getc("gamma");
    p.phi1 = getc("phi1");
    p.phi2 = getc("phi2");
    p.L = j.at("L").get<int>();
    for (const auto& m : j.at("mu")) p.mu.emplace_back(m.at(0).get<double>(), m.at(1).get<double>());
    p.validate();
    return p;
}

}  // namespace sixv
