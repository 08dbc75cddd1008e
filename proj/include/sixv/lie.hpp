#pragma once

#include <array>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "sixv/model.hpp"
#include "sixv/riccati_forms.hpp"

namespace sixv {

/// Univariate function evaluable together with its derivatives:
/// call(x, k) = f^(k)(x). Wrappers exist for analytic closures and for
/// Richardson finite differences over a value-only closure.
using Smooth = std::function<cplx(cplx, int)>;

Smooth smooth_fd(std::function<cplx(cplx)> value);
Smooth smooth_const(cplx v);

/// Symmetry generator in point form: xi(x, L) d/dx + phi(x, L) d/dL.
/// Partials fall back to Richardson differences unless analytic closures are
/// installed (the affine triples install them).
struct VectorField {
    std::function<cplx(cplx, cplx)> xi;
    std::function<cplx(cplx, cplx)> phi;
    std::function<cplx(cplx, cplx)> d_xi_x, d_xi_L, d_phi_x, d_phi_L;
    std::string label;

    cplx xi_x(cplx x, cplx lam) const;
    cplx xi_L(cplx x, cplx lam) const;
    cplx phi_x(cplx x, cplx lam) const;
    cplx phi_L(cplx x, cplx lam) const;
};

/// Affine-in-Lambda generator (xi = f0(x), phi = g0(x) + g1(x) Lambda).
struct SymTriple {
    Smooth f0, g0, g1;
    VectorField field(const std::string& label = "") const;
};

/// First prolongation coefficient phi_1 = phi_x + (phi_L - xi_x) L1 - xi_L L1^2.
cplx prolong1(const VectorField& v, cplx x, cplx lam, cplx lam1);

/// Second prolongation coefficient (used by the prolongation example test).
cplx prolong2(const VectorField& v, cplx x, cplx lam, cplx lam1, cplx lam2);

/// The three determining equations for the minimal ansatz; all vanish iff
/// the triple generates a symmetry of the Riccati surface.
std::array<cplx, 3> determining_residuals(const SymTriple& t, const RiccatiSystem& sys, cplx x);

/// Scale for relative comparison of determining residuals at x.
double determining_scale(const RiccatiSystem& sys, cplx x);

/// Elimination chain: g1 and g0 expressed through f0 and its derivatives.
cplx g1_from_f0(const Smooth& f0, const RiccatiSystem& sys, cplx x);
cplx g0_from_f0(const Smooth& f0, const RiccatiSystem& sys, cplx x);
SymTriple triple_from_f0(const Smooth& f0, const RiccatiSystem& sys);

/// Third-order ODE for f0: Ups0 f0 + Ups1 f0' - (O2 Obar)^3 f0''' = 0.
struct UpsilonPair {
    cplx u0, u1;
};
UpsilonPair upsilons(const RiccatiSystem& sys, cplx x);
cplx f0_ode_residual(const Smooth& f0, const RiccatiSystem& sys, cplx x);

/// Integrate the f0 equation from the three canonical initial conditions
/// (1,0,0), (0,1,0), (0,0,1) at x0 over [x0, x0 + len] and return the three
/// symmetry fields (with their triples). The interval start is chosen by a
/// pre-scan that keeps |O2 Obar| away from zero.
struct SymmetrySolution {
    std::vector<SymTriple> triples;
    std::vector<VectorField> fields;
    double x0 = 0.0, len = 2.0;
    double wronskian_min = 0.0;
};
SymmetrySolution solve_symmetries(const RiccatiSystem& sys, double x0_hint = 0.0,
                                  double len = 2.0);

/// Pointwise Lie bracket of two generators.
VectorField commutator(const VectorField& v, const VectorField& w);

/// Structure-constant fit over a grid plus Killing-form verdict.
struct AlgebraClassification {
    // c[i][j][k]: [v_i, v_j] = sum_k c[i][j][k] v_k
    std::array<std::array<std::array<cplx, 3>, 3>, 3> constants{};
    double closure_residual = 0.0;
    int killing_rank = 0;
    std::string verdict;  // "sl2" | "not-semisimple" | "inconclusive"
};
AlgebraClassification classify_algebra(const std::vector<VectorField>& fields,
                                       const std::vector<cplx>& xs, const std::vector<cplx>& ls);

/// Closed-form sl(2) generators for the rational model, sector 1.
std::array<SymTriple, 3> generators_n1(const ModelParams& p);  // {X+, X-, H}

/// Closed-form sector-2 generators for the rational model (parameter u1, a
/// zero of the eigenvalue). xi components are the tabulated closed forms;
/// phi components are rebuilt from xi through the elimination chain. The
/// report compares the tabulated phi transcription against the rebuilt one.
struct GeneratorReportEntry {
    std::string name;
    double max_rel_dev = 0.0;
    bool matches = false;
};
struct GeneratorsN2 {
    std::array<SymTriple, 3> triples;  // {X+, X-, H}
    std::vector<GeneratorReportEntry> tabulated_phi_report;
};
GeneratorsN2 generators_n2(cplx u1, const ModelParams& p);

/// JSON symmetry report.
std::string symmetry_report(int n, const AlgebraClassification& cls);

}  // namespace sixv
