#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sixv/curve.hpp"
#include "sixv/model.hpp"
#include "sixv/oracle.hpp"

namespace sixv {

/// Image of the one-parameter spectral map
///   K1(L)(x) = [L(x + i a) - l+(x + i a)] l-(x) / l-(x + i a) + l+(x).
/// The image is rational in general; it is a polynomial exactly when the
/// residues at the roots of l-(x + i a) vanish.
struct K1Image {
    std::function<cplx(cplx)> eval;
    std::vector<cplx> residues;        // one per root of l-(x + i a)
    bool polynomial = false;
    std::optional<Curve> fitted;       // present iff polynomial
};

K1Image k1_apply(const SpectralCurve& sc, cplx alpha, const ModelParams& p);

/// Fitted polynomial image; throws listing the nonzero residues otherwise.
Curve k1_as_curve(const SpectralCurve& sc, cplx alpha, const ModelParams& p);

/// Admissible map parameters alpha = i (w_l - w_m) over root pairs of l-,
/// subject to L(w_l) = l+(w_l) and L(w_m) != l+(w_m).
struct AlphaCandidate {
    cplx alpha;
    cplx w_equal;    // root where the curve meets l+
    cplx w_other;
};
std::vector<AlphaCandidate> admissible_alphas(const SpectralCurve& sc, const ModelParams& p);

struct CycleEdge {
    int src = 0, dst = 0;
    cplx alpha;
};

struct CycleGraph {
    std::vector<SpectralCurve> nodes;   // canonical sector-1 order
    std::vector<CycleEdge> edges;       // verified edges only
    std::vector<std::string> dropped;   // diagnostics for rejected candidates
    int loop_node = -1;                 // node equal to lambda_+ (self-loop)
};

/// Build the sector-1 cycle graph: candidate edges from the selection rules,
/// each verified by applying the map and matching the target curve
/// coefficientwise. Failed candidates are recorded, never kept.
CycleGraph build_cycle_graph(const ModelParams& p);

/// DOT output: digraph cycles { "L<i>" -> "L<j>" [label="alpha=<re>+<im>i"]; ... }
std::string cycle_graph_dot(const CycleGraph& g);
std::string cycle_graph_json(const CycleGraph& g);

}  // namespace sixv
