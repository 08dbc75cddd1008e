#pragma once

#include <stdexcept>
#include <vector>

#include "sixv/poly.hpp"

namespace sixv {

struct RootResult {
    std::vector<cplx> roots;
    double max_residual = 0.0;  // max |p(z)| / scale over returned roots
    int iterations = 0;
};

/// Simultaneous (Aberth-Ehrlich) iteration for all roots of a polynomial.
/// Throws std::runtime_error on non-convergence, carrying the residual.
RootResult find_roots(const Poly& p, double tol = 1e-13, int max_iter = 200);

}  // namespace sixv
