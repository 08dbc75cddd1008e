#pragma once

#include <complex>
#include <string>
#include <vector>

namespace sixv {

using cplx = std::complex<double>;

enum class Family { rational, trigonometric };
enum class WeightKind { a, b, c };
enum class HwKind { A, D };
enum class Sign { plus, minus };

/// Vertex-weight family, anisotropy, boundary twists, inhomogeneities and
/// lattice length. Immutable after construction; validate() enforces the
/// invariants (L >= 1, nonzero twists, sinh(gamma) != 0 for the
/// trigonometric family).
struct ModelParams {
    Family family = Family::rational;
    cplx gamma{0.0, 0.0};
    cplx phi1{1.0, 0.0};
    cplx phi2{1.0, 0.0};
    std::vector<cplx> mu;
    int L = 1;

    void validate() const;

    std::string to_json() const;
    static ModelParams from_json(const std::string& text);
};

cplx weight(WeightKind kind, cplx x, const ModelParams& p);

/// lambda_A(x) = prod_j a(x - mu_j), lambda_D(x) = prod_j b(x - mu_j).
cplx highest_weight(HwKind kind, cplx x, const ModelParams& p);
cplx highest_weight_d(HwKind kind, cplx x, const ModelParams& p);  // d/dx

/// lambda_+ = phi1 lambda_A + phi2 lambda_D,
/// lambda_- = phi2 lambda_D - phi1 lambda_A.
cplx lambda_pm(Sign sign, cplx x, const ModelParams& p);
cplx lambda_pm_d(Sign sign, cplx x, const ModelParams& p);

}  // namespace sixv
