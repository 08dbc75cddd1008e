#include "sixv/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "sixv/report.hpp"

namespace sixv {

long binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

namespace {

int popcount_bits(unsigned m) { return __builtin_popcount(m); }

}  // namespace

Mat transfer_matrix(const ModelParams& p, cplx x) {
    p.validate();
    int L = p.L;
    int dim = 1 << L;
    // Monodromy as a 2x2 aux-space matrix of chain operators,
    // M = L_L(x - mu_L) ... L_1(x - mu_1).
    Mat m00 = Mat::identity(dim), m01(dim, dim), m10(dim, dim), m11 = Mat::identity(dim);
    for (int j = 0; j < L; ++j) {
        cplx aw = weight(WeightKind::a, x - p.mu[j], p);
        cplx bw = weight(WeightKind::b, x - p.mu[j], p);
        cplx cw = weight(WeightKind::c, x, p);  // c is constant in both families
        // site operators: A=diag(a,b), D=diag(b,a), B=c sigma^-, C=c sigma^+
        auto site_apply = [&](const Mat& src, Mat& dst, int kind) {
            // kind 0:A 1:B 2:C 3:D acting on site j, composed after src
            for (int col = 0; col < dim; ++col)
                for (int row = 0; row < dim; ++row) {
                    cplx v = src(row, col);
                    if (v == cplx(0.0)) continue;
                    bool down = (row >> j) & 1;
                    switch (kind) {
                        case 0: dst(row, col) += (down ? bw : aw) * v; break;
                        case 3: dst(row, col) += (down ? aw : bw) * v; break;
                        case 1:  // sigma^-: up -> down
                            if (!down) dst(row | (1u << j), col) += cw * v;
                            break;
                        case 2:  // sigma^+: down -> up
                            if (down) dst(row & ~(1u << j), col) += cw * v;
                            break;
                    }
                }
        };
        Mat n00(dim, dim), n01(dim, dim), n10(dim, dim), n11(dim, dim);
        site_apply(m00, n00, 0); site_apply(m10, n00, 1);
        site_apply(m01, n01, 0); site_apply(m11, n01, 1);
        site_apply(m00, n10, 2); site_apply(m10, n10, 3);
        site_apply(m01, n11, 2); site_apply(m11, n11, 3);
        m00 = std::move(n00); m01 = std::move(n01);
        m10 = std::move(n10); m11 = std::move(n11);
    }
    return m00 * p.phi1 + m11 * p.phi2;
}

std::vector<unsigned> sector_basis(int L, int n) {
    std::vector<unsigned> basis;
    for (unsigned m = 0; m < (1u << L); ++m)
        if (popcount_bits(m) == n) basis.push_back(m);
    return basis;
}

Mat sector_matrix(const ModelParams& p, int n, cplx x) {
    if (n < 0 || n > p.L) throw std::invalid_argument("sector_matrix: need 0 <= n <= L");
    Mat t = transfer_matrix(p, x);
    auto basis = sector_basis(p.L, n);
    int d = static_cast<int>(basis.size());
    Mat s(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s(i, j) = t(basis[i], basis[j]);
    return s;
}

std::vector<SpectralCurve> diagonalize_sector(const ModelParams& p, int n) {
    p.validate();
    if (n < 0 || n > p.L) throw std::invalid_argument("diagonalize_sector: need 0 <= n <= L");
    long dim = binomial(p.L, n);
    if (dim > 64) throw std::invalid_argument("diagonalize_sector: sector dimension above 64");

    const cplx xstar(0.2345, 0.11);
    Mat t0 = sector_matrix(p, n, xstar);
    EigenSystem es = eigensystem(t0);

    // pairing sanity: eigenvector degeneracy shows up as |l . r| collapse
    for (int i = 0; i < static_cast<int>(dim); ++i) {
        cplx dot = 0.0;
        for (int k = 0; k < static_cast<int>(dim); ++k) dot += es.left[i][k] * es.right[i][k];
        if (std::abs(dot) < 1e-8)
            throw std::runtime_error("diagonalize_sector: degenerate eigenvector pairing at x* "
                                     "(|l.r| below 1e-8)");
    }

    CurveBasis basis =
        p.family == Family::rational ? CurveBasis::monomial : CurveBasis::exponential;
    auto xs = Curve::fit_grid(basis, 2 * p.L + 7);
    std::vector<Mat> txs;
    txs.reserve(xs.size());
    for (const auto& x : xs) txs.push_back(sector_matrix(p, n, x));

    std::vector<SpectralCurve> out;
    for (int i = 0; i < static_cast<int>(dim); ++i) {
        cplx dot = 0.0;
        for (int k = 0; k < static_cast<int>(dim); ++k) dot += es.left[i][k] * es.right[i][k];
        std::vector<cplx> vals(xs.size());
        for (size_t m = 0; m < xs.size(); ++m) {
            auto tv = txs[m].apply(es.right[i]);
            cplx num = 0.0;
            for (int k = 0; k < static_cast<int>(dim); ++k) num += es.left[i][k] * tv[k];
            vals[m] = num / dot;
        }
        auto [curve, resid] = Curve::fit(basis, p.L, xs, vals);
        if (resid > 1e-9)
            throw std::runtime_error("diagonalize_sector: curve fit residual " +
                                     std::to_string(resid));
        SpectralCurve sc;
        sc.sector = n;
        sc.curve = curve;
        sc.lambda0 = curve.eval(0.0);
        out.push_back(std::move(sc));
    }

    std::sort(out.begin(), out.end(), [](const SpectralCurve& a, const SpectralCurve& b) {
        const auto& ca = a.curve.coeffs();
        const auto& cb = b.curve.coeffs();
        for (size_t k = 0; k < ca.size(); ++k) {
            if (ca[k].real() != cb[k].real()) return ca[k].real() < cb[k].real();
            if (ca[k].imag() != cb[k].imag()) return ca[k].imag() < cb[k].imag();
        }
        return false;
    });
    for (auto& sc : out) sc.zeroes = curve_zeroes(sc);
    return out;
}

std::vector<cplx> curve_zeroes(const SpectralCurve& sc) {
    auto zs = sc.curve.zeroes();
    double scale = sc.curve.coeff_scale();
    for (const auto& u : zs) {
        double growth = 1.0;
        if (sc.curve.basis() == CurveBasis::monomial)
            growth = std::max(1.0, std::pow(std::abs(u), sc.curve.degree()));
        else
            growth = std::exp(sc.curve.degree() * std::abs(u.real()));
        if (std::abs(sc.curve.eval(u)) > 1e-8 * scale * growth)
            throw std::runtime_error("curve_zeroes: root residual too large");
    }
    return zs;
}

std::string spectrum_report(const ModelParams& p, int n,
                            const std::vector<SpectralCurve>& curves) {
    nlohmann::json j;
    j["params"] = nlohmann::json::parse(p.to_json());
    j["sector"] = n;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& sc : curves) {
        nlohmann::json c;
        nlohmann::json coeffs = nlohmann::json::array();
        for (const auto& v : sc.curve.coeffs())
            coeffs.push_back({round_sig(v.real()), round_sig(v.imag())});
        c["coeffs"] = coeffs;
        c["lambda0"] = {round_sig(sc.lambda0.real()), round_sig(sc.lambda0.imag())};
        nlohmann::json zs = nlohmann::json::array();
        for (const auto& z : sc.zeroes) zs.push_back({round_sig(z.real()), round_sig(z.imag())});
        c["zeroes"] = zs;
        arr.push_back(c);
    }
    j["curves"] = arr;
    return j.dump(2);
}

}  // namespace sixv
