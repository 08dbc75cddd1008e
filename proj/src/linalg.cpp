#include "sixv/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace sixv {

double Mat::frobenius() const {
    double s = 0.0;
    for (const auto& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

Mat operator*(const Mat& a, const Mat& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("Mat::*: shape mismatch");
    Mat r(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
        for (int k = 0; k < a.c_; ++k) {
            cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < b.c_; ++j) r(i, j) += aik * b(k, j);
        }
    return r;
}

Mat operator+(const Mat& a, const Mat& b) {
    Mat r = a;
    for (int i = 0; i < a.r_; ++i)
        for (int j = 0; j < a.c_; ++j) r(i, j) += b(i, j);
    return r;
}

Mat operator-(const Mat& a, const Mat& b) {
    Mat r = a;
    for (int i = 0; i < a.r_; ++i)
        for (int j = 0; j < a.c_; ++j) r(i, j) -= b(i, j);
    return r;
}

Mat operator*(const Mat& a, cplx s) {
    Mat r = a;
    for (auto& v : r.a_) v *= s;
    return r;
}

std::vector<cplx> Mat::apply(const std::vector<cplx>& v) const {
    std::vector<cplx> out(r_, cplx(0.0));
    for (int i = 0; i < r_; ++i)
        for (int j = 0; j < c_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

std::vector<cplx> lu_solve(Mat a, std::vector<cplx> b) {
    int n = a.rows();
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0.0) throw std::runtime_error("lu_solve: singular matrix");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(b[k], b[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            cplx f = a(i, k) / a(k, k);
            a(i, k) = f;
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * b[j];
        b[i] = s / a(i, i);
    }
    return b;
}

cplx determinant(Mat a) {
    int n = a.rows();
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        for (int i = k + 1; i < n; ++i)
            if (std::abs(a(i, k)) > std::abs(a(piv, k))) piv = i;
        if (std::abs(a(piv, k)) == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(a(k, j), a(piv, j));
            det = -det;
        }
        det *= a(k, k);
        for (int i = k + 1; i < n; ++i) {
            cplx f = a(i, k) / a(k, k);
            for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return det;
}

std::vector<cplx> lstsq(Mat a, std::vector<cplx> b) {
    int m = a.rows(), n = a.cols();
    if (m < n) throw std::invalid_argument("lstsq: underdetermined system");
    // Householder QR applied to [a | b].
    for (int k = 0; k < n; ++k) {
        double nx = 0.0;
        for (int i = k; i < m; ++i) nx += std::norm(a(i, k));
        nx = std::sqrt(nx);
        if (nx == 0.0) throw std::runtime_error("lstsq: rank deficient");
        cplx akk = a(k, k);
        cplx alpha = (std::abs(akk) > 0.0) ? -(akk / std::abs(akk)) * nx : cplx(-nx);
        std::vector<cplx> v(m - k);
        v[0] = akk - alpha;
        for (int i = k + 1; i < m; ++i) v[i - k] = a(i, k);
        double vn = 0.0;
        for (const auto& t : v) vn += std::norm(t);
        if (vn == 0.0) continue;
        for (int j = k; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k; i < m; ++i) s += std::conj(v[i - k]) * a(i, j);
            s *= 2.0 / vn;
            for (int i = k; i < m; ++i) a(i, j) -= s * v[i - k];
        }
        cplx s = 0.0;
        for (int i = k; i < m; ++i) s += std::conj(v[i - k]) * b[i];
        s *= 2.0 / vn;
        for (int i = k; i < m; ++i) b[i] -= s * v[i - k];
    }
    std::vector<cplx> x(n);
    for (int i = n - 1; i >= 0; --i) {
        cplx s = b[i];
        for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
        x[i] = s / a(i, i);
    }
    return x;
}

namespace {

void hessenberg_reduce(Mat& h) {
    int n = h.rows();
    for (int k = 0; k < n - 2; ++k) {
        double nx = 0.0;
        for (int i = k + 1; i < n; ++i) nx += std::norm(h(i, k));
        nx = std::sqrt(nx);
        if (nx == 0.0) continue;
        cplx h1 = h(k + 1, k);
        cplx alpha = (std::abs(h1) > 0.0) ? -(h1 / std::abs(h1)) * nx : cplx(-nx);
        std::vector<cplx> v(n - k - 1);
        v[0] = h1 - alpha;
        for (int i = k + 2; i < n; ++i) v[i - k - 1] = h(i, k);
        double vn = 0.0;
        for (const auto& t : v) vn += std::norm(t);
        if (vn == 0.0) continue;
        // H <- P H, rows k+1..n-1
        for (int j = 0; j < n; ++j) {
            cplx s = 0.0;
            for (int i = k + 1; i < n; ++i) s += std::conj(v[i - k - 1]) * h(i, j);
            s *= 2.0 / vn;
            for (int i = k + 1; i < n; ++i) h(i, j) -= s * v[i - k - 1];
        }
        // H <- H P, cols k+1..n-1
        for (int i = 0; i < n; ++i) {
            cplx s = 0.0;
            for (int j = k + 1; j < n; ++j) s += h(i, j) * v[j - k - 1];
            s *= 2.0 / vn;
            for (int j = k + 1; j < n; ++j) h(i, j) -= s * std::conj(v[j - k - 1]);
        }
    }
    for (int i = 2; i < n; ++i)
        for (int j = 0; j < i - 1; ++j) h(i, j) = 0.0;
}

cplx wilkinson_shift(const Mat& h, int m) {
    // Eigenvalue of the trailing 2x2 block closest to h(m, m).
    cplx a = h(m - 1, m - 1), b = h(m - 1, m), c = h(m, m - 1), d = h(m, m);
    cplx tr2 = (a + d) * 0.5;
    cplx disc = std::sqrt(tr2 * tr2 - (a * d - b * c));
    cplx l1 = tr2 + disc, l2 = tr2 - disc;
    return (std::abs(l1 - d) < std::abs(l2 - d)) ? l1 : l2;
}

}  // namespace

std::vector<cplx> eigenvalues(Mat a) {
    int n = a.rows();
    if (n == 0) return {};
    if (n != a.cols()) throw std::invalid_argument("eigenvalues: matrix not square");
    Mat h = a;
    hessenberg_reduce(h);

    const double eps = 1e-15;
    std::vector<cplx> vals(n);
    int m = n - 1;
    int stall = 0;
    int guard = 0;
    const int guard_max = 200 * n;
    while (m >= 0) {
        if (++guard > guard_max) throw std::runtime_error("eigenvalues: QR iteration stalled");
        if (m == 0) {
            vals[0] = h(0, 0);
            break;
        }
        // deflate
        double off = std::abs(h(m, m - 1));
        if (off <= eps * (std::abs(h(m - 1, m - 1)) + std::abs(h(m, m)))) {
            vals[m] = h(m, m);
            --m;
            stall = 0;
            continue;
        }
        // active block start
        int l = m;
        while (l > 0) {
            double o = std::abs(h(l, l - 1));
            if (o <= eps * (std::abs(h(l - 1, l - 1)) + std::abs(h(l, l)))) break;
            --l;
        }
        cplx mu = wilkinson_shift(h, m);
        if (++stall % 24 == 0) mu += cplx(std::abs(h(m, m - 1)), 0.0);  // exceptional shift

        // explicit-shift QR sweep on rows/cols l..m via Givens rotations
        std::vector<cplx> cs(m - l), sn(m - l);
        for (int i = l; i <= m; ++i) h(i, i) -= mu;
        for (int k = l; k < m; ++k) {
            cplx f = h(k, k), g = h(k + 1, k);
            double r = std::sqrt(std::norm(f) + std::norm(g));
            cplx c = (r > 0) ? f / r : cplx(1.0);
            cplx s = (r > 0) ? g / r : cplx(0.0);
            cs[k - l] = c;
            sn[k - l] = s;
            for (int j = k; j <= m; ++j) {
                cplx t1 = h(k, j), t2 = h(k + 1, j);
                h(k, j) = std::conj(c) * t1 + std::conj(s) * t2;
                h(k + 1, j) = -s * t1 + c * t2;
            }
        }
        for (int k = l; k < m; ++k) {
            cplx c = cs[k - l], s = sn[k - l];
            for (int i = l; i <= std::min(m, k + 2); ++i) {
                cplx t1 = h(i, k), t2 = h(i, k + 1);
                h(i, k) = t1 * c + t2 * s;
                h(i, k + 1) = -t1 * std::conj(s) + t2 * std::conj(c);
            }
        }
        for (int i = l; i <= m; ++i) h(i, i) += mu;
    }
    return vals;
}

EigenSystem eigensystem(const Mat& a) {
    int n = a.rows();
    EigenSystem es;
    es.values = eigenvalues(a);
    es.right.resize(n);
    es.left.resize(n);
    Mat at = a.transpose();
    std::mt19937 rng(0x5eed);
    std::uniform_real_distribution<double> uni(-1.0, 1.0);

    double scale = a.frobenius() / std::sqrt(double(n));
    auto inv_iter = [&](const Mat& mtx, cplx lambda) {
        Mat shifted = mtx;
        // small diagonal perturbation keeps the factorization well defined
        cplx lam = lambda + cplx(1e-13 * (scale + 1.0), 1e-13 * (scale + 1.0));
        for (int i = 0; i < n; ++i) shifted(i, i) -= lam;
        std::vector<cplx> v(n);
        for (auto& t : v) t = cplx(uni(rng), uni(rng));
        for (int pass = 0; pass < 3; ++pass) {
            v = lu_solve(shifted, v);
            double nv = 0.0;
            for (const auto& t : v) nv += std::norm(t);
            nv = std::sqrt(nv);
            for (auto& t : v) t /= nv;
        }
        // deterministic phase: largest component made real positive
        int imax = 0;
        for (int i = 1; i < n; ++i)
            if (std::abs(v[i]) > std::abs(v[imax])) imax = i;
        cplx ph = std::abs(v[imax]) / v[imax];
        for (auto& t : v) t *= ph;
        return v;
    };

    for (int i = 0; i < n; ++i) {
        es.right[i] = inv_iter(a, es.values[i]);
        es.left[i] = inv_iter(at, es.values[i]);
    }
    return es;
}

}  // namespace sixv
