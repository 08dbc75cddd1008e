#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

namespace sixv {

using cplx = std::complex<double>;

/// Dense row-major complex matrix.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : r_(rows), c_(cols), a_(size_t(rows) * cols, cplx(0.0)) {}

    static Mat identity(int n) {
        Mat m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }
    cplx& operator()(int i, int j) { return a_[size_t(i) * c_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[size_t(i) * c_ + j]; }

    Mat transpose() const {
        Mat t(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    double frobenius() const;

    friend Mat operator*(const Mat& a, const Mat& b);
    friend Mat operator+(const Mat& a, const Mat& b);
    friend Mat operator-(const Mat& a, const Mat& b);
    friend Mat operator*(const Mat& a, cplx s);

    std::vector<cplx> apply(const std::vector<cplx>& v) const;

private:
    int r_ = 0, c_ = 0;
    std::vector<cplx> a_;
};

/// Solve A x = b by LU with partial pivoting (A square).
std::vector<cplx> lu_solve(Mat a, std::vector<cplx> b);

/// Determinant by LU with partial pivoting.
cplx determinant(Mat a);

/// Least squares min |A x - b| via Householder QR (rows >= cols).
std::vector<cplx> lstsq(Mat a, std::vector<cplx> b);

struct EigenSystem {
    std::vector<cplx> values;
    std::vector<std::vector<cplx>> right;  // right[i]: A v = values[i] v
    std::vector<std::vector<cplx>> left;   // left[i]:  l A = values[i] l
};

/// All eigenvalues of a dense complex matrix (Hessenberg reduction followed
/// by shifted QR iteration with deflation).
std::vector<cplx> eigenvalues(Mat a);

/// Eigenvalues plus right/left eigenvectors (inverse iteration).
EigenSystem eigensystem(const Mat& a);

}  // namespace sixv
