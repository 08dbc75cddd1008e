#pragma once

#include <complex>
#include <vector>

namespace sixv {

using cplx = std::complex<double>;

/// Dense polynomial in one complex variable, coefficients in ascending order.
/// The zero polynomial is represented by an empty coefficient vector.
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
    static Poly constant(cplx a) { return Poly({a}); }
    static Poly x() { return Poly({cplx(0.0), cplx(1.0)}); }

    const std::vector<cplx>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }

    cplx operator()(cplx z) const {
        cplx acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<cplx> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = double(k) * c_[k];
        return Poly(std::move(d));
    }

    Poly derivative(int order) const {
        Poly p = *this;
        for (int k = 0; k < order; ++k) p = p.derivative();
        return p;
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<cplx> r(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
        for (size_t k = 0; k < a.c_.size(); ++k) r[k] += a.c_[k];
        for (size_t k = 0; k < b.c_.size(); ++k) r[k] += b.c_[k];
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) { return a + (b * cplx(-1.0)); }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<cplx> r(a.c_.size() + b.c_.size() - 1, cplx(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, cplx s) {
        std::vector<cplx> r = a.c_;
        for (auto& v : r) v *= s;
        return Poly(std::move(r));
    }
    friend Poly operator*(cplx s, const Poly& a) { return a * s; }

private:
    void trim() {
        while (!c_.empty() && std::abs(c_.back()) == 0.0) c_.pop_back();
    }
    std::vector<cplx> c_;
};

}  // namespace sixv
