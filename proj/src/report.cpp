#include "sixv/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace sixv {

double round_sig(double v, int digits) {
    if (v == 0.0 || !std::isfinite(v)) return v;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*e", digits - 1, v);
    return std::strtod(buf, nullptr);
}

std::string fmt_sig(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, v);
    return buf;
}

std::string fmt_complex(std::complex<double> z, int digits) {
    std::string re = fmt_sig(z.real(), digits);
    double im = z.imag();
    std::string sign = std::signbit(im) ? "-" : "+";
    return re + sign + fmt_sig(std::abs(im), digits) + "i";
}

}  // namespace sixv
