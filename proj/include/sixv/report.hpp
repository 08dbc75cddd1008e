#pragma once

#include <complex>
#include <string>

namespace sixv {

/// Round to 12 significant decimal digits (stable report serialization).
double round_sig(double v, int digits = 12);

/// Format with up to 12 significant digits, lowercase exponent.
std::string fmt_sig(double v, int digits = 12);

/// "re+imi" form used by DOT edge labels.
std::string fmt_complex(std::complex<double> z, int digits = 12);

}  // namespace sixv
