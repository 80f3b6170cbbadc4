#pragma once

// Extended-precision log Gamma shared by the special-function sources.

#include <complex>

namespace relwave::specfun::detail {

using XComplex = std::complex<long double>;

XComplex lgamma_ext(XComplex z);
XComplex log_sin_ext(XComplex w);

}  // namespace relwave::specfun::detail
