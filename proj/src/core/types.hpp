#pragma once

#include <array>
#include <complex>

namespace skybus {

using cdouble = std::complex<double>;
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<cdouble, 3>;

}  // namespace skybus
