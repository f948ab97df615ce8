#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>

namespace fourball {

using real = double;
using extended_real = boost::multiprecision::cpp_bin_float_quad;

template <class T>
inline T pi_v() {
    return boost::math::constants::pi<T>();
}

template <class T>
inline double to_double(const T& x) {
    return static_cast<double>(x);
}

template <class T>
inline bool is_finite(const T& x) {
    using std::isfinite;
    using boost::multiprecision::isfinite;
    return isfinite(x);
}

}  // namespace fourball
