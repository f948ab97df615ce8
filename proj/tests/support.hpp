#pragma once

#include <cmath>
#include <random>

#include "fourball/dynamics.hpp"

namespace testing_support {

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline fourball::vec3<double> random_vec(std::mt19937_64& g, double lo = -1, double hi = 1) {
    return {uniform(g, lo, hi), uniform(g, lo, hi), uniform(g, lo, hi)};
}

inline double max_abs_diff(const fourball::vec3<double>& a, const fourball::vec3<double>& b) {
    double m = 0;
    for (int i = 0; i < 3; ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace testing_support
