#pragma once

#include <array>
#include <cmath>

namespace fourball {

template <class T>
using vec3 = std::array<T, 3>;

template <class T>
using mat3 = std::array<std::array<T, 3>, 3>;

template <class T>
T dot(const vec3<T>& a, const vec3<T>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

template <class T>
vec3<T> cross(const vec3<T>& a, const vec3<T>& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

template <class T>
T norm(const vec3<T>& a) {
    using std::sqrt;
    return sqrt(dot(a, a));
}

template <class T>
vec3<T> operator+(const vec3<T>& a, const vec3<T>& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

template <class T>
vec3<T> operator-(const vec3<T>& a, const vec3<T>& b) {
    return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

template <class T>
vec3<T> operator*(const T& s, const vec3<T>& a) {
    return {s * a[0], s * a[1], s * a[2]};
}

template <class T>
vec3<T> normalized(const vec3<T>& a) {
    T n = norm(a);
    return {a[0] / n, a[1] / n, a[2] / n};
}

template <class T>
vec3<T> mul(const mat3<T>& m, const vec3<T>& v) {
    vec3<T> out;
    for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
    return out;
}

template <class T>
mat3<T> mul(const mat3<T>& a, const mat3<T>& b) {
    mat3<T> out{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            T s = 0;
            for (int k = 0; k < 3; ++k) s += a[i][k] * b[k][j];
            out[i][j] = s;
        }
    return out;
}

template <class T>
mat3<T> identity3() {
    mat3<T> m{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m[i][j] = (i == j) ? T(1) : T(0);
    return m;
}

template <class T>
T det(const mat3<T>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

}  // namespace fourball
