#pragma once

#include <cmath>
#include <complex>
#include <vector>

namespace uavris {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Row-major dense complex matrix, just large enough for channel matrices and
// stacked beamforming vectors.
struct CMat {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    CMat() = default;
    CMat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    bool operator==(const CMat&) const = default;
};

inline double squared_norm(const CMat& m) {
    double s = 0.0;
    for (const cplx& v : m.a) s += std::norm(v);
    return s;
}

inline double squared_norm(const cvec& v) {
    double s = 0.0;
    for (const cplx& x : v) s += std::norm(x);
    return s;
}

// row . column k of w
inline cplx row_dot_col(const cvec& row, const CMat& w, int k) {
    cplx s{0.0, 0.0};
    for (int i = 0; i < w.rows; ++i) s += row[static_cast<std::size_t>(i)] * w(i, k);
    return s;
}

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    bool operator==(const Vec3&) const = default;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }

inline double norm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y + v.z * v.z); }

// horizontal (x, y) distance
inline double hnorm(const Vec3& v) { return std::sqrt(v.x * v.x + v.y * v.y); }

} // namespace uavris
