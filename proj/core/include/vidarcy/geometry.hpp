#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace vidarcy {

// Small fixed-size vector/tensor helpers shared by mesh, spaces and physics.
// Meshes are 2D or 3D at runtime; 2D data lives in the xy plane with z = 0.

inline constexpr double kPi = 3.14159265358979323846;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }
    double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3& operator+=(const Vec3& o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

// Dense 3x3 tensor; 2D fields use the upper-left 2x2 block.
struct Mat3 {
    std::array<std::array<double, 3>, 3> m{};

    double& operator()(int i, int j) { return m[i][j]; }
    double operator()(int i, int j) const { return m[i][j]; }

    static Mat3 identity() {
        Mat3 r;
        r(0, 0) = r(1, 1) = r(2, 2) = 1.0;
        return r;
    }

    static Mat3 diagonal(double a, double b, double c) {
        Mat3 r;
        r(0, 0) = a;
        r(1, 1) = b;
        r(2, 2) = c;
        return r;
    }

    Vec3 apply(const Vec3& v) const {
        return {m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
                m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
                m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z};
    }

    Mat3 scaled(double s) const {
        Mat3 r = *this;
        for (auto& row : r.m)
            for (auto& v : row) v *= s;
        return r;
    }
};

// Inverse restricted to the leading dim x dim block; the unused block of the
// result is identity so 2D drag tensors stay harmless when applied to z = 0.
inline Mat3 invert_spd_block(const Mat3& k, int dim) {
    Mat3 inv = Mat3::identity();
    if (dim == 2) {
        const double a = k(0, 0), b = k(0, 1), c = k(1, 0), d = k(1, 1);
        const double det = a * d - b * c;
        if (!(std::isfinite(det)) || det <= 0.0)
            throw std::runtime_error("permeability tensor is not positive definite (2x2 det <= 0)");
        inv(0, 0) = d / det;
        inv(0, 1) = -b / det;
        inv(1, 0) = -c / det;
        inv(1, 1) = a / det;
        return inv;
    }
    const auto& m = k.m;
    const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                       m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                       m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if (!std::isfinite(det) || det <= 0.0)
        throw std::runtime_error("permeability tensor is not positive definite (3x3 det <= 0)");
    inv(0, 0) = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
    inv(0, 1) = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
    inv(0, 2) = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
    inv(1, 0) = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
    inv(1, 1) = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
    inv(1, 2) = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
    inv(2, 0) = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
    inv(2, 1) = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
    inv(2, 2) = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
    return inv;
}

// Eigen-decomposition of the leading 2x2 symmetric block (analytic).
inline void symmetric_eigen_2x2(const Mat3& k, std::array<double, 2>& eigenvalues,
                                std::array<Vec3, 2>& eigenvectors) {
    const double a = k(0, 0), b = 0.5 * (k(0, 1) + k(1, 0)), d = k(1, 1);
    const double tr = a + d;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + b * b));
    eigenvalues[0] = 0.5 * tr - disc;
    eigenvalues[1] = 0.5 * tr + disc;
    if (std::abs(b) > 1e-300) {
        eigenvectors[0] = {eigenvalues[0] - d, b, 0.0};
        eigenvectors[1] = {eigenvalues[1] - d, b, 0.0};
    } else if (a <= d) {
        eigenvectors[0] = {1.0, 0.0, 0.0};
        eigenvectors[1] = {0.0, 1.0, 0.0};
    } else {
        eigenvectors[0] = {0.0, 1.0, 0.0};
        eigenvectors[1] = {1.0, 0.0, 0.0};
    }
    for (auto& v : eigenvectors) {
        const double n = norm(v);
        if (n > 0.0) v = v * (1.0 / n);
    }
}

}  // namespace vidarcy
