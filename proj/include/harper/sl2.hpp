#pragma once

#include <cmath>
#include <stdexcept>

namespace harper {

struct Vec2 {
    double x = 0, y = 0;

    double norm() const { return std::hypot(x, y); }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    /// z-component of the cross product; positive when `o` lies counterclockwise of *this.
    double cross(const Vec2& o) const { return x * o.y - y * o.x; }
    Vec2 normalized() const {
        double n = norm();
        return {x / n, y / n};
    }
};

/// 2x2 real matrix with unit determinant. The checked constructor enforces
/// |det - 1| <= 1e-10; long products drift and can be fixed with renormalized().
struct SL2Matrix {
    double m11 = 1, m12 = 0, m21 = 0, m22 = 1;

    SL2Matrix() = default;

    SL2Matrix(double a11, double a12, double a21, double a22)
        : m11(a11), m12(a12), m21(a21), m22(a22)
    {
        if (std::fabs(det() - 1.0) > 1e-10)
            throw std::invalid_argument("SL2Matrix: determinant differs from 1 by more than 1e-10");
    }

    /// Bypasses the determinant check (internal products, test scaffolding).
    static SL2Matrix unchecked(double a11, double a12, double a21, double a22) {
        SL2Matrix m;
        m.m11 = a11; m.m12 = a12; m.m21 = a21; m.m22 = a22;
        return m;
    }

    static SL2Matrix identity() { return SL2Matrix(); }

    /// Rotation by `theta`, the generator R_1 of the homotopy group when theta winds once.
    static SL2Matrix rotation(double theta) {
        double c = std::cos(theta), s = std::sin(theta);
        return unchecked(c, -s, s, c);
    }

    double det() const { return m11 * m22 - m12 * m21; }
    double trace() const { return m11 + m22; }

    /// Inverse by adjugate; exact only when det = 1.
    SL2Matrix inverse() const { return unchecked(m22, -m12, -m21, m11); }

    /// Rescales so the determinant is exactly 1 again (det must be positive).
    SL2Matrix renormalized() const {
        double d = det();
        if (!(d > 0))
            throw std::domain_error("SL2Matrix::renormalized: nonpositive determinant");
        double s = 1.0 / std::sqrt(d);
        return unchecked(m11 * s, m12 * s, m21 * s, m22 * s);
    }

    double frobenius_norm() const {
        return std::sqrt(m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22);
    }

    /// Spectral norm; closed form via the singular values of a 2x2 matrix.
    double op_norm() const {
        double f2 = m11 * m11 + m12 * m12 + m21 * m21 + m22 * m22;
        double d = det();
        double disc = f2 * f2 - 4.0 * d * d;
        if (disc < 0) disc = 0;
        return std::sqrt(0.5 * (f2 + std::sqrt(disc)));
    }

    double max_abs() const {
        return std::max(std::max(std::fabs(m11), std::fabs(m12)),
                        std::max(std::fabs(m21), std::fabs(m22)));
    }

    Vec2 apply(const Vec2& v) const { return {m11 * v.x + m12 * v.y, m21 * v.x + m22 * v.y}; }

    friend SL2Matrix operator*(const SL2Matrix& a, const SL2Matrix& b) {
        return unchecked(a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                         a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22);
    }
};

}  // namespace harper
