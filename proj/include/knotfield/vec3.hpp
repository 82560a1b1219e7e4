#pragma once

#include <cmath>
#include <complex>

namespace knotfield {

using Complex = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    Vec3 operator*(double c) const { return {c * x, c * y, c * z}; }
    Vec3 operator/(double c) const { return {x / c, y / c, z / c}; }
    Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
    Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }
    Vec3& operator*=(double c) { x *= c; y *= c; z *= c; return *this; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return dot(*this); }
    double norm() const { return std::sqrt(norm2()); }
    Vec3 normalized() const { return *this / norm(); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y) && std::isfinite(z); }
};

inline Vec3 operator*(double c, const Vec3& v) { return v * c; }

struct Vec3C {
    Complex x{}, y{}, z{};

    Vec3C() = default;
    Vec3C(Complex px, Complex py, Complex pz) : x(px), y(py), z(pz) {}
    Vec3C(const Vec3& re) : x(re.x), y(re.y), z(re.z) {}
    Vec3C(const Vec3& re, const Vec3& im)
        : x(re.x, im.x), y(re.y, im.y), z(re.z, im.z) {}

    Vec3C operator+(const Vec3C& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3C operator-(const Vec3C& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3C operator*(Complex c) const { return {c * x, c * y, c * z}; }
    Vec3C& operator+=(const Vec3C& o) { x += o.x; y += o.y; z += o.z; return *this; }

    Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
    Vec3C conj() const { return {std::conj(x), std::conj(y), std::conj(z)}; }
    // unconjugated product a.b
    Complex dot(const Vec3C& o) const { return x * o.x + y * o.y + z * o.z; }
    // conj(this).other
    Complex cdot(const Vec3C& o) const {
        return std::conj(x) * o.x + std::conj(y) * o.y + std::conj(z) * o.z;
    }
    Vec3C cross(const Vec3C& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm2() const { return std::norm(x) + std::norm(y) + std::norm(z); }
    double norm() const { return std::sqrt(norm2()); }
};

inline Vec3C operator*(Complex c, const Vec3C& v) { return v * c; }
inline Vec3C operator*(double c, const Vec3C& v) { return v * Complex(c, 0.0); }

} // namespace knotfield
