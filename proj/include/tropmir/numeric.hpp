#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace tropmir {

// All validation-path arithmetic is exact. Floating point is allowed only in
// the SVG exporter.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline std::string to_string(const Int& v) { return v.str(); }
inline std::string to_string(const Rat& v) {
    if (denominator(v) == 1) return numerator(v).str();
    return numerator(v).str() + "/" + denominator(v).str();
}

// Integer plane vector: lattice points and momenta.
struct IVec2 {
    Int x{0}, y{0};

    friend IVec2 operator+(const IVec2& a, const IVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend IVec2 operator-(const IVec2& a, const IVec2& b) { return {a.x - b.x, a.y - b.y}; }
    IVec2 operator-() const { return {-x, -y}; }
    friend bool operator==(const IVec2& a, const IVec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const IVec2& a, const IVec2& b) { return !(a == b); }
    friend bool operator<(const IVec2& a, const IVec2& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.y < b.y;
    }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline Int cross(const IVec2& a, const IVec2& b) { return a.x * b.y - a.y * b.x; }
inline Int dot(const IVec2& a, const IVec2& b) { return a.x * b.x + a.y * b.y; }

// Clockwise quarter turn (x,y) -> (y,-x); fixed rotation convention for momenta.
inline IVec2 rotate_cw(const IVec2& v) { return {v.y, -v.x}; }

inline IVec2 primitive(const IVec2& v) {
    if (v.is_zero()) throw std::invalid_argument("primitive: zero vector");
    Int g = gcd(abs(v.x), abs(v.y));
    return {v.x / g, v.y / g};
}

inline std::string to_string(const IVec2& v) {
    return "(" + v.x.str() + "," + v.y.str() + ")";
}

// Rational plane vector: drawn positions.
struct QVec2 {
    Rat x{0}, y{0};

    friend QVec2 operator+(const QVec2& a, const QVec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend QVec2 operator-(const QVec2& a, const QVec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend bool operator==(const QVec2& a, const QVec2& b) { return a.x == b.x && a.y == b.y; }
    friend bool operator!=(const QVec2& a, const QVec2& b) { return !(a == b); }
    bool is_zero() const { return x == 0 && y == 0; }
};

inline Rat cross(const QVec2& a, const QVec2& b) { return a.x * b.y - a.y * b.x; }
inline Rat dot(const QVec2& a, const QVec2& b) { return a.x * b.x + a.y * b.y; }
inline QVec2 to_qvec(const IVec2& v) { return {Rat(v.x), Rat(v.y)}; }

inline std::string to_string(const QVec2& v) {
    return "(" + to_string(v.x) + "," + to_string(v.y) + ")";
}

// Counterclockwise angular order of nonzero vectors, starting at the positive
// x axis. Returns 0 when the vectors point the same way.
template <typename Vec>
int angle_compare(const Vec& a, const Vec& b) {
    auto half = [](const Vec& v) {
        if (v.y != 0) return v.y > 0 ? 0 : 1;
        return v.x > 0 ? 0 : 1;
    };
    int ha = half(a), hb = half(b);
    if (ha != hb) return ha < hb ? -1 : 1;
    auto c = cross(a, b);
    if (c > 0) return -1;
    if (c < 0) return 1;
    // Same half-plane and collinear means same direction.
    return 0;
}

template <typename Vec>
bool angle_less(const Vec& a, const Vec& b) {
    return angle_compare(a, b) < 0;
}

}  // namespace tropmir
