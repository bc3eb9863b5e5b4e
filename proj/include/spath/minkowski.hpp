#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

namespace spath {

// Metric signature (-+++), natural units (hbar = c = 1).
// Components ordered (t, x, y, z); index 0 is time.

struct FourVector {
    double t = 0.0, x = 0.0, y = 0.0, z = 0.0;

    constexpr FourVector() = default;
    constexpr FourVector(double t_, double x_, double y_, double z_)
        : t(t_), x(x_), y(y_), z(z_) {}

    double operator[](int mu) const { return std::array{t, x, y, z}[mu]; }
    double& operator[](int mu) {
        switch (mu) {
            case 0: return t;
            case 1: return x;
            case 2: return y;
            default: return z;
        }
    }

    friend constexpr FourVector operator+(const FourVector& a, const FourVector& b) {
        return {a.t + b.t, a.x + b.x, a.y + b.y, a.z + b.z};
    }
    friend constexpr FourVector operator-(const FourVector& a, const FourVector& b) {
        return {a.t - b.t, a.x - b.x, a.y - b.y, a.z - b.z};
    }
    friend constexpr FourVector operator-(const FourVector& a) {
        return {-a.t, -a.x, -a.y, -a.z};
    }
    friend constexpr FourVector operator*(double s, const FourVector& a) {
        return {s * a.t, s * a.x, s * a.y, s * a.z};
    }
};

struct ThreeMomentum {
    double px = 0.0, py = 0.0, pz = 0.0;

    double norm2() const { return px * px + py * py + pz * pz; }
    double norm() const { return std::sqrt(norm2()); }
};

/// Wick-rotated vector; norm is positive definite.
struct EuclideanFourVector {
    double c0 = 0.0, c1 = 0.0, c2 = 0.0, c3 = 0.0;

    double norm2() const { return c0 * c0 + c1 * c1 + c2 * c2 + c3 * c3; }
};

inline double minkowski_dot(const FourVector& a, const FourVector& b) {
    return -a.t * b.t + a.x * b.x + a.y * b.y + a.z * b.z;
}

/// t -> i t: spatial components preserved exactly, Euclidean norm^2 = x.x + 2 t^2.
inline EuclideanFourVector wick_rotate(const FourVector& v) {
    return {v.t, v.x, v.y, v.z};
}

inline double on_shell_energy(const ThreeMomentum& p, double m) {
    if (m < 0.0) throw std::invalid_argument("on_shell_energy: negative mass");
    return std::sqrt(p.norm2() + m * m);
}

}  // namespace spath
