#pragma once

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>

#include "spath/minkowski.hpp"
#include "spath/numerics.hpp"

namespace spath {

using Matrix2c = Eigen::Matrix2cd;
using LorentzMatrix = Eigen::Matrix4d;
using AlgebraTangent = Eigen::Matrix4d;  // so(3,1) tangent, antisymmetric after raising

/// SU(2) group element, stored as a unit quaternion (w, v) <-> w I - i v.sigma.
/// Renormalized after products to keep |q| = 1 against rounding drift.
class SU2Element {
  public:
    SU2Element() : w_(1.0), v_{0.0, 0.0, 0.0} {}
    SU2Element(double w, const std::array<double, 3>& v) : w_(w), v_(v) { normalize(); }

    static SU2Element identity() { return {}; }

    double w() const { return w_; }
    const std::array<double, 3>& v() const { return v_; }

    Matrix2c matrix() const;
    SU2Element inverse() const { return raw(w_, {-v_[0], -v_[1], -v_[2]}); }

    friend SU2Element operator*(const SU2Element& a, const SU2Element& b);
    friend SU2Element operator-(const SU2Element& a) {
        return SU2Element::raw(-a.w_, {-a.v_[0], -a.v_[1], -a.v_[2]});
    }

    /// Max-norm distance between the 2x2 matrix representations.
    double distance(const SU2Element& other) const;

  private:
    static SU2Element raw(double w, const std::array<double, 3>& v) {
        SU2Element u;
        u.w_ = w;
        u.v_ = v;
        return u;
    }
    void normalize();
    double w_;
    std::array<double, 3> v_;
};

/// Angle vector for su(2); class angle |theta| canonically in [0, 2pi).
struct SU2AngleVector {
    std::array<double, 3> theta{0.0, 0.0, 0.0};

    double angle() const {
        return std::sqrt(theta[0] * theta[0] + theta[1] * theta[1] + theta[2] * theta[2]);
    }
};

/// SO(4) element through its SU(2) x SU(2) cover; the 4x4 orthogonal image is
/// never materialized.
struct SO4Element {
    SU2Element left;
    SU2Element right;

    SO4Element inverse() const { return {left.inverse(), right.inverse()}; }
    friend SO4Element operator*(const SO4Element& a, const SO4Element& b) {
        return {a.left * b.left, a.right * b.right};
    }
};

SU2Element su2_exp(const SU2AngleVector& theta);

/// Principal branch, class angle in [0, 2pi]; axis at the antipode U = -I is
/// degenerate and fixed to (1, 0, 0) by convention.
SU2AngleVector su2_log(const SU2Element& u);

/// theta in [0, 2pi] with tr U = 2 cos(theta/2). The antipode returns 2pi.
double su2_class_angle(const SU2Element& u);

/// Haar integral of a class function, total measure 1:
///   int dB f = (1/pi) int_0^2pi dtheta sin^2(theta/2) f(theta)
/// using an N-node Gauss-Legendre rule.
double haar_class_quadrature(const std::function<double(double)>& f, int n_nodes);
cplx haar_class_quadrature_c(const std::function<cplx(double)>& f, int n_nodes);

/// Convolution of two class functions at class angle theta:
///   (f * g)(theta) = int dB0 f(angle(B B0^-1)) g(angle(B0)),
/// reduced to a 2D quadrature over (theta0, axis angle) via
/// cos(Theta/2) = cos(t/2)cos(t0/2) + sin(t/2)sin(t0/2)cos(gamma).
cplx haar_class_convolution(const std::function<cplx(double)>& f,
                            const std::function<cplx(double)>& g, double theta,
                            int n_nodes);

/// Deterministic PRNG stream; uniform doubles are derived bit-exactly from the
/// mt19937_64 output so sampled values do not depend on library internals.
class HaarSampler {
  public:
    explicit HaarSampler(std::uint64_t seed) : rng_(seed) {}

    /// Uniform w.r.t. Haar measure (uniform on the quaternion 3-sphere).
    SU2Element sample();

    double uniform();  // [0, 1)
    double gaussian();

  private:
    std::mt19937_64 rng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// ---- Lorentz group ----

inline LorentzMatrix minkowski_metric() {
    LorentzMatrix eta = LorentzMatrix::Identity();
    eta(0, 0) = -1.0;
    return eta;
}

/// Max-norm of M^T eta M - eta; zero iff M is a Lorentz matrix.
double check_pseudo_orthogonality(const LorentzMatrix& m);

/// Pure boost with velocity v (|v| < 1) along a unit axis.
LorentzMatrix boost_matrix(double velocity, const std::array<double, 3>& axis);

/// 4x4 rotation fixing the time axis; the SO(3) image of U (double cover:
/// U and -U give the same matrix).
LorentzMatrix rotation_matrix_from_su2(const SU2Element& u);

inline FourVector apply(const LorentzMatrix& m, const FourVector& v) {
    FourVector out;
    for (int i = 0; i < 4; ++i) {
        double s = 0.0;
        for (int j = 0; j < 4; ++j) s += m(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

/// Proper orthochronous Lorentz transformation carried together with its
/// SL(2,C) cover element, so that half-integer representations compose exactly.
struct LorentzTransform {
    LorentzMatrix matrix = LorentzMatrix::Identity();
    Matrix2c sl2 = Matrix2c::Identity();

    static LorentzTransform identity() { return {}; }
    static LorentzTransform from_rotation(const SU2Element& u);
    /// Pure boost carrying e = (1,0,0,0) to the future unit timelike n.
    static LorentzTransform from_boost_to(const FourVector& n);

    LorentzTransform inverse() const;
    friend LorentzTransform operator*(const LorentzTransform& a, const LorentzTransform& b) {
        return {a.matrix * b.matrix, a.sl2 * b.sl2};
    }
};

/// Numerically differenced path tangent Mdot M^-1 at lambda, central difference.
AlgebraTangent path_tangent(const std::function<LorentzMatrix(double)>& path, double lambda,
                            double step);

/// Antisymmetry residual of a tangent after raising an index with eta:
/// max-norm of Omega eta + (Omega eta)^T ... (Omega^{mu nu} = Omega^mu_rho eta^{rho nu}).
double tangent_antisymmetry_residual(const AlgebraTangent& omega);

}  // namespace spath
