#include "spath/groups.hpp"

namespace spath {

namespace {
constexpr cplx kI{0.0, 1.0};
}

void SU2Element::normalize() {
    const double n = std::sqrt(w_ * w_ + v_[0] * v_[0] + v_[1] * v_[1] + v_[2] * v_[2]);
    w_ /= n;
    for (auto& c : v_) c /= n;
}

Matrix2c SU2Element::matrix() const {
    // w I - i v.sigma
    Matrix2c m;
    m(0, 0) = cplx(w_, -v_[2]);
    m(0, 1) = cplx(-v_[1], -v_[0]);
    m(1, 0) = cplx(v_[1], -v_[0]);
    m(1, 1) = cplx(w_, v_[2]);
    return m;
}

SU2Element operator*(const SU2Element& a, const SU2Element& b) {
    const auto& p = a.v_;
    const auto& q = b.v_;
    const double w = a.w_ * b.w_ - (p[0] * q[0] + p[1] * q[1] + p[2] * q[2]);
    const std::array<double, 3> v{
        a.w_ * q[0] + b.w_ * p[0] + p[1] * q[2] - p[2] * q[1],
        a.w_ * q[1] + b.w_ * p[1] + p[2] * q[0] - p[0] * q[2],
        a.w_ * q[2] + b.w_ * p[2] + p[0] * q[1] - p[1] * q[0],
    };
    return SU2Element(w, v);
}

double SU2Element::distance(const SU2Element& other) const {
    return (matrix() - other.matrix()).cwiseAbs().maxCoeff();
}

SU2Element su2_exp(const SU2AngleVector& theta) {
    const double t = theta.angle();
    if (t < 1e-300) return SU2Element::identity();
    const double s = std::sin(0.5 * t) / t;
    return SU2Element(std::cos(0.5 * t),
                      {s * theta.theta[0], s * theta.theta[1], s * theta.theta[2]});
}

SU2AngleVector su2_log(const SU2Element& u) {
    const double theta = su2_class_angle(u);
    const auto& v = u.v();
    const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (vn < 1e-14) {
        // theta ~ 0 (identity) or ~ 2pi (antipode, axis degenerate)
        if (theta < 1.0) return {};
        return {{theta, 0.0, 0.0}};
    }
    return {{theta * v[0] / vn, theta * v[1] / vn, theta * v[2] / vn}};
}

double su2_class_angle(const SU2Element& u) {
    const double w = std::clamp(u.w(), -1.0, 1.0);
    return 2.0 * std::acos(w);
}

double haar_class_quadrature(const std::function<double(double)>& f, int n_nodes) {
    return integrate_panels(
        [&](double th) {
            const double s = std::sin(0.5 * th);
            return s * s * f(th) / M_PI;
        },
        0.0, 2.0 * M_PI, 1, n_nodes);
}

cplx haar_class_quadrature_c(const std::function<cplx(double)>& f, int n_nodes) {
    return integrate_panels(
        [&](double th) {
            const double s = std::sin(0.5 * th);
            return cplx(s * s / M_PI) * f(th);
        },
        0.0, 2.0 * M_PI, 1, n_nodes);
}

cplx haar_class_convolution(const std::function<cplx(double)>& f,
                            const std::function<cplx(double)>& g, double theta,
                            int n_nodes) {
    // Quaternion product: the class angle of B B0^-1 depends on theta, theta0 and
    // the angle gamma between the rotation axes.
    const double c = std::cos(0.5 * theta);
    const double s = std::sin(0.5 * theta);
    return integrate_panels(
        [&](double th0) {
            const double c0 = std::cos(0.5 * th0);
            const double s0 = std::sin(0.5 * th0);
            const cplx gv = g(th0);
            const cplx inner = integrate_panels(
                [&](double gamma) {
                    const double ct = std::clamp(c * c0 + s * s0 * std::cos(gamma), -1.0, 1.0);
                    return cplx(0.5 * std::sin(gamma)) * f(2.0 * std::acos(ct));
                },
                0.0, M_PI, 1, n_nodes);
            return cplx(s0 * s0 / M_PI) * gv * inner;
        },
        0.0, 2.0 * M_PI, 1, n_nodes);
}

double HaarSampler::uniform() {
    // 53-bit mantissa, bit-exact across platforms
    return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

double HaarSampler::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    have_spare_ = true;
    spare_ = r * std::sin(2.0 * M_PI * u2);
    return r * std::cos(2.0 * M_PI * u2);
}

SU2Element HaarSampler::sample() {
    const double a = gaussian(), b = gaussian(), c = gaussian(), d = gaussian();
    return SU2Element(a, {b, c, d});
}

double check_pseudo_orthogonality(const LorentzMatrix& m) {
    const LorentzMatrix eta = minkowski_metric();
    return (m.transpose() * eta * m - eta).cwiseAbs().maxCoeff();
}

LorentzMatrix boost_matrix(double velocity, const std::array<double, 3>& axis) {
    if (std::abs(velocity) >= 1.0)
        throw std::invalid_argument("boost_matrix: |velocity| must be < 1");
    const double an = std::sqrt(axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]);
    const double gamma = 1.0 / std::sqrt(1.0 - velocity * velocity);
    LorentzMatrix m = LorentzMatrix::Identity();
    if (std::abs(velocity) < 1e-300 || an < 1e-300) return m;
    const std::array<double, 3> n{axis[0] / an, axis[1] / an, axis[2] / an};
    m(0, 0) = gamma;
    for (int i = 0; i < 3; ++i) {
        m(0, i + 1) = m(i + 1, 0) = gamma * velocity * n[i];
        for (int j = 0; j < 3; ++j)
            m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (gamma - 1.0) * n[i] * n[j];
    }
    return m;
}

LorentzMatrix rotation_matrix_from_su2(const SU2Element& u) {
    // R_ij = (1/2) tr(sigma_i U sigma_j U^dag), assembled from the quaternion.
    const double w = u.w();
    const auto& v = u.v();
    LorentzMatrix m = LorentzMatrix::Identity();
    const double xx = v[0] * v[0], yy = v[1] * v[1], zz = v[2] * v[2];
    const double xy = v[0] * v[1], yz = v[1] * v[2], zx = v[2] * v[0];
    const double wx = w * v[0], wy = w * v[1], wz = w * v[2];
    m(1, 1) = 1 - 2 * (yy + zz);
    m(1, 2) = 2 * (xy - wz);
    m(1, 3) = 2 * (zx + wy);
    m(2, 1) = 2 * (xy + wz);
    m(2, 2) = 1 - 2 * (xx + zz);
    m(2, 3) = 2 * (yz - wx);
    m(3, 1) = 2 * (zx - wy);
    m(3, 2) = 2 * (yz + wx);
    m(3, 3) = 1 - 2 * (xx + yy);
    return m;
}

LorentzTransform LorentzTransform::from_rotation(const SU2Element& u) {
    return {rotation_matrix_from_su2(u), u.matrix()};
}

LorentzTransform LorentzTransform::from_boost_to(const FourVector& n) {
    if (n.t < 1.0 - 1e-12)
        throw std::invalid_argument("from_boost_to: n must be future unit timelike");
    LorentzMatrix m = LorentzMatrix::Identity();
    const std::array<double, 3> nv{n.x, n.y, n.z};
    const double a = std::sqrt(nv[0] * nv[0] + nv[1] * nv[1] + nv[2] * nv[2]);
    Matrix2c h = Matrix2c::Identity();
    if (a > 1e-300) {
        const std::array<double, 3> nh{nv[0] / a, nv[1] / a, nv[2] / a};
        m(0, 0) = n.t;
        for (int i = 0; i < 3; ++i) {
            m(0, i + 1) = m(i + 1, 0) = nv[i];
            for (int j = 0; j < 3; ++j)
                m(i + 1, j + 1) = (i == j ? 1.0 : 0.0) + (n.t - 1.0) * nh[i] * nh[j];
        }
        // Hermitian positive lift exp(xi/2 nhat.sigma), the canonical polar branch
        const double xi = std::acosh(std::max(n.t, 1.0));
        const double ch = std::cosh(0.5 * xi), sh = std::sinh(0.5 * xi);
        h(0, 0) = ch + sh * nh[2];
        h(0, 1) = sh * cplx(nh[0], -nh[1]);
        h(1, 0) = sh * cplx(nh[0], nh[1]);
        h(1, 1) = ch - sh * nh[2];
    }
    return {m, h};
}

LorentzTransform LorentzTransform::inverse() const {
    const LorentzMatrix eta = minkowski_metric();
    return {eta * matrix.transpose() * eta, sl2.inverse()};
}

AlgebraTangent path_tangent(const std::function<LorentzMatrix(double)>& path, double lambda,
                            double step) {
    const LorentzMatrix mdot = (path(lambda + step) - path(lambda - step)) / (2.0 * step);
    return mdot * path(lambda).inverse();
}

double tangent_antisymmetry_residual(const AlgebraTangent& omega) {
    const Eigen::Matrix4d raised = omega * minkowski_metric();
    return (raised + raised.transpose()).cwiseAbs().maxCoeff();
}

}  // namespace spath
