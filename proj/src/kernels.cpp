#include "spath/kernels.hpp"

namespace spath {

namespace {
constexpr cplx kI{0.0, 1.0};
}

cplx scalar_kernel(const FourVector& dx, const KernelParams& params) {
    if (!(params.lambda > 0.0)) throw std::invalid_argument("scalar_kernel: lambda <= 0");
    const double lam = params.lambda;
    const double m = params.mass;
    const double xi = minkowski_dot(dx, dx);
    return -kI / (16.0 * M_PI * M_PI * lam * lam) *
           std::exp(kI * (xi / (4.0 * lam) - lam * m * m));
}

cplx feynman_propagator_momentum(const FourVector& p, double m, double eps) {
    return -kI / cplx(minkowski_dot(p, p) + m * m, -eps);
}

cplx feynman_propagator_position(const FourVector& dx, double m, double /*eps*/) {
    const double xi = minkowski_dot(dx, dx);
    if (std::abs(xi) < 1e-6)
        throw std::domain_error("feynman_propagator_position: light-cone separation");
    if (xi > 0.0) {
        const double s = std::sqrt(xi);
        return m * std::cyl_bessel_k(1.0, m * s) / (4.0 * M_PI * M_PI * s);
    }
    const double tau = std::sqrt(-xi);
    const cplx h1 = cplx(std::cyl_bessel_j(1.0, m * tau), -std::cyl_neumann(1.0, m * tau));
    return kI * m * h1 / (8.0 * M_PI * tau);
}

cplx su2_kernel(const SU2Element& d_b, cplx lambda, SpinLabel ell_max) {
    return su2_kernel_class(su2_class_angle(d_b), lambda, ell_max);
}

cplx su2_kernel_class(double theta, cplx lambda, SpinLabel ell_max) {
    cplx total = 0.0;
    for (int l2 = 0; l2 <= ell_max.twice_ell; ++l2) {
        const SpinLabel ell{l2};
        total += std::exp(-kI * lambda * mass_shift_sq(ell)) * double(ell.dimension()) *
                 character_class(ell, theta);
    }
    return total;
}

cplx so4_kernel(const SO4Element& dg, cplx lambda, SpinLabel ell_max) {
    const double tha = su2_class_angle(dg.left);
    const double thb = su2_class_angle(dg.right);
    cplx total = 0.0;
    for (int a2 = 0; a2 <= ell_max.twice_ell; ++a2) {
        const SpinLabel la{a2};
        const cplx fa = std::exp(-kI * lambda * mass_shift_sq(la)) * double(la.dimension()) *
                        character_class(la, tha);
        for (int b2 = 0; b2 <= ell_max.twice_ell; ++b2) {
            const SpinLabel lb{b2};
            total += fa * std::exp(-kI * lambda * mass_shift_sq(lb)) *
                     double(lb.dimension()) * character_class(lb, thb);
        }
    }
    return total;
}

double shifted_mass(double m, const RepLabel& rep) {
    const double shift = (rep.ell_a == rep.ell_b)
                             ? 2.0 * mass_shift_sq(rep.ell_a)
                             : 2.0 * mass_shift_sq(rep.ell_a) + 2.0 * mass_shift_sq(rep.ell_b);
    return std::sqrt(m * m + shift);
}

Eigen::MatrixXcd group_propagator_matrix(const RepLabel& rep) {
    return group_propagator_matrix(rep.dimension());
}

Eigen::MatrixXcd group_propagator_matrix(int dimension) {
    return Eigen::MatrixXcd::Identity(dimension, dimension);
}

double su2_kernel_tail_bound(double tau, SpinLabel ell_max) {
    double bound = 0.0;
    for (int l2 = ell_max.twice_ell + 1; l2 <= ell_max.twice_ell + 400; ++l2) {
        const SpinLabel ell{l2};
        const double d = ell.dimension();
        const double term = d * d * std::exp(-mass_shift_sq(ell) * tau);
        bound += term;
        if (term < 1e-300) break;
    }
    return bound;
}

}  // namespace spath
