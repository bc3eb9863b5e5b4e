#pragma once

#include <Eigen/Dense>

#include "spath/minkowski.hpp"
#include "spath/repr.hpp"

namespace spath {

struct KernelParams {
    double mass = 1.0;       // m >= 0
    double lambda = 1.0;     // path-parameter interval, > 0
    double epsilon = 1e-3;   // i-epsilon regulator, > 0
    SpinLabel ell_max{16};   // character-sum truncation
};

/// Relativistic scalar kernel kappa(dx; lambda) =
///   (2pi)^-4 int d4p e^{ip.dx} e^{-i lambda (p^2 + m^2)}
/// in closed Fresnel-Gaussian form: -i/(16 pi^2 lambda^2) e^{i dx.dx/(4 lambda)} e^{-i lambda m^2}.
cplx scalar_kernel(const FourVector& dx, const KernelParams& params);

/// -i / (p^2 + m^2 - i eps); equals int_0^inf dlambda e^{-i lambda (p^2+m^2-i eps)}.
cplx feynman_propagator_momentum(const FourVector& p, double m, double eps);

/// Position-space Feynman propagator, reduced to its Bessel/Hankel form:
///   spacelike x^2 > 0:  m K1(m s) / (4 pi^2 s),          s = sqrt(x.x)
///   timelike  x^2 < 0:  i m H1^(2)(m tau) / (8 pi tau),  tau = sqrt(-x.x)
/// The light-cone neighbourhood |x.x| < 1e-6 is rejected.
cplx feynman_propagator_position(const FourVector& dx, double m, double eps);

/// SU(2) path-integral kernel as a character sum,
///   sum_l e^{-i dm2(l) lambda} (2l+1) chi^(l)(dB),  dm2(l) = l(l+1),
/// truncated at ell_max. lambda may be complex; lambda = -i tau gives the
/// absolutely convergent Euclidean (heat-kernel) form.
cplx su2_kernel(const SU2Element& d_b, cplx lambda, SpinLabel ell_max);

/// Same kernel as a function of the class angle.
cplx su2_kernel_class(double theta, cplx lambda, SpinLabel ell_max);

/// SO(4) kernel: double character sum over (lA, lB); factorizes as the product
/// of the two SU(2) kernels.
cplx so4_kernel(const SO4Element& dg, cplx lambda, SpinLabel ell_max);

/// Mass eigenvalue shift Delta m^2_l = l(l+1).
inline double mass_shift_sq(SpinLabel ell) { return ell.value() * (ell.value() + 1.0); }

/// Shifted mass, exactly as the two cases are written in the text:
/// (l,l): m'^2 = m^2 + 2 dm2(l); otherwise m'^2 = m^2 + 2 dm2(lA) + 2 dm2(lB).
double shifted_mass(double m, const RepLabel& rep);

/// Group-sector propagator: the identity on the representation space.
Eigen::MatrixXcd group_propagator_matrix(const RepLabel& rep);
Eigen::MatrixXcd group_propagator_matrix(int dimension);

/// Upper bound sum_{l > ell_max} (2l+1)^2 e^{-l(l+1) tau} on the Euclidean
/// truncation error at class angle spread |chi| <= 2l+1.
double su2_kernel_tail_bound(double tau, SpinLabel ell_max);

}  // namespace spath
