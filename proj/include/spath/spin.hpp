#pragma once

#include <Eigen/Dense>

#include "spath/groups.hpp"
#include "spath/kernels.hpp"
#include "spath/repr.hpp"

namespace spath {

/// Unit timelike vector n (n.n = -1); carries its time orientation.
class UnitTimelike {
  public:
    static UnitTimelike make(const FourVector& n);
    /// Future-pointing n with given spatial part: (sqrt(1 + |v|^2), v).
    static UnitTimelike from_spatial(double x, double y, double z);
    /// On-shell spin vector n_p = (sign * E_p, p) / m.
    static UnitTimelike on_shell(const ThreeMomentum& p, double m, int sign);

    const FourVector& vector() const { return n_; }
    int orientation() const { return n_.t > 0 ? +1 : -1; }
    UnitTimelike reversed() const { return UnitTimelike(-n_); }
    /// The future-pointing representative (n or -n).
    UnitTimelike future() const { return orientation() > 0 ? *this : reversed(); }

  private:
    explicit UnitTimelike(const FourVector& n) : n_(n) {}
    FourVector n_;
};

enum class RepKind { scalar, dirac_spinor, vector };

/// Finite-dimensional Lorentz representation data: the matrix map D(Lambda)
/// (through the SL(2,C) cover where needed) and the invariant form g with
/// D^dag g D = g. g is 1 for the scalar, the Dirac beta matrix (chiral basis)
/// for the spinor and the Minkowski metric for the vector representation.
struct LorentzRepresentation {
    RepKind kind;
    int dim;
    int twice_j;
    Eigen::MatrixXcd g;

    Eigen::MatrixXcd rep_matrix(const LorentzTransform& t) const;
    SpinLabel spin() const { return SpinLabel{twice_j}; }

    static const LorentzRepresentation& get(RepKind kind);
};

/// Little-group reduction data attached to a timelike unit vector:
/// the standard boost, the spin coefficient matrices u, v and the projector
/// P = u u^ddag = v v^ddag (^ddag is the g-weighted adjoint implied by the
/// index lowering conventions).
struct SpinFrame {
    UnitTimelike n;
    const LorentzRepresentation* rep;
    LorentzTransform standard;     // L(n) (built along the future representative)
    Eigen::MatrixXcd u;            // dim x (2j+1)
    Eigen::MatrixXcd v;            // dim x (2j+1)
    Eigen::MatrixXcd projector;    // dim x dim, P^2 = P, P u = u
};

/// L(n): carries e = (1,0,0,0) to n for future-pointing n; past-pointing n is
/// routed through L(-n).
LorentzTransform standard_boost(const UnitTimelike& n);

/// W(Lambda, n) = L(Lambda n)^-1 Lambda L(n); fixes e, rotation on the spatial block.
LorentzTransform wigner_rotation(const LorentzTransform& lambda, const UnitTimelike& n);

SpinFrame build_spin_frame(const LorentzRepresentation& rep, const UnitTimelike& n);

/// g-weighted adjoint u^ddag = u^dag g implied by the representation-index
/// lowering; satisfies u^ddag u = I.
Eigen::MatrixXcd special_adjoint(const LorentzRepresentation& rep, const Eigen::MatrixXcd& m);

/// Max-norm of u(Lambda n) D^(j)(W) - D(Lambda) u(n)   (the u intertwining identity).
double covariance_residual_u(const LorentzRepresentation& rep, const LorentzTransform& lambda,
                             const UnitTimelike& n);

/// Same with the complex-conjugate spin representation on the v side.
double covariance_residual_v(const LorentzRepresentation& rep, const LorentzTransform& lambda,
                             const UnitTimelike& n);

/// On-shell kernel Delta_+- (sign = +1 particle, -1 antiparticle):
///   (2pi)^-3 int d3p (2 E_p)^-1 e^{i[-sign E_p dx0 + p.dx]}
/// by damped radial quadrature with Richardson extrapolation of the damping.
cplx onshell_kernel(const FourVector& dx, double m, int sign);

/// Matrix form of the on-shell kernel with P(n_p^sign) under the integral.
Eigen::MatrixXcd onshell_matrix_kernel(const LorentzRepresentation& rep, const FourVector& dx,
                                       double m, int sign);

/// Nonscalar propagator Delta^{l'}_l(dx): the projector polynomial applied as
/// derivatives (-i d/dx)/m to the position-space Feynman propagator, evaluated
/// in closed form. Light-cone separations are rejected.
Eigen::MatrixXcd nonscalar_propagator(const LorentzRepresentation& rep, const FourVector& dx,
                                      double m, double eps);

/// Plane wave (2pi)^{-3/2} delta^{s'}_s e^{i(sign E t - p.x)} of the n-frame
/// localized state.
Eigen::MatrixXcd plane_wave_amplitude(const ThreeMomentum& p, const FourVector& x, double m,
                                      int sign, SpinLabel j);

/// Newton-Wigner wave function (2pi)^{-3/2} u^ddag(n_p) e^{i(sign E t - p.x)}
/// (v^ddag for sign = -1), rows are spin indices, columns representation indices.
Eigen::MatrixXcd newton_wigner_wavefunction(const ThreeMomentum& p, const FourVector& x,
                                            double m, int sign,
                                            const LorentzRepresentation& rep);

/// Finite-difference application of the translated position operator
/// e^{+-iEt} i d/dp e^{-+iEt} to the plane wave; exact eigenfunction of x.
Eigen::MatrixXcd apply_position_op_plane_wave(const ThreeMomentum& p, const FourVector& x,
                                              double m, int sign, SpinLabel j, int comp,
                                              double step);

/// Finite-difference application of the sandwiched position operator
/// u^ddag(n_p) e^{+-iEt} i d/dp e^{-+iEt} u(n_p) to the Newton-Wigner wave
/// function. The eigenvalue identity holds on the spin subbundle: the residual
/// (O phi - x phi) P(n_p) vanishes and phi P = phi.
Eigen::MatrixXcd apply_position_op_newton_wigner(const ThreeMomentum& p, const FourVector& x,
                                                 double m, int sign,
                                                 const LorentzRepresentation& rep, int comp,
                                                 double step);

}  // namespace spath
