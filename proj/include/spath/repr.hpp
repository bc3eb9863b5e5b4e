#pragma once

#include <Eigen/Dense>

#include "spath/groups.hpp"

namespace spath {

/// Spin label ell in {0, 1/2, 1, 3/2, ...}, stored as 2*ell.
struct SpinLabel {
    int twice_ell = 0;

    constexpr SpinLabel() = default;
    constexpr explicit SpinLabel(int twice) : twice_ell(twice) {}
    static constexpr SpinLabel half(int n) { return SpinLabel(n); }

    int dimension() const { return twice_ell + 1; }
    double value() const { return 0.5 * twice_ell; }
    friend bool operator==(SpinLabel a, SpinLabel b) = default;
};

struct WignerDMatrix {
    SpinLabel ell;
    Eigen::MatrixXcd matrix;  // (2l+1)x(2l+1), rows/cols ordered m = +l ... -l
};

/// (ell_A, ell_B) label of an SU(2) x SU(2) representation.
struct RepLabel {
    SpinLabel ell_a;
    SpinLabel ell_b;

    int dimension() const { return ell_a.dimension() * ell_b.dimension(); }
};

/// Spin-ell representation matrix of U, built as the symmetrized tensor power
/// of the defining representation (D^{1/2} = U itself).
WignerDMatrix wigner_d(SpinLabel ell, const SU2Element& u);

/// tr D^(l)(U); real for SU(2) (imaginary part checked < 1e-12).
double character(SpinLabel ell, const SU2Element& u);

/// Character as a function of the class angle: sin((2l+1) t/2) / sin(t/2),
/// evaluated by the Chebyshev recurrence (exact at t = 0 and t = 2pi).
double character_class(SpinLabel ell, double theta);

/// chi^(lA,lB)(g) = chi^(lA)(g.left) chi^(lB)(g.right).
double character_product(const RepLabel& rep, const SO4Element& g);

/// Quadrature of chi^(l1) chi^(l2) over the group; 1 if l1 = l2 else 0.
double character_orthonormality(SpinLabel l1, SpinLabel l2, int n_nodes);

/// Monte Carlo check of Schur orthogonality
///   int dU D_{ij} D*_{kl} = delta_ik delta_jl / (2l+1)
/// over n_mc Haar samples; returns the max entry deviation.
double matrix_orthogonality_check(SpinLabel ell, long n_mc, std::uint64_t seed);

/// Quadrature check of the reproduction identity
///   int dB0 chi(B B0^-1) chi(B0) = chi(B) / (2l+1)
/// at class angle theta; returns the deviation.
double character_reproduction_residual(SpinLabel ell, double theta, int n_nodes);

}  // namespace spath
