#include "spath/spin.hpp"

#include <array>

#include "spath/numerics.hpp"

namespace spath {

namespace {

constexpr cplx kI{0.0, 1.0};

Eigen::Matrix2cd pauli(int i) {
    Eigen::Matrix2cd s;
    switch (i) {
        case 0: s << 0, 1, 1, 0; break;
        case 1: s << 0, cplx(0, -1), cplx(0, 1), 0; break;
        default: s << 1, 0, 0, -1; break;
    }
    return s;
}

Eigen::Matrix2cd sigma_dot(double x, double y, double z) {
    Eigen::Matrix2cd s;
    s << z, cplx(x, -y), cplx(x, y), -z;
    return s;
}

}  // namespace

UnitTimelike UnitTimelike::make(const FourVector& n) {
    const double norm2 = minkowski_dot(n, n);
    if (std::abs(norm2 + 1.0) > 1e-9)
        throw std::invalid_argument("UnitTimelike: n.n must equal -1");
    if (n.t == 0.0) throw std::invalid_argument("UnitTimelike: n.t must not vanish");
    // rescale away rounding drift so the stored invariant holds to 1e-12
    return UnitTimelike((1.0 / std::sqrt(-norm2)) * n);
}

UnitTimelike UnitTimelike::from_spatial(double x, double y, double z) {
    return UnitTimelike({std::sqrt(1.0 + x * x + y * y + z * z), x, y, z});
}

UnitTimelike UnitTimelike::on_shell(const ThreeMomentum& p, double m, int sign) {
    if (!(m > 0.0)) throw std::invalid_argument("UnitTimelike::on_shell: m must be > 0");
    const double e = on_shell_energy(p, m);
    return UnitTimelike({sign * e / m, p.px / m, p.py / m, p.pz / m});
}

Eigen::MatrixXcd LorentzRepresentation::rep_matrix(const LorentzTransform& t) const {
    switch (kind) {
        case RepKind::scalar: return Eigen::MatrixXcd::Identity(1, 1);
        case RepKind::vector: return t.matrix.cast<cplx>();
        case RepKind::dirac_spinor: {
            Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(4, 4);
            d.block<2, 2>(0, 0) = t.sl2;
            d.block<2, 2>(2, 2) = t.sl2.adjoint().inverse();
            return d;
        }
    }
    throw std::logic_error("unreachable");
}

const LorentzRepresentation& LorentzRepresentation::get(RepKind kind) {
    static const LorentzRepresentation scalar = [] {
        LorentzRepresentation r{RepKind::scalar, 1, 0, Eigen::MatrixXcd::Identity(1, 1)};
        return r;
    }();
    static const LorentzRepresentation dirac = [] {
        Eigen::MatrixXcd beta = Eigen::MatrixXcd::Zero(4, 4);
        beta.block<2, 2>(0, 2) = Eigen::Matrix2cd::Identity();
        beta.block<2, 2>(2, 0) = Eigen::Matrix2cd::Identity();
        return LorentzRepresentation{RepKind::dirac_spinor, 4, 1, std::move(beta)};
    }();
    static const LorentzRepresentation vector = [] {
        return LorentzRepresentation{RepKind::vector, 4, 2,
                                     minkowski_metric().cast<cplx>()};
    }();
    switch (kind) {
        case RepKind::scalar: return scalar;
        case RepKind::dirac_spinor: return dirac;
        case RepKind::vector: return vector;
    }
    throw std::logic_error("unreachable");
}

LorentzTransform standard_boost(const UnitTimelike& n) {
    return LorentzTransform::from_boost_to(n.future().vector());
}

LorentzTransform wigner_rotation(const LorentzTransform& lambda, const UnitTimelike& n) {
    const UnitTimelike image = UnitTimelike::make(apply(lambda.matrix, n.vector()));
    return standard_boost(image).inverse() * lambda * standard_boost(n);
}

namespace {

SU2Element su2_from_matrix(const Eigen::Matrix2cd& m) {
    // U = w I - i v.sigma; re-projects onto SU(2) through the quaternion norm
    const double w = 0.5 * (m(0, 0) + m(1, 1)).real();
    const double v1 = -0.5 * (m(0, 1) + m(1, 0)).imag();
    const double v2 = 0.5 * (m(1, 0) - m(0, 1)).real();
    const double v3 = 0.5 * (m(1, 1) - m(0, 0)).imag();
    return SU2Element(w, {v1, v2, v3});
}

// Rest-frame intertwiner u(e): the unique (up to gauge) solution of the
// rotation-restricted intertwining constraint D(R) u = u D^(j)(R), with the
// residual freedom fixed by u^dag u = I, u^dag g u = I and a real-positive
// phase anchor on the sigma = j column.
Eigen::MatrixXcd solve_rest_intertwiner(const LorentzRepresentation& rep) {
    const int dim = rep.dim;
    const int ds = rep.twice_j + 1;
    if (rep.kind == RepKind::scalar) return Eigen::MatrixXcd::Identity(1, 1);

    const std::array<std::array<double, 3>, 4> angles{{
        {0.7, 0.0, 0.0}, {0.0, 0.9, 0.0}, {0.0, 0.0, 1.3}, {0.3, -0.4, 0.8}}};
    Eigen::MatrixXcd constraints(angles.size() * dim * ds, dim * ds);
    for (std::size_t r = 0; r < angles.size(); ++r) {
        const SU2Element su2 = su2_exp({angles[r]});
        const auto rot = LorentzTransform::from_rotation(su2);
        const Eigen::MatrixXcd dr = rep.rep_matrix(rot);
        const Eigen::MatrixXcd dspin = wigner_d(rep.spin(), su2).matrix;
        // vec(u) column-major: constraint (I (x) D(R)) - (Dspin^T (x) I)
        Eigen::MatrixXcd block = Eigen::MatrixXcd::Zero(dim * ds, dim * ds);
        for (int s = 0; s < ds; ++s) {
            block.block(s * dim, s * dim, dim, dim) = dr;
            for (int sp = 0; sp < ds; ++sp)
                block.block(s * dim, sp * dim, dim, dim) -=
                    dspin(sp, s) * Eigen::MatrixXcd::Identity(dim, dim);
        }
        constraints.block(r * dim * ds, 0, dim * ds, dim * ds) = block;
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(constraints, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    std::vector<Eigen::MatrixXcd> basis;
    for (int k = 0; k < sv.size(); ++k) {
        if (sv(k) < 1e-9) {
            Eigen::VectorXcd vec = svd.matrixV().col(k);
            basis.push_back(Eigen::Map<Eigen::MatrixXcd>(vec.data(), dim, ds));
        }
    }
    if (basis.empty()) throw std::runtime_error("rest intertwiner: empty nullspace");

    // Within the nullspace both u^dag u and u^dag g u are multiples of the
    // identity (Schur); pick the combination maximizing the g-weighted norm,
    // which enforces u^dag g u = +I alongside u^dag u = I.
    const int d = int(basis.size());
    Eigen::MatrixXcd gmat(d, d), nmat(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            gmat(i, j) = (basis[i].adjoint() * rep.g * basis[j]).trace() / double(ds);
            nmat(i, j) = (basis[i].adjoint() * basis[j]).trace() / double(ds);
        }
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(gmat, nmat);
    const Eigen::VectorXcd c = es.eigenvectors().col(d - 1);
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(dim, ds);
    for (int i = 0; i < d; ++i) u += c(i) * basis[i];

    const double kappa = (u.adjoint() * u).trace().real() / double(ds);
    u /= std::sqrt(kappa);
    // global phase: first nonzero entry of the sigma = j column real positive
    for (int i = 0; i < dim; ++i) {
        if (std::abs(u(i, 0)) > 1e-8) {
            u *= std::abs(u(i, 0)) / u(i, 0);
            break;
        }
    }
    const double gres = (u.adjoint() * rep.g * u - Eigen::MatrixXcd::Identity(ds, ds))
                            .cwiseAbs()
                            .maxCoeff();
    if (gres > 1e-8)
        throw std::runtime_error("rest intertwiner: g-orthonormality not attained");
    return u;
}

const Eigen::MatrixXcd& rest_intertwiner(const LorentzRepresentation& rep) {
    static const Eigen::MatrixXcd scalar =
        solve_rest_intertwiner(LorentzRepresentation::get(RepKind::scalar));
    static const Eigen::MatrixXcd dirac =
        solve_rest_intertwiner(LorentzRepresentation::get(RepKind::dirac_spinor));
    static const Eigen::MatrixXcd vector =
        solve_rest_intertwiner(LorentzRepresentation::get(RepKind::vector));
    switch (rep.kind) {
        case RepKind::scalar: return scalar;
        case RepKind::dirac_spinor: return dirac;
        case RepKind::vector: return vector;
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXcd u_matrix(const LorentzRepresentation& rep, const UnitTimelike& n) {
    return rep.rep_matrix(standard_boost(n)) * rest_intertwiner(rep);
}

// v_sigma(n) = (-1)^(j+sigma) u_{-sigma}(-n), Eq. C9 applied through the
// future representative of -n.
Eigen::MatrixXcd v_matrix(const LorentzRepresentation& rep, const UnitTimelike& n) {
    const Eigen::MatrixXcd u = u_matrix(rep, n.reversed());
    const int ds = rep.twice_j + 1;
    Eigen::MatrixXcd v(rep.dim, ds);
    for (int col = 0; col < ds; ++col) {
        const int twice_sigma = rep.twice_j - 2 * col;
        const int col_minus = (rep.twice_j + twice_sigma) / 2;  // column of -sigma
        const int jps = (rep.twice_j + twice_sigma) / 2;        // j + sigma (integer)
        const double sign = (jps % 2 == 0) ? 1.0 : -1.0;
        v.col(col) = sign * u.col(col_minus);
    }
    return v;
}

}  // namespace

Eigen::MatrixXcd special_adjoint(const LorentzRepresentation& rep,
                                 const Eigen::MatrixXcd& m) {
    return m.adjoint() * rep.g;
}

SpinFrame build_spin_frame(const LorentzRepresentation& rep, const UnitTimelike& n) {
    SpinFrame frame{n, &rep, standard_boost(n), {}, {}, {}};
    frame.u = u_matrix(rep, n);
    frame.v = v_matrix(rep, n);
    frame.projector = frame.u * special_adjoint(rep, frame.u);
    return frame;
}

double covariance_residual_u(const LorentzRepresentation& rep, const LorentzTransform& lambda,
                             const UnitTimelike& n) {
    const UnitTimelike image = UnitTimelike::make(apply(lambda.matrix, n.vector()));
    const LorentzTransform w = wigner_rotation(lambda, n);
    const Eigen::MatrixXcd dspin = wigner_d(rep.spin(), su2_from_matrix(w.sl2)).matrix;
    const Eigen::MatrixXcd lhs = u_matrix(rep, image) * dspin;
    const Eigen::MatrixXcd rhs = rep.rep_matrix(lambda) * u_matrix(rep, n);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

double covariance_residual_v(const LorentzRepresentation& rep, const LorentzTransform& lambda,
                             const UnitTimelike& n) {
    const UnitTimelike image = UnitTimelike::make(apply(lambda.matrix, n.vector()));
    const LorentzTransform w = wigner_rotation(lambda, n);
    const Eigen::MatrixXcd dspin = wigner_d(rep.spin(), su2_from_matrix(w.sl2)).matrix;
    const Eigen::MatrixXcd lhs = v_matrix(rep, image) * dspin.conjugate();
    const Eigen::MatrixXcd rhs = rep.rep_matrix(lambda) * v_matrix(rep, n);
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

// ---- on-shell kernels and propagators ----

namespace {

constexpr std::array<double, 3> kDampings{0.1, 0.05, 0.025};
constexpr double kPMax = 400.0;
constexpr int kPanels = 400;
constexpr int kNodes = 24;

double spherical_j0(double z) { return sinc(z); }
double spherical_j1(double z) {
    if (std::abs(z) < 1e-4) return z / 3.0 - z * z * z / 30.0;
    return std::sin(z) / (z * z) - std::cos(z) / z;
}
double spherical_j2(double z) {
    if (std::abs(z) < 1e-3) return z * z / 15.0;
    return (3.0 / (z * z) - 1.0) * std::sin(z) / z - 3.0 * std::cos(z) / (z * z);
}

}  // namespace

cplx onshell_kernel(const FourVector& dx, double m, int sign) {
    if (!(m > 0.0)) throw std::invalid_argument("onshell_kernel: m must be > 0");
    const double t = dx.t;
    const double r = std::sqrt(dx.x * dx.x + dx.y * dx.y + dx.z * dx.z);
    const auto integrand = [&](double p) -> cplx {
        const double e = std::sqrt(p * p + m * m);
        const cplx phase = std::exp(-kI * double(sign) * e * t);
        if (r > 1e-12)
            return p * std::sin(p * r) / (4.0 * M_PI * M_PI * r * e) * phase;
        return p * p / (4.0 * M_PI * M_PI * e) * phase;
    };
    const cplx value = damped_radial(integrand, kDampings, kPMax, kPanels, kNodes);
    if (!std::isfinite(value.real()) || !std::isfinite(value.imag()))
        throw std::runtime_error("onshell_kernel: quadrature failed to converge");
    return value;
}

Eigen::MatrixXcd onshell_matrix_kernel(const LorentzRepresentation& rep, const FourVector& dx,
                                       double m, int sign) {
    if (!(m > 0.0)) throw std::invalid_argument("onshell_matrix_kernel: m must be > 0");
    const double t = dx.t;
    const double r = std::sqrt(dx.x * dx.x + dx.y * dx.y + dx.z * dx.z);
    const std::array<double, 3> xh =
        (r > 1e-12) ? std::array<double, 3>{dx.x / r, dx.y / r, dx.z / r}
                    : std::array<double, 3>{0.0, 0.0, 1.0};
    const int dim = rep.dim;

    // angular moments over the unit sphere against e^{i p.x}:
    //   <1> = j0,  <phat_k> = i xhat_k j1,  <phat_j phat_k> = (j1/z) d_jk - j2 xhat_j xhat_k
    const auto moment_matrix = [&](double p) -> Eigen::MatrixXcd {
        const double e = std::sqrt(p * p + m * m);
        const double p0 = sign * e;
        const double z = p * r;
        const double j0 = spherical_j0(z);
        const double j1 = spherical_j1(z);
        const double j2 = spherical_j2(z);
        Eigen::MatrixXcd mm(dim, dim);
        switch (rep.kind) {
            case RepKind::scalar:
                mm(0, 0) = j0;
                break;
            case RepKind::dirac_spinor: {
                const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
                const Eigen::Matrix2cd vec =
                    kI * j1 * p * sigma_dot(xh[0], xh[1], xh[2]);
                mm = Eigen::MatrixXcd::Zero(4, 4);
                mm.block<2, 2>(0, 0) = 0.5 * j0 * id;
                mm.block<2, 2>(2, 2) = 0.5 * j0 * id;
                mm.block<2, 2>(0, 2) = 0.5 * (p0 * j0 * id + vec) / m;
                mm.block<2, 2>(2, 0) = 0.5 * (p0 * j0 * id - vec) / m;
                break;
            }
            case RepKind::vector: {
                mm = j0 * Eigen::MatrixXcd::Identity(4, 4);
                const double j1z = (z > 1e-12) ? j1 / z : 1.0 / 3.0;
                // P^mu_nu = delta + n^mu n_nu, n = (p0, p)/m; n_0 = -p0/m
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu) {
                        cplx val;
                        if (mu == 0 && nu == 0)
                            val = -p0 * p0 * j0 / (m * m);
                        else if (mu == 0)
                            val = p0 * (kI * j1 * p * xh[nu - 1]) / (m * m);
                        else if (nu == 0)
                            val = -p0 * (kI * j1 * p * xh[mu - 1]) / (m * m);
                        else
                            val = p * p *
                                  (j1z * (mu == nu ? 1.0 : 0.0) - j2 * xh[mu - 1] * xh[nu - 1]) /
                                  (m * m);
                        mm(mu, nu) += val;
                    }
                break;
            }
        }
        const cplx phase = std::exp(-kI * double(sign) * e * t);
        return Eigen::MatrixXcd(p * p / (4.0 * M_PI * M_PI * e) * phase * mm);
    };

    // damped radial integral, entrywise Richardson extrapolation
    std::array<Eigen::MatrixXcd, 3> vals;
    for (int i = 0; i < 3; ++i) {
        const double d = kDampings[i];
        Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(dim, dim);
        const auto& rule = gauss_legendre(kNodes);
        const double h = kPMax / kPanels;
        for (int k = 0; k < kPanels; ++k) {
            const double a = k * h;
            for (int q = 0; q < kNodes; ++q) {
                const double p = a + 0.5 * h * (1.0 + rule.nodes[q]);
                acc += (0.5 * h * rule.weights[q] * std::exp(-d * p)) * moment_matrix(p);
            }
        }
        vals[i] = acc;
    }
    const Eigen::MatrixXcd e1 = 2.0 * vals[1] - vals[0];
    const Eigen::MatrixXcd e2 = 2.0 * vals[2] - vals[1];
    return (4.0 * e2 - e1) / 3.0;
}

namespace {

// Delta_F as a function of the invariant xi = x.x, with its first and second
// xi-derivatives (Bessel recurrences).
struct RadialDerivatives {
    cplx f, f1, f2;
};

RadialDerivatives propagator_radial_derivatives(double xi, double m) {
    RadialDerivatives d;
    const double m2 = m * m;
    if (xi > 0.0) {
        const double z = m * std::sqrt(xi);
        d.f = m2 / (4.0 * M_PI * M_PI) * std::cyl_bessel_k(1.0, z) / z;
        d.f1 = -(m2 * m2 / (8.0 * M_PI * M_PI)) * std::cyl_bessel_k(2.0, z) / (z * z);
        d.f2 = (m2 * m2 * m2 / (16.0 * M_PI * M_PI)) * std::cyl_bessel_k(3.0, z) / (z * z * z);
    } else {
        const double w = m * std::sqrt(-xi);
        const auto h2 = [](double nu, double x) {
            return cplx(std::cyl_bessel_j(nu, x), -std::cyl_neumann(nu, x));
        };
        d.f = kI * m2 / (8.0 * M_PI) * h2(1.0, w) / w;
        d.f1 = kI * m2 * m2 / (16.0 * M_PI) * h2(2.0, w) / (w * w);
        d.f2 = kI * m2 * m2 * m2 / (32.0 * M_PI) * h2(3.0, w) / (w * w * w);
    }
    return d;
}

}  // namespace

Eigen::MatrixXcd nonscalar_propagator(const LorentzRepresentation& rep, const FourVector& dx,
                                      double m, double eps) {
    const double xi = minkowski_dot(dx, dx);
    if (std::abs(xi) < 1e-6)
        throw std::domain_error("nonscalar_propagator: light-cone separation");
    const auto rd = propagator_radial_derivatives(xi, m);

    // p^mu Delta -> -2i x^mu F', p^mu p^nu Delta -> -2 eta^{mu nu} F' - 4 x^mu x^nu F''
    switch (rep.kind) {
        case RepKind::scalar: {
            Eigen::MatrixXcd out(1, 1);
            out(0, 0) = feynman_propagator_position(dx, m, eps);
            return out;
        }
        case RepKind::dirac_spinor: {
            std::array<cplx, 4> pmu;
            for (int mu = 0; mu < 4; ++mu) pmu[mu] = -2.0 * kI * dx[mu] * rd.f1;
            Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(4, 4);
            const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
            const Eigen::Matrix2cd sig_x = pauli(0), sig_y = pauli(1), sig_z = pauli(2);
            const Eigen::Matrix2cd vec = pmu[1] * sig_x + pmu[2] * sig_y + pmu[3] * sig_z;
            out.block<2, 2>(0, 0) = 0.5 * rd.f * id;
            out.block<2, 2>(2, 2) = 0.5 * rd.f * id;
            out.block<2, 2>(0, 2) = 0.5 * (pmu[0] * id + vec) / m;
            out.block<2, 2>(2, 0) = 0.5 * (pmu[0] * id - vec) / m;
            return out;
        }
        case RepKind::vector: {
            Eigen::MatrixXcd out = rd.f * Eigen::MatrixXcd::Identity(4, 4);
            const FourVector xl{-dx.t, dx.x, dx.y, dx.z};  // lowered index
            for (int mu = 0; mu < 4; ++mu)
                for (int nu = 0; nu < 4; ++nu)
                    out(mu, nu) += (-2.0 * (mu == nu ? 1.0 : 0.0) * rd.f1 -
                                    4.0 * dx[mu] * xl[nu] * rd.f2) /
                                   (m * m);
            return out;
        }
    }
    throw std::logic_error("unreachable");
}

Eigen::MatrixXcd plane_wave_amplitude(const ThreeMomentum& p, const FourVector& x, double m,
                                      int sign, SpinLabel j) {
    if (!(m > 0.0)) throw std::invalid_argument("plane_wave_amplitude: m must be > 0");
    const double e = on_shell_energy(p, m);
    const cplx phase =
        std::exp(kI * (sign * e * x.t - (p.px * x.x + p.py * x.y + p.pz * x.z)));
    return std::pow(2.0 * M_PI, -1.5) * phase *
           Eigen::MatrixXcd::Identity(j.dimension(), j.dimension());
}

Eigen::MatrixXcd newton_wigner_wavefunction(const ThreeMomentum& p, const FourVector& x,
                                            double m, int sign,
                                            const LorentzRepresentation& rep) {
    if (!(m > 0.0)) throw std::invalid_argument("newton_wigner_wavefunction: m must be > 0");
    const double e = on_shell_energy(p, m);
    const auto frame = build_spin_frame(rep, UnitTimelike::on_shell(p, m, sign));
    const Eigen::MatrixXcd coeff =
        special_adjoint(rep, sign > 0 ? frame.u : frame.v);
    const cplx phase =
        std::exp(kI * (sign * e * x.t - (p.px * x.x + p.py * x.y + p.pz * x.z)));
    return std::pow(2.0 * M_PI, -1.5) * phase * coeff;
}

Eigen::MatrixXcd apply_position_op_plane_wave(const ThreeMomentum& p, const FourVector& x,
                                              double m, int sign, SpinLabel j, int comp,
                                              double step) {
    const auto detrended = [&](const ThreeMomentum& q) -> Eigen::MatrixXcd {
        const double e = on_shell_energy(q, m);
        return std::exp(-kI * double(sign) * e * x.t) * plane_wave_amplitude(q, x, m, sign, j);
    };
    ThreeMomentum pp = p, pm = p;
    (comp == 0 ? pp.px : comp == 1 ? pp.py : pp.pz) += step;
    (comp == 0 ? pm.px : comp == 1 ? pm.py : pm.pz) -= step;
    const Eigen::MatrixXcd deriv = (detrended(pp) - detrended(pm)) / (2.0 * step);
    const double e = on_shell_energy(p, m);
    return std::exp(kI * double(sign) * e * x.t) * kI * deriv;
}

Eigen::MatrixXcd apply_position_op_newton_wigner(const ThreeMomentum& p, const FourVector& x,
                                                 double m, int sign,
                                                 const LorentzRepresentation& rep, int comp,
                                                 double step) {
    const auto inner = [&](const ThreeMomentum& q) -> Eigen::MatrixXcd {
        const double e = on_shell_energy(q, m);
        const auto frame = build_spin_frame(rep, UnitTimelike::on_shell(q, m, sign));
        const Eigen::MatrixXcd& coeff = sign > 0 ? frame.u : frame.v;
        return std::exp(-kI * double(sign) * e * x.t) * coeff *
               newton_wigner_wavefunction(q, x, m, sign, rep);
    };
    ThreeMomentum pp = p, pm = p;
    (comp == 0 ? pp.px : comp == 1 ? pp.py : pp.pz) += step;
    (comp == 0 ? pm.px : comp == 1 ? pm.py : pm.pz) -= step;
    const Eigen::MatrixXcd deriv = (inner(pp) - inner(pm)) / (2.0 * step);
    const double e = on_shell_energy(p, m);
    const auto frame = build_spin_frame(rep, UnitTimelike::on_shell(p, m, sign));
    const Eigen::MatrixXcd coeff =
        special_adjoint(rep, sign > 0 ? frame.u : frame.v);
    return std::exp(kI * double(sign) * e * x.t) * kI * (coeff * deriv);
}

}  // namespace spath
