// Acceptance suite: runs each release criterion at its stated tolerance and
// prints one pass/fail line per criterion. Exit code 0 iff all pass.
//
// Usage: acceptance [path-to-spath-cli]
// The CLI path (default ./spath) is used by the determinism criterion.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "spath/fock.hpp"
#include "spath/kernels.hpp"
#include "spath/spin.hpp"

using namespace spath;

namespace {

int g_failures = 0;

class Criterion {
  public:
    Criterion(int number, std::string description)
        : number_(number), description_(std::move(description)),
          start_(std::chrono::steady_clock::now()) {}

    void check(bool ok, const std::string& detail) {
        ok_ = ok_ && ok;
        if (!ok && failure_.empty()) failure_ = detail;
    }

    ~Criterion() {
        const auto elapsed = std::chrono::duration<double>(
                                 std::chrono::steady_clock::now() - start_)
                                 .count();
        std::printf("criterion %2d: %s  [%5.2fs] %s%s\n", number_, ok_ ? "PASS" : "FAIL",
                    elapsed, description_.c_str(),
                    failure_.empty() ? "" : ("  <- " + failure_).c_str());
        if (!ok_) ++g_failures;
    }

  private:
    int number_;
    std::string description_;
    std::string failure_;
    bool ok_ = true;
    std::chrono::steady_clock::time_point start_;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

LorentzTransform random_lorentz(HaarSampler& rng) {
    const SU2Element u = rng.sample();
    const double vx = rng.gaussian() * 0.5, vy = rng.gaussian() * 0.5,
                 vz = rng.gaussian() * 0.5;
    const FourVector n{std::sqrt(1.0 + vx * vx + vy * vy + vz * vz), vx, vy, vz};
    return LorentzTransform::from_rotation(u) * LorentzTransform::from_boost_to(n);
}

void criterion_1_character_orthonormality() {
    Criterion c(1, "character orthonormality, all ell <= 4, 64-node quadrature, 1e-10");
    double worst = 0.0;
    for (int a2 = 0; a2 <= 8; ++a2)
        for (int b2 = 0; b2 <= 8; ++b2) {
            const double target = a2 == b2 ? 1.0 : 0.0;
            worst = std::max(worst,
                             std::abs(character_orthonormality(SpinLabel{a2}, SpinLabel{b2},
                                                               64) -
                                      target));
        }
    c.check(worst < 1e-10, "worst residual " + fmt(worst));
}

void criterion_2_kernel_semigroup_and_mass_shift() {
    Criterion c(2, "Euclidean SU(2) kernel semigroup at tau = 0.3 + 0.3 (1e-8); mass shifts");
    const SpinLabel lmax{16};
    const cplx half(0.0, -0.3), full(0.0, -0.6);
    double worst = 0.0;
    for (const double theta : {0.5, 1.3, 2.1, 2.9, 3.7, 4.5, 5.3, 6.1}) {
        const cplx conv = haar_class_convolution(
            [&](double th) { return su2_kernel_class(th, half, lmax); },
            [&](double th) { return su2_kernel_class(th, half, lmax); }, theta, 64);
        worst = std::max(worst, std::abs(conv - su2_kernel_class(theta, full, lmax)));
    }
    c.check(worst < 1e-8, "worst semigroup residual " + fmt(worst));
    c.check(shifted_mass(1.0, {SpinLabel{1}, SpinLabel{1}}) == std::sqrt(2.5),
            "(1/2,1/2) shifted mass != sqrt(2.5)");
    c.check(shifted_mass(2.0, {SpinLabel{1}, SpinLabel{0}}) == std::sqrt(5.5),
            "(1/2,0) shifted mass != sqrt(5.5)");
}

void criterion_3_so4_factorization() {
    Criterion c(3, "SO(4) kernel factorizes into SU(2) kernels, 100 random points, 1e-12");
    HaarSampler rng(0);
    const cplx lam(0.4, -0.5);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const SO4Element dg{rng.sample(), rng.sample()};
        const cplx whole = so4_kernel(dg, lam, SpinLabel{12});
        const cplx split = su2_kernel(dg.left, lam, SpinLabel{12}) *
                           su2_kernel(dg.right, lam, SpinLabel{12});
        worst = std::max(worst, std::abs(whole - split) / std::max(1.0, std::abs(whole)));
    }
    c.check(worst < 1e-12, "worst factorization residual " + fmt(worst));
}

void criterion_4_lambda_integration() {
    Criterion c(4, "integrated kernel path length matches -i/(p.p + m^2 - i eps), 1e-6");
    const double eps = 0.01;
    HaarSampler rng(1);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
        const FourVector p{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const cplx quad = oracles::lambda_integrated_propagator(p, 1.0, eps, 1e3 / eps);
        worst = std::max(worst, std::abs(quad - feynman_propagator_momentum(p, 1.0, eps)));
    }
    c.check(worst < 1e-6, "worst deviation " + fmt(worst));
}

void criterion_5_spin_frame_identities() {
    Criterion c(5, "spin-frame identities and C10/C11 covariance, 100 seeded (Lambda, n)");
    for (const RepKind kind :
         {RepKind::scalar, RepKind::dirac_spinor, RepKind::vector}) {
        const auto& rep = LorentzRepresentation::get(kind);
        const int ds = rep.twice_j + 1;
        HaarSampler rng(2);
        double ortho = 0.0, idem = 0.0, uv = 0.0, c10 = 0.0, c11 = 0.0;
        for (int i = 0; i < 100; ++i) {
            const auto lam = random_lorentz(rng);
            const UnitTimelike n =
                UnitTimelike::from_spatial(rng.gaussian(), rng.gaussian(), rng.gaussian());
            const auto f = build_spin_frame(rep, n);
            ortho = std::max(ortho,
                             (special_adjoint(rep, f.u) * f.u -
                              Eigen::MatrixXcd::Identity(ds, ds))
                                 .cwiseAbs()
                                 .maxCoeff());
            idem = std::max(idem,
                            (f.projector * f.projector - f.projector).cwiseAbs().maxCoeff());
            uv = std::max(uv, (f.v * special_adjoint(rep, f.v) - f.projector)
                                  .cwiseAbs()
                                  .maxCoeff());
            c10 = std::max(c10, covariance_residual_u(rep, lam, n));
            c11 = std::max(c11, covariance_residual_v(rep, lam, n));
        }
        c.check(ortho < 1e-10, "u+u orthonormality " + fmt(ortho));
        c.check(idem < 1e-10, "projector idempotency " + fmt(idem));
        c.check(uv < 1e-10, "P from u vs P from v " + fmt(uv));
        c.check(c10 < 1e-9, "C10 residual " + fmt(c10));
        c.check(c11 < 1e-9, "C11 residual " + fmt(c11));
    }
}

void criterion_6_vector_projector() {
    Criterion c(6, "spin-1 projector equals eta^{mu nu} + n^mu n^nu, 100 random n, 1e-10");
    const auto& rep = LorentzRepresentation::get(RepKind::vector);
    HaarSampler rng(3);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const UnitTimelike n =
            UnitTimelike::from_spatial(rng.gaussian(), rng.gaussian(), rng.gaussian());
        const auto f = build_spin_frame(rep, n);
        Eigen::MatrixXcd expect = minkowski_metric().cast<cplx>();
        for (int mu = 0; mu < 4; ++mu)
            for (int nu = 0; nu < 4; ++nu)
                expect(mu, nu) += n.vector()[mu] * n.vector()[nu];
        worst = std::max(worst, (f.u * f.u.adjoint() - expect).cwiseAbs().maxCoeff());
    }
    c.check(worst < 1e-10, "worst polarization-sum deviation " + fmt(worst));
}

void criterion_7_propagator_decomposition() {
    Criterion c(7, "propagator = theta(t) Delta+ + theta(-t) Delta-, scalar + Dirac, 1e-3");
    const double m = 1.0;
    const auto& dirac = LorentzRepresentation::get(RepKind::dirac_spinor);
    double worst_scalar = 0.0, worst_dirac = 0.0;
    const double r = 0.4;
    for (const double t : {1.2, 1.6, 2.0, 2.6, 3.2}) {
        for (const int sgn : {+1, -1}) {
            const FourVector dx{sgn * t, r, 0.12, -0.2};
            const cplx scalar_full = feynman_propagator_position(dx, m, 1e-3);
            const cplx scalar_onshell = onshell_kernel(dx, m, sgn);
            worst_scalar = std::max(worst_scalar, std::abs(scalar_full - scalar_onshell));
            const auto dirac_full = nonscalar_propagator(dirac, dx, m, 1e-3);
            const auto dirac_onshell = onshell_matrix_kernel(dirac, dx, m, sgn);
            worst_dirac =
                std::max(worst_dirac, (dirac_full - dirac_onshell).cwiseAbs().maxCoeff());
        }
    }
    c.check(worst_scalar < 1e-3, "scalar decomposition residual " + fmt(worst_scalar));
    c.check(worst_dirac < 1e-3, "Dirac decomposition residual " + fmt(worst_dirac));
}

void criterion_8_position_operator() {
    Criterion c(8, "translated position operator returns the eigenvalue, 1e-5");
    const double m = 1.0;
    const ThreeMomentum p{0.4, -0.3, 0.25};
    const FourVector x{0.7, 0.3, -0.2, 0.5};
    double worst_plane = 0.0, worst_nw = 0.0;
    for (const int sign : {+1, -1}) {
        for (int comp = 0; comp < 3; ++comp) {
            const auto plane =
                apply_position_op_plane_wave(p, x, m, sign, SpinLabel{1}, comp, 1e-4);
            const auto plane_expect =
                x[comp + 1] * plane_wave_amplitude(p, x, m, sign, SpinLabel{1});
            worst_plane =
                std::max(worst_plane, (plane - plane_expect).cwiseAbs().maxCoeff());
            for (const RepKind kind :
                 {RepKind::scalar, RepKind::dirac_spinor, RepKind::vector}) {
                const auto& rep = LorentzRepresentation::get(kind);
                const auto frame =
                    build_spin_frame(rep, UnitTimelike::on_shell(p, m, sign));
                const auto phi = newton_wigner_wavefunction(p, x, m, sign, rep);
                const auto applied =
                    apply_position_op_newton_wigner(p, x, m, sign, rep, comp, 1e-4);
                const auto resid = (applied - x[comp + 1] * phi) * frame.projector;
                worst_nw = std::max(worst_nw, resid.cwiseAbs().maxCoeff());
            }
        }
    }
    c.check(worst_plane < 1e-5, "plane-wave residual " + fmt(worst_plane));
    c.check(worst_nw < 1e-5, "Newton-Wigner residual " + fmt(worst_nw));
}

void criterion_9_fock_oracle() {
    Criterion c(9, "multiparticle inner product matches brute force, N <= 4, mixed stats");
    const auto boson = ParticleSpec::make(0, RepKind::scalar, 1.0, Statistics::boson);
    const auto boson2 = ParticleSpec::make(1, RepKind::scalar, 1.4, Statistics::boson);
    const auto fermion =
        ParticleSpec::make(2, RepKind::dirac_spinor, 1.0, Statistics::fermion);
    const std::vector<ParticleSpec> zoo{fermion, boson, fermion, boson2};
    const auto bra_pos = [](int i) {
        return FourVector{2.2 + 0.2 * i, 0.1 * i, -0.2 + 0.1 * i, 0.15 * i};
    };
    const auto ket_pos = [](int i) {
        return FourVector{0.1 * i, 0.2 - 0.1 * i, 0.1 * i, -0.05 * i};
    };
    double worst = 0.0;
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<ParticleLeg> bras, kets;
        for (std::size_t i = 0; i < n; ++i) {
            bras.push_back({bra_pos(int(i)), zoo[i], int(i) % zoo[i].representation().dim});
            kets.push_back(
                {ket_pos(int(i)), zoo[i], int(i + 1) % zoo[i].representation().dim});
        }
        const auto bra = MultiParticleLabel::make(bras);
        const auto ket = MultiParticleLabel::make(kets);
        const auto got = multiparticle_inner_product(bra, ket);
        const cplx ref = oracles::brute_force_inner_product(bra, ket, 1e-3);
        worst = std::max(worst, std::abs(got.value - ref));
        c.check(!got.type_mismatch, "unexpected type mismatch");
    }
    c.check(worst == 0.0, "oracle mismatch " + fmt(worst));

    // antisymmetry flip for identical fermions
    const auto bra = MultiParticleLabel::make(
        {{bra_pos(0), fermion, 0}, {bra_pos(1), fermion, 1}});
    const auto bra_sw = MultiParticleLabel::make({bra.legs[1], bra.legs[0]});
    const auto ket = MultiParticleLabel::make(
        {{ket_pos(0), fermion, 2}, {ket_pos(1), fermion, 3}});
    const cplx a = multiparticle_inner_product(bra, ket).value;
    const cplx b = multiparticle_inner_product(bra_sw, ket).value;
    c.check(a == -b, "fermion exchange sign not exact");
}

void criterion_10_cli_determinism(const std::string& cli) {
    Criterion c(10, "CLI reruns with identical config and seed are byte-identical");
    const std::string out1 = "acceptance_run1.csv", out2 = "acceptance_run2.csv";
    const std::string base = cli + " characters --ell-max 4 --seed 7 --format csv --out ";
    const int rc1 = std::system((base + out1).c_str());
    const int rc2 = std::system((base + out2).c_str());
    c.check(rc1 == 0 && rc2 == 0, "CLI exited nonzero");
    std::ifstream f1(out1, std::ios::binary), f2(out2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    c.check(f1 && f2 && !s1.str().empty(), "missing CLI output");
    c.check(s1.str() == s2.str(), "outputs differ between reruns");
    std::remove(out1.c_str());
    std::remove(out2.c_str());

    const int rc_bad = std::system((cli + " no-such-command > /dev/null 2>&1").c_str());
    c.check(WIFEXITED(rc_bad) && WEXITSTATUS(rc_bad) == 2,
            "usage error did not exit with code 2");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "./spath";
    criterion_1_character_orthonormality();
    criterion_2_kernel_semigroup_and_mass_shift();
    criterion_3_so4_factorization();
    criterion_4_lambda_integration();
    criterion_5_spin_frame_identities();
    criterion_6_vector_projector();
    criterion_7_propagator_decomposition();
    criterion_8_position_operator();
    criterion_9_fock_oracle();
    criterion_10_cli_determinism(cli);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
