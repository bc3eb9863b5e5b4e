#include <doctest.h>

#include "oracles.hpp"
#include "spath/kernels.hpp"
#include "spath/spin.hpp"

using namespace spath;

namespace {
constexpr cplx kI{0.0, 1.0};
}

TEST_CASE("scalar kernel closed form") {
    const KernelParams params{1.0, 1.0, 1e-3, SpinLabel{16}};

    // m enters only through the phase e^{-i lambda m^2}
    const FourVector zero{0, 0, 0, 0};
    KernelParams heavier = params;
    heavier.mass = 2.7;
    const cplx a = scalar_kernel(zero, params) * std::exp(kI * params.lambda * 1.0);
    const cplx b =
        scalar_kernel(zero, heavier) * std::exp(kI * params.lambda * heavier.mass *
                                                heavier.mass);
    CHECK(std::abs(a - b) < 1e-15);

    // momentum-space semigroup: phases factorize exactly
    const FourVector p{0.8, 0.3, -0.2, 1.1};
    const double c = minkowski_dot(p, p) + params.mass * params.mass;
    const cplx f1 = std::exp(-kI * 0.4 * c), f2 = std::exp(-kI * 0.9 * c);
    CHECK(std::abs(f1 * f2 - std::exp(-kI * 1.3 * c)) < 1e-15);

    CHECK_THROWS_AS(scalar_kernel(zero, KernelParams{1.0, -1.0, 1e-3, SpinLabel{16}}),
                    std::invalid_argument);
}

TEST_CASE("scalar kernel against the damped momentum quadrature oracle") {
    const KernelParams params{1.0, 1.0, 1e-3, SpinLabel{16}};
    const FourVector dx{1, 0, 0, 0};
    const cplx closed = scalar_kernel(dx, params);
    const cplx quad = oracles::gaussian_damped_scalar_kernel(dx, params.lambda, params.mass);
    CHECK(std::abs(closed - quad) < 1e-4);
}

TEST_CASE("momentum propagator") {
    // on-shell pole regularization: |Delta| = 1/eps
    const double m = 1.0;
    const FourVector onshell{m, 0, 0, 0};  // p.p = -m^2
    CHECK(std::abs(feynman_propagator_momentum(onshell, m, 1e-3)) ==
          doctest::Approx(1000.0).epsilon(1e-12));

    CHECK(std::abs(feynman_propagator_momentum({0, 0, 0, 0}, 1.0, 1e-9) - cplx(0, -1)) <
          1e-8);
}

TEST_CASE("momentum propagator equals the integrated kernel path length") {
    const double eps = 0.01;
    const double lambda_max = 1e3 / eps;
    HaarSampler rng(37);
    for (int i = 0; i < 5; ++i) {
        const FourVector p{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const cplx closed = feynman_propagator_momentum(p, 1.0, eps);
        const cplx quad = oracles::lambda_integrated_propagator(p, 1.0, eps, lambda_max);
        CHECK(std::abs(closed - quad) < 1e-6);
    }
    // the spec's named sample point
    const cplx closed = feynman_propagator_momentum({1, 2, 0, 0}, 1.0, eps);
    const cplx quad = oracles::lambda_integrated_propagator({1, 2, 0, 0}, 1.0, eps,
                                                            lambda_max);
    CHECK(std::abs(closed - quad) < 1e-6);
}

TEST_CASE("position propagator: spacelike decay and invariance") {
    const double m = 1.0;
    double prev = std::numeric_limits<double>::infinity();
    for (const double r : {2.0, 3.0, 4.0}) {
        const double mag = std::abs(feynman_propagator_position({0.3, r, 0, 0}, m, 1e-3));
        CHECK(mag < prev);
        prev = mag;
        // radial-quadrature oracle
        const cplx quad = oracles::radial_position_propagator({0.3, r, 0, 0}, m);
        CHECK(std::abs(feynman_propagator_position({0.3, r, 0, 0}, m, 1e-3) - quad) < 1e-5);
    }

    // Lorentz invariance: same invariant separation, same value
    const FourVector x{2.0, 0.5, 0.3, -0.2};
    const LorentzMatrix lam = boost_matrix(0.55, {0.3, -0.8, 0.5});
    const cplx v1 = feynman_propagator_position(x, m, 1e-3);
    const cplx v2 = feynman_propagator_position(apply(lam, x), m, 1e-3);
    CHECK(std::abs(v1 - v2) < 1e-6);

    CHECK_THROWS_AS(feynman_propagator_position({1.0, 1.0, 0, 0}, m, 1e-3),
                    std::domain_error);
}

TEST_CASE("position propagator against the 2D momentum oracle") {
    const double m = 1.0;
    const FourVector timelike{2.0, 0.5, 0.3, -0.2};
    const cplx o1 = oracles::momentum_2d_position_propagator(timelike, m);
    CHECK(std::abs(o1 - feynman_propagator_position(timelike, m, 1e-3)) /
              std::abs(o1) < 1e-4);

    const FourVector spacelike{0.3, 2.0, -0.6, 0.5};
    const cplx o2 = oracles::momentum_2d_position_propagator(spacelike, m);
    CHECK(std::abs(o2 - feynman_propagator_position(spacelike, m, 1e-3)) /
              std::abs(o2) < 1e-4);
}

TEST_CASE("su2 kernel eigenvalues and normalization") {
    CHECK(mass_shift_sq(SpinLabel{1}) == doctest::Approx(0.75));
    CHECK(mass_shift_sq(SpinLabel{2}) == doctest::Approx(2.0));

    // lambda = 0 partial sums at the identity: sum (2l+1)^2, growing as L^3
    const auto partial = [](int l2max) {
        double s = 0.0;
        for (int l2 = 0; l2 <= l2max; ++l2) s += double(l2 + 1) * double(l2 + 1);
        return s;
    };
    CHECK(su2_kernel(SU2Element::identity(), 0.0, SpinLabel{8}).real() ==
          doctest::Approx(partial(8)).epsilon(1e-12));
    CHECK(partial(32) / partial(16) > 6.0);  // cubic growth

    // Euclidean regularization: total Haar measure of the kernel is 1
    const cplx lam(0.0, -0.7);
    const cplx total = haar_class_quadrature_c(
        [&](double th) { return su2_kernel_class(th, lam, SpinLabel{16}); }, 96);
    CHECK(std::abs(total - 1.0) < 1e-10);
}

TEST_CASE("euclidean su2 kernel semigroup under Haar convolution") {
    const SpinLabel lmax{16};  // ell_max = 8
    const cplx half(0.0, -0.3);
    const cplx full(0.0, -0.6);
    for (const double theta : {0.9, 2.2, 4.8}) {
        const cplx conv = haar_class_convolution(
            [&](double th) { return su2_kernel_class(th, half, lmax); },
            [&](double th) { return su2_kernel_class(th, half, lmax); }, theta, 64);
        CHECK(std::abs(conv - su2_kernel_class(theta, full, lmax)) < 1e-8);
    }
}

TEST_CASE("euclidean su2 kernel long-time limit") {
    // tau -> infinity leaves only the l = 0 mode; deviation < e^{-3 tau / 4} scale
    for (const double tau : {6.0, 10.0}) {
        const cplx lam(0.0, -tau);
        for (const double theta : {0.5, 2.0, 3.5}) {
            const double dev = std::abs(su2_kernel_class(theta, lam, SpinLabel{16}) - 1.0);
            CHECK(dev < 4.0 * std::exp(-0.75 * tau));
        }
    }
}

TEST_CASE("su2 kernel truncation tail bound") {
    const double tau = 0.5;
    for (const double theta : {0.7, 2.5}) {
        const cplx lam(0.0, -tau);
        const cplx lo = su2_kernel_class(theta, lam, SpinLabel{16});
        const cplx hi = su2_kernel_class(theta, lam, SpinLabel{40});
        CHECK(std::abs(hi - lo) <= su2_kernel_tail_bound(tau, SpinLabel{16}) + 1e-15);
    }
    CHECK(su2_kernel_tail_bound(0.5, SpinLabel{16}) < 1e-10);
}

TEST_CASE("so4 kernel factorization and normalization") {
    HaarSampler rng(41);
    const cplx lam(0.0, -0.5);
    for (int i = 0; i < 20; ++i) {
        const SO4Element dg{rng.sample(), rng.sample()};
        const cplx whole = so4_kernel(dg, lam, SpinLabel{12});
        const cplx split = su2_kernel(dg.left, lam, SpinLabel{12}) *
                           su2_kernel(dg.right, lam, SpinLabel{12});
        CHECK(std::abs(whole - split) < 1e-12 * std::max(1.0, std::abs(whole)));
    }

    // identity point, tau = 1: the double sum converges with a tiny tail
    const cplx at_identity = so4_kernel({SU2Element::identity(), SU2Element::identity()},
                                        cplx(0.0, -1.0), SpinLabel{16});
    double direct = 0.0;
    for (int a2 = 0; a2 <= 16; ++a2)
        for (int b2 = 0; b2 <= 16; ++b2) {
            const double da = a2 + 1, db = b2 + 1;
            direct += da * da * db * db *
                      std::exp(-(0.25 * a2 * (a2 + 2) + 0.25 * b2 * (b2 + 2)));
        }
    CHECK(at_identity.real() == doctest::Approx(direct).epsilon(1e-12));
    const double tail = su2_kernel_tail_bound(1.0, SpinLabel{16});
    CHECK(tail * (direct + tail) < 1e-10);  // double-sum tail estimate

    // Haar average over dg keeps only (0,0)
    const cplx avg = haar_class_quadrature_c(
        [&](double tha) {
            return haar_class_quadrature_c(
                [&](double thb) {
                    cplx acc = 0.0;
                    for (int a2 = 0; a2 <= 12; ++a2)
                        for (int b2 = 0; b2 <= 12; ++b2)
                            acc += std::exp(-cplx(0, 1) * lam *
                                            (mass_shift_sq(SpinLabel{a2}) +
                                             mass_shift_sq(SpinLabel{b2}))) *
                                   double((a2 + 1) * (b2 + 1)) *
                                   character_class(SpinLabel{a2}, tha) *
                                   character_class(SpinLabel{b2}, thb);
                    return acc;
                },
                64);
        },
        64);
    CHECK(std::abs(avg - 1.0) < 1e-9);
}

TEST_CASE("kernel to propagator: lambda integration per momentum") {
    // int_0^inf dl (momentum integrand of the kernel) = momentum propagator
    const double eps = 0.01;
    HaarSampler rng(43);
    for (int i = 0; i < 3; ++i) {
        const FourVector p{rng.gaussian(), rng.gaussian(), rng.gaussian(), rng.gaussian()};
        const cplx lhs = oracles::lambda_integrated_propagator(p, 1.0, eps, 1e3 / eps);
        const cplx kernel_integrand_integral =
            -kI / cplx(minkowski_dot(p, p) + 1.0, -eps);
        CHECK(std::abs(lhs - kernel_integrand_integral) < 1e-6);
    }
}

TEST_CASE("shifted mass") {
    CHECK(shifted_mass(1.0, {SpinLabel{0}, SpinLabel{0}}) == doctest::Approx(1.0));
    CHECK(shifted_mass(1.0, {SpinLabel{1}, SpinLabel{1}}) ==
          doctest::Approx(std::sqrt(2.5)));
    CHECK(shifted_mass(2.0, {SpinLabel{1}, SpinLabel{0}}) ==
          doctest::Approx(std::sqrt(5.5)));
}

TEST_CASE("group propagator matrices are identities") {
    CHECK(group_propagator_matrix({SpinLabel{0}, SpinLabel{0}}).rows() == 1);
    CHECK(group_propagator_matrix({SpinLabel{0}, SpinLabel{0}})(0, 0) == cplx(1.0));

    // (1/2, 0) + (0, 1/2) direct sum: dimension 4
    const auto dirac = group_propagator_matrix(4);
    CHECK(dirac.rows() == 4);
    CHECK((dirac - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);

    const auto vec = group_propagator_matrix({SpinLabel{1}, SpinLabel{1}});
    CHECK(vec.rows() == 4);
    CHECK((vec - Eigen::MatrixXcd::Identity(4, 4)).cwiseAbs().maxCoeff() == 0.0);
}
