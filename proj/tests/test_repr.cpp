#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <algorithm>

#include "spath/repr.hpp"

using namespace spath;

TEST_CASE("wigner d special cases") {
    HaarSampler rng(17);
    const SU2Element u = rng.sample();

    // scalar representation
    CHECK(wigner_d(SpinLabel{0}, u).matrix(0, 0) == cplx(1.0));

    // defining representation
    CHECK((wigner_d(SpinLabel{1}, u).matrix - u.matrix()).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("wigner d spin-1 eigenphases") {
    const double theta = 0.8;
    const auto d = wigner_d(SpinLabel{2}, su2_exp({{theta, 0.0, 0.0}}));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(d.matrix);
    std::vector<double> phases;
    for (int i = 0; i < 3; ++i) phases.push_back(std::arg(es.eigenvalues()(i)));
    std::sort(phases.begin(), phases.end());
    CHECK(phases[0] == doctest::Approx(-theta).epsilon(1e-10));
    CHECK(phases[1] == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(phases[2] == doctest::Approx(theta).epsilon(1e-10));
}

TEST_CASE("wigner d homomorphism and unitarity") {
    HaarSampler rng(19);
    for (const int l2 : {1, 2, 3, 4}) {
        const SpinLabel ell{l2};
        for (int i = 0; i < 25; ++i) {
            const SU2Element a = rng.sample(), b = rng.sample();
            const auto dab = wigner_d(ell, a * b).matrix;
            const auto da = wigner_d(ell, a).matrix;
            const auto db = wigner_d(ell, b).matrix;
            CHECK((dab - da * db).cwiseAbs().maxCoeff() < 1e-10);
            CHECK((da.adjoint() * da -
                   Eigen::MatrixXcd::Identity(ell.dimension(), ell.dimension()))
                      .cwiseAbs()
                      .maxCoeff() < 1e-10);
        }
    }
}

TEST_CASE("characters") {
    HaarSampler rng(23);
    const SU2Element u = rng.sample();
    CHECK(character(SpinLabel{0}, u) == doctest::Approx(1.0));
    CHECK(character(SpinLabel{1}, SU2Element::identity()) == doctest::Approx(2.0));

    // closed form sin((2l+1)t/2)/sin(t/2) against the matrix trace
    for (const int l2 : {1, 2, 3, 5, 8}) {
        const double theta = su2_class_angle(u);
        CHECK(character(SpinLabel{l2}, u) ==
              doctest::Approx(character_class(SpinLabel{l2}, theta)).epsilon(1e-10));
    }
}

TEST_CASE("characters are class functions, real, bounded") {
    HaarSampler rng(29);
    for (int i = 0; i < 50; ++i) {
        const SU2Element u = rng.sample(), v = rng.sample();
        for (const int l2 : {1, 2, 3}) {
            const SpinLabel ell{l2};
            const double chi = character(ell, u);
            CHECK(std::abs(character(ell, v * u * v.inverse()) - chi) < 1e-12);
            CHECK(std::abs(character(ell, u.inverse()) - chi) < 1e-12);
            CHECK(std::abs(chi) <= ell.dimension() + 1e-12);
        }
    }
    CHECK(std::abs(character(SpinLabel{2}, SU2Element::identity())) == doctest::Approx(3.0));
}

TEST_CASE("character products on SO(4)") {
    HaarSampler rng(31);
    const SO4Element g{rng.sample(), rng.sample()};
    CHECK(character_product({SpinLabel{0}, SpinLabel{0}}, g) == doctest::Approx(1.0));
    CHECK(character_product({SpinLabel{1}, SpinLabel{1}},
                            {SU2Element::identity(), SU2Element::identity()}) ==
          doctest::Approx(4.0));
    CHECK(character_product({SpinLabel{1}, SpinLabel{0}},
                            {su2_exp({{M_PI, 0.0, 0.0}}), SU2Element::identity()}) ==
          doctest::Approx(2.0 * std::cos(0.5 * M_PI)).epsilon(1e-12));
}

TEST_CASE("character orthonormality by quadrature") {
    CHECK(character_orthonormality(SpinLabel{0}, SpinLabel{0}, 64) == doctest::Approx(1.0));
    CHECK(std::abs(character_orthonormality(SpinLabel{1}, SpinLabel{1}, 64) - 1.0) < 1e-10);
    CHECK(std::abs(character_orthonormality(SpinLabel{1}, SpinLabel{2}, 64)) < 1e-10);
}

TEST_CASE("schur matrix orthogonality, Monte Carlo") {
    CHECK(matrix_orthogonality_check(SpinLabel{0}, 100, 0) < 1e-14);
    CHECK(matrix_orthogonality_check(SpinLabel{1}, 1000000, 0) < 5e-3);
    CHECK(matrix_orthogonality_check(SpinLabel{2}, 1000000, 0) < 5e-3);
}

TEST_CASE("character reproduction under convolution") {
    for (const int l2 : {0, 1, 2, 4}) {
        for (const double theta : {0.6, 2.1, 3.9})
            CHECK(character_reproduction_residual(SpinLabel{l2}, theta, 64) < 1e-8);
    }
}
