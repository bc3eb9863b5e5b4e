#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace spath {

using cplx = std::complex<double>;

/// Gauss-Legendre nodes and weights on [-1, 1].
/// Newton iteration on the Legendre recurrence; accurate to ~1e-15 for n <= 512.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(int n);

    /// Integrate f over [a, b].
    template <typename F>
    auto integrate(F&& f, double a, double b) const {
        using R = decltype(f(a));
        const double mid = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        R total{};
        for (std::size_t i = 0; i < nodes.size(); ++i)
            total += weights[i] * f(mid + half * nodes[i]);
        return R(half * total);
    }
};

/// Cached rule lookup (rules are immutable once built; safe to share across readers).
const GaussLegendre& gauss_legendre(int n);

/// Integrate f over [a, b] split into `panels` equal panels of an n-point rule.
template <typename F>
auto integrate_panels(F&& f, double a, double b, int panels, int n) {
    const auto& rule = gauss_legendre(n);
    using R = decltype(f(a));
    R total{};
    const double h = (b - a) / panels;
    for (int k = 0; k < panels; ++k)
        total += rule.integrate(f, a + k * h, a + (k + 1) * h);
    return total;
}

/// Adaptive Simpson quadrature for complex integrands.
/// Recurses until the local Richardson error estimate drops below tol.
cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b,
                      double tol, int max_depth = 48);

/// Damped evaluation of a conditionally convergent radial integral
/// int_0^inf f(p) dp: applies e^{-delta p} at the three given damping values
/// and Richardson-extrapolates delta -> 0 (error model c1 d + c2 d^2).
template <typename F>
auto damped_radial(F&& f, const std::array<double, 3>& deltas, double pmax, int panels,
                   int nodes) {
    using R = decltype(f(0.5));
    std::array<R, 3> vals{};
    for (int i = 0; i < 3; ++i) {
        const double d = deltas[i];
        vals[i] = integrate_panels([&](double p) { return R(f(p) * std::exp(-d * p)); },
                                   0.0, pmax, panels, nodes);
    }
    // deltas halve: two Richardson stages
    const R e1 = 2.0 * vals[1] - vals[0];
    const R e2 = 2.0 * vals[2] - vals[1];
    return R((4.0 * e2 - e1) / 3.0);
}

/// sin(x)/x with the removable singularity filled in.
inline double sinc(double x) {
    if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

}  // namespace spath
