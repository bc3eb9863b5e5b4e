#include "spath/numerics.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace spath {

GaussLegendre::GaussLegendre(int n) {
    if (n < 1) throw std::invalid_argument("GaussLegendre: n must be >= 1");
    nodes.resize(n);
    weights.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        // Chebyshev-based initial guess, then Newton on P_n.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
    if (n % 2 == 1) nodes[n / 2] = 0.0;
}

const GaussLegendre& gauss_legendre(int n) {
    static std::map<int, std::unique_ptr<GaussLegendre>> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<GaussLegendre>(n);
    return *slot;
}

namespace {

cplx adaptive_step(const std::function<cplx(double)>& f, double a, double b, cplx fa,
                   cplx fb, cplx fm, cplx whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const cplx fl = f(0.5 * (a + m));
    const cplx fr = f(0.5 * (m + b));
    const cplx left = (m - a) / 6.0 * (fa + 4.0 * fl + fm);
    const cplx right = (b - m) / 6.0 * (fm + 4.0 * fr + fb);
    const cplx delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return adaptive_step(f, a, m, fa, fm, fl, left, 0.5 * tol, depth - 1) +
           adaptive_step(f, m, b, fm, fb, fr, right, 0.5 * tol, depth - 1);
}

}  // namespace

cplx adaptive_simpson(const std::function<cplx(double)>& f, double a, double b, double tol,
                      int max_depth) {
    const cplx fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const cplx whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_step(f, a, b, fa, fb, fm, whole, tol, max_depth);
}

}  // namespace spath
