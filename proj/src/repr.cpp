#include "spath/repr.hpp"

#include <cassert>
#include <map>
#include <mutex>

namespace spath {

namespace {

// Normalization factors sqrt((j+m')!(j-m')!) for the weighted monomial basis,
// per twice_ell; built once and shared read-only.
const std::vector<double>& basis_norms(int twice_ell) {
    static std::map<int, std::vector<double>> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto it = cache.find(twice_ell);
    if (it != cache.end()) return it->second;
    std::vector<double> norms(twice_ell + 1);
    for (int s = 0; s <= twice_ell; ++s)
        norms[s] = std::exp(0.5 * (std::lgamma(s + 1.0) + std::lgamma(twice_ell - s + 1.0)));
    return cache.emplace(twice_ell, std::move(norms)).first->second;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= double(n - k + i) / double(i);
    return r;
}

}  // namespace

WignerDMatrix wigner_d(SpinLabel ell, const SU2Element& u) {
    const int n = ell.twice_ell;
    const int dim = n + 1;
    const Matrix2c m = u.matrix();
    const cplx a = m(0, 0), b = m(0, 1), c = m(1, 0), d = m(1, 1);
    const auto& norms = basis_norms(n);

    Eigen::MatrixXcd D(dim, dim);
    std::vector<cplx> coeff(dim);
    std::vector<cplx> apow(dim + 1), bpow(dim + 1), cpow(dim + 1), dpow(dim + 1);
    apow[0] = bpow[0] = cpow[0] = dpow[0] = 1.0;
    for (int i = 1; i <= dim; ++i) {
        apow[i] = apow[i - 1] * a;
        bpow[i] = bpow[i - 1] * b;
        cpow[i] = cpow[i - 1] * c;
        dpow[i] = dpow[i - 1] * d;
    }

    // column for weight m: expand (a z1 + c z2)^(j+m) (b z1 + d z2)^(j-m)
    for (int col = 0; col < dim; ++col) {
        const int p = n - col;  // j + m
        const int q = col;      // j - m
        std::fill(coeff.begin(), coeff.end(), cplx(0.0));
        for (int k = 0; k <= p; ++k) {
            const cplx t1 = binom(p, k) * apow[k] * cpow[p - k];
            for (int l = 0; l <= q; ++l)
                coeff[k + l] += t1 * binom(q, l) * bpow[l] * dpow[q - l];
        }
        for (int row = 0; row < dim; ++row) {
            const int s = n - row;  // j + m'
            D(row, col) = coeff[s] * (norms[s] / norms[p]);
        }
    }
    return {ell, std::move(D)};
}

double character(SpinLabel ell, const SU2Element& u) {
    const cplx tr = wigner_d(ell, u).matrix.trace();
    assert(std::abs(tr.imag()) < 1e-12);
    return tr.real();
}

double character_class(SpinLabel ell, double theta) {
    // Chebyshev U_n(cos(theta/2)), n = 2l
    const double c = std::cos(0.5 * theta);
    double u0 = 1.0, u1 = 2.0 * c;
    if (ell.twice_ell == 0) return u0;
    for (int k = 2; k <= ell.twice_ell; ++k) {
        const double u2 = 2.0 * c * u1 - u0;
        u0 = u1;
        u1 = u2;
    }
    return u1;
}

double character_product(const RepLabel& rep, const SO4Element& g) {
    return character(rep.ell_a, g.left) * character(rep.ell_b, g.right);
}

double character_orthonormality(SpinLabel l1, SpinLabel l2, int n_nodes) {
    return haar_class_quadrature(
        [&](double th) { return character_class(l1, th) * character_class(l2, th); },
        n_nodes);
}

double matrix_orthogonality_check(SpinLabel ell, long n_mc, std::uint64_t seed) {
    const int dim = ell.dimension();
    const int d2 = dim * dim;
    HaarSampler sampler(seed);

    Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(d2, d2);
    constexpr long kBatch = 256;
    Eigen::MatrixXcd batch(d2, kBatch);
    long done = 0;
    while (done < n_mc) {
        const long nb = std::min(kBatch, n_mc - done);
        for (long k = 0; k < nb; ++k) {
            const auto D = wigner_d(ell, sampler.sample());
            batch.col(k) = Eigen::Map<const Eigen::VectorXcd>(D.matrix.data(), d2);
        }
        acc.noalias() += batch.leftCols(nb) * batch.leftCols(nb).adjoint();
        done += nb;
    }
    acc /= double(n_mc);

    // target: E[D_ij conj(D_kl)] = delta_ik delta_jl / (2l+1)
    double worst = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k)
                for (int l = 0; l < dim; ++l) {
                    // column-major vec index of (row, col)
                    const int rij = i + dim * j;
                    const int rkl = k + dim * l;
                    const cplx target = (i == k && j == l) ? cplx(1.0 / dim) : cplx(0.0);
                    worst = std::max(worst, std::abs(acc(rij, rkl) - target));
                }
    return worst;
}

double character_reproduction_residual(SpinLabel ell, double theta, int n_nodes) {
    const auto chi = [&](double th) { return cplx(character_class(ell, th)); };
    const cplx conv = haar_class_convolution(chi, chi, theta, n_nodes);
    return std::abs(conv - character_class(ell, theta) / double(ell.dimension()));
}

}  // namespace spath
