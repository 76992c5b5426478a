// support.hpp — random inputs and independent reference computations shared by the tests

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "entgen/entgen.hpp"

namespace entgen::testing {

using qlin::CMat;
using qlin::Ket2;

inline CMat random_complex(std::mt19937_64& eng, std::size_t r, std::size_t c) {
    std::normal_distribution<double> n01;
    CMat m(r, c);
    for (auto& v : m.data()) v = cplx(n01(eng), n01(eng));
    return m;
}

inline CMat random_hermitian(std::mt19937_64& eng, std::size_t n) {
    const CMat a = random_complex(eng, n, n);
    return 0.5 * (a + a.adjoint());
}

inline CMat random_gram(std::mt19937_64& eng, std::size_t n, std::size_t rank) {
    const CMat c = random_complex(eng, rank, n);
    return c.adjoint() * c;
}

inline Ket2 random_ket(std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    Ket2 k{cplx(n01(eng), n01(eng)), cplx(n01(eng), n01(eng))};
    const double norm = std::sqrt(std::norm(k[0]) + std::norm(k[1]));
    return {k[0] / norm, k[1] / norm};
}

inline CMat random_density2(std::mt19937_64& eng) {
    const CMat g = random_gram(eng, 2, 2);
    return (1.0 / g.trace().real()) * g;
}

/// Convex mixture of random product states.
inline CMat random_separable(std::mt19937_64& eng, int terms = 3) {
    CMat rho(4, 4);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    double total = 0.0;
    for (int i = 0; i < terms; ++i) {
        const double w = u(eng);
        rho += w * qlin::kron(random_density2(eng), random_density2(eng));
        total += w;
    }
    return (1.0 / total) * rho;
}

// ---------------------------------------------------------------------------
// Eigenvalues from det(M - λI): Gaussian elimination with partial pivoting for the
// determinant, sign changes on a fine grid over the Gershgorin interval, then bisection.
// Shares no code with the Jacobi solver.
// ---------------------------------------------------------------------------

inline double char_poly(const CMat& m, double lambda) {
    const std::size_t n = m.rows();
    std::vector<cplx> a(m.data());
    for (std::size_t i = 0; i < n; ++i) a[i * n + i] -= lambda;
    cplx det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r * n + col]) > std::abs(a[piv * n + col])) piv = r;
        if (a[piv * n + col] == cplx(0.0)) return 0.0;
        if (piv != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(a[piv * n + c], a[col * n + c]);
            det = -det;
        }
        det *= a[col * n + col];
        for (std::size_t r = col + 1; r < n; ++r) {
            const cplx f = a[r * n + col] / a[col * n + col];
            for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
        }
    }
    return det.real();
}

inline std::vector<double> eigvals_by_roots(const CMat& m, std::size_t grid = 40000) {
    const std::size_t n = m.rows();
    double radius = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        for (std::size_t j = 0; j < n; ++j)
            if (j != i) r += std::abs(m(i, j));
        radius = std::max(radius, std::abs(m(i, i).real()) + r);
    }
    const double lo = -radius - 1e-3, hi = radius + 1e-3;
    std::vector<double> roots;
    double x0 = lo, f0 = char_poly(m, lo);
    for (std::size_t g = 1; g <= grid; ++g) {
        const double x1 = lo + (hi - lo) * static_cast<double>(g) / static_cast<double>(grid);
        const double f1 = char_poly(m, x1);
        if ((f0 < 0) != (f1 < 0)) {
            double a = x0, b = x1, fa = f0;
            for (int it = 0; it < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
                const double mid = 0.5 * (a + b);
                const double fm = char_poly(m, mid);
                if ((fm < 0) == (fa < 0)) {
                    a = mid;
                    fa = fm;
                } else {
                    b = mid;
                }
            }
            roots.push_back(0.5 * (a + b));
        }
        x0 = x1;
        f0 = f1;
    }
    return roots;
}

/// Solves the small dense real system A x = b by Gaussian elimination.
inline std::vector<double> solve(std::vector<std::vector<double>> a, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[piv], a[c]);
        std::swap(b[piv], b[c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
            b[r] -= f * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t i = n; i-- > 0;) {
        double s = b[i];
        for (std::size_t k = i + 1; k < n; ++k) s -= a[i][k] * x[k];
        x[i] = s / a[i][i];
    }
    return x;
}

struct ThreeTermFit {
    double inv_eps;  // coefficient of 1/ε
    double constant;
    double linear;   // coefficient of ε
    double max_residual;
};

/// Least-squares fit of y(ε) = α/ε + β + γε via the normal equations.
inline ThreeTermFit fit_three_term(const std::vector<double>& eps, const std::vector<double>& y) {
    std::vector<std::vector<double>> ata(3, std::vector<double>(3, 0.0));
    std::vector<double> aty(3, 0.0);
    for (std::size_t i = 0; i < eps.size(); ++i) {
        // Rows scaled by ε keep the normal equations well conditioned across decades.
        const double row[3] = {1.0, eps[i], eps[i] * eps[i]};
        const double yi = y[i] * eps[i];
        for (int r = 0; r < 3; ++r) {
            for (int c = 0; c < 3; ++c) ata[r][c] += row[r] * row[c];
            aty[r] += row[r] * yi;
        }
    }
    const auto x = solve(ata, aty);
    double res = 0.0;
    for (std::size_t i = 0; i < eps.size(); ++i)
        res = std::max(res, std::abs(x[0] / eps[i] + x[1] + x[2] * eps[i] - y[i]));
    return {x[0], x[1], x[2], res};
}

/// Slope of log(y) against log(x) by ordinary least squares.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double n = static_cast<double>(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

inline std::string config_path(const std::string& name) { return std::string(ENTGEN_CONFIG_DIR) + "/" + name; }

inline double max_abs_diff(const CMat& a, const CMat& b) { return (a - b).max_abs(); }

} // namespace entgen::testing
