// oracle.hpp — brute-force PPT certifier for short-time entanglement generation
//
// Evolves product pure states with the leading-order generator of the chosen regime,
// partially transposes and reports the most negative eigenvalue it can find. The generator
// is exponentiated rather than truncated: ρ + τ𝓛ρ is not the image of a positive map, and
// its partial transpose picks up spurious -O(τ²) eigenvalues even for models that cannot
// entangle. exp(τ𝓛) agrees with the truncation at leading order and is completely positive.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"
#include "entgen/criterion.hpp"
#include "entgen/dynamics.hpp"
#include "entgen/equal_time.hpp"
#include "entgen/nelder_mead.hpp"
#include "entgen/parallel.hpp"
#include "entgen/qlin.hpp"
#include "entgen/rng.hpp"

namespace entgen::oracle {

using coeffs::BlockCoeffMatrix;
using criterion::Regime;
using criterion::Verdict;
using qlin::CMat;
using qlin::Ket2;

/// n⁴ midpoint nodes over (θ₁, φ₁, θ₂, φ₂).
struct Grid {
    int n = 12;
};
/// n Haar-random product states; sample i depends only on (seed, i).
struct Random {
    std::size_t n = 1000;
    std::uint64_t seed = 0;
};
/// Coarse grid, then Nelder–Mead from the `refine` lowest grid-local minima and from
/// `random_starts` Haar-random product states (stream `seed`).
struct Hybrid {
    int grid_n = 12;
    int refine = 8;
    int random_starts = 0;
    std::uint64_t seed = 0x5eed;
};
using Sampling = std::variant<Grid, Random, Hybrid>;

struct OracleOptions {
    double dt = 0.0;  // 0 selects the regime default
    Sampling sampling = Hybrid{};
    double rel_tol = 1e-12;
    unsigned threads = 1;
};

struct OracleReport {
    double min_pt_eig = 0.0;
    Ket2 psi{}, phi{};
    double dt_used = 0.0;
    std::size_t n_samples = 0;
    Verdict verdict = Verdict::DoesNotGenerate;
    bool grid_refined = false;
    double threshold = 0.0;  // absolute: rel_tol · dt‖K‖ or rel_tol · dt²‖D‖
    Regime regime = Regime::Markovian;
};

// dt‖K‖ = 1e-3 (Markovian) or dt²‖D‖ = 1e-3 (non-Markovian). Larger steps let the positive
// next-order terms hide weakly entangling models; smaller ones approach rounding noise.
inline constexpr double kDefaultStepScale = 1e-3;

inline double default_dt(const BlockCoeffMatrix& k, Regime regime) {
    const double scale = std::max(coeffs::model_scale(k), 1e-300);
    return regime == Regime::Markovian ? kDefaultStepScale / scale : std::sqrt(kDefaultStepScale / scale);
}

namespace detail {

struct Sample {
    double value;  // lowest eigenvalue of the partial transpose
    double guide;  // sum of the two lowest; steers the local search
    Ket2 psi, phi;
    double err = 0.0;  // bound on |value - exact value|; zero for exact samples
};

inline CMat hermitized(CMat m) {
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j) {
            const cplx a = 0.5 * (m(i, j) + std::conj(m(j, i)));
            m(i, j) = a;
            m(j, i) = std::conj(a);
        }
    return m;
}

using Mat3 = std::array<cplx, 9>;
using Mat4 = std::array<cplx, 16>;

// Cyclic complex Jacobi on a 3×3 Hermitian matrix; eigenvalues ascending.
inline std::array<double, 3> eigvals3(Mat3 a) {
    double scale = 0.0;
    for (const auto& z : a) scale += std::norm(z);
    scale = std::max(std::sqrt(scale), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        const double off = std::norm(a[1]) + std::norm(a[2]) + std::norm(a[5]);
        if (std::sqrt(off) <= 1e-17 * scale) break;
        for (std::size_t p = 0; p < 3; ++p)
            for (std::size_t q = p + 1; q < 3; ++q) {
                const cplx apq = a[3 * p + q];
                const double mag = std::sqrt(std::norm(apq));
                if (mag <= 1e-300) continue;
                const cplx phase = apq * (1.0 / mag);
                const double theta = (a[4 * q].real() - a[4 * p].real()) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                const cplx uqp = -sn * std::conj(phase), uqq = c * std::conj(phase);
                for (std::size_t k = 0; k < 3; ++k) {
                    const cplx akp = a[3 * k + p], akq = a[3 * k + q];
                    a[3 * k + p] = akp * c + akq * uqp;
                    a[3 * k + q] = akp * sn + akq * uqq;
                }
                for (std::size_t k = 0; k < 3; ++k) {
                    const cplx apk = a[3 * p + k], aqk = a[3 * q + k];
                    a[3 * p + k] = c * apk + std::conj(uqp) * aqk;
                    a[3 * q + k] = sn * apk + std::conj(uqq) * aqk;
                }
                a[3 * p + q] = a[3 * q + p] = 0.0;
                a[4 * p] = a[4 * p].real();
                a[4 * q] = a[4 * q].real();
            }
    }
    std::array<double, 3> w{a[0].real(), a[4].real(), a[8].real()};
    std::sort(w.begin(), w.end());
    return w;
}

/// `incr` is the superoperator of ρ ↦ ρ(τ) - ρ. PT(ρ) = |ψφ̄⟩⟨ψφ̄| is diag(1,0,0,0) in the
/// product basis {ψφ̄, ψ⊥φ̄, ψφ̄⊥, ψ⊥φ̄⊥}; the three small eigenvalues of PT(ρ(τ)) are those of
/// the Schur complement on the last three basis vectors, which is formed from the increment
/// alone and so keeps an absolute accuracy proportional to τ instead of to 1.
///
/// The complement depends on the eigenvalue λ it is solved for. With `exact` false only the
/// λ = 0 solve is done; that value has the sign of the exact one and, by Weyl's inequality,
/// lies within B|λ| of it, B = ‖e‖²/(top (top - |λ|)). The bound is returned in `err`.
inline Sample evaluate(const CMat& incr, const Ket2& psi, const Ket2& phi, bool exact = true) {
    const std::array<cplx, 4> v{psi[0] * phi[0], psi[0] * phi[1], psi[1] * phi[0], psi[1] * phi[1]};
    Mat4 rho, d, pt;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) rho[4 * i + j] = v[i] * std::conj(v[j]);
    const cplx* s = incr.data().data();
    for (std::size_t r = 0; r < 16; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < 16; ++c) acc += s[16 * r + c] * rho[c];
        d[r] = acc;
    }
    // hermitian part, second qubit transposed
    double norm2 = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) {
                    const std::size_t a = 2 * i + l, b = 2 * k + j;
                    const cplx h = 0.5 * (d[4 * a + b] + std::conj(d[4 * b + a]));
                    pt[4 * (2 * i + j) + 2 * k + l] = h;
                    norm2 += std::norm(h);
                }

    if (norm2 > 0.01) {
        CMat full(4, 4);
        for (std::size_t i = 0; i < 16; ++i) full.data()[i] = pt[i];
        CMat pt0(4, 4);
        pt0.data().assign(rho.begin(), rho.end());
        const auto w = qlin::hermitian_eigvals(hermitized(qlin::partial_transpose(pt0) + full));
        return {w[0], w[0] + w[1], psi, phi};
    }

    const Ket2 psi_p{-std::conj(psi[1]), std::conj(psi[0])};
    const Ket2 phib{std::conj(phi[0]), std::conj(phi[1])};
    const Ket2 phib_p{-phi[1], phi[0]};
    const std::array<std::pair<const Ket2*, const Ket2*>, 4> cols{
        {{&psi, &phib}, {&psi_p, &phib}, {&psi, &phib_p}, {&psi_p, &phib_p}}};
    Mat4 u, m, e;
    for (std::size_t c = 0; c < 4; ++c) {
        const Ket2& a = *cols[c].first;
        const Ket2& b = *cols[c].second;
        u[c] = a[0] * b[0];
        u[4 + c] = a[0] * b[1];
        u[8 + c] = a[1] * b[0];
        u[12 + c] = a[1] * b[1];
    }
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            cplx acc = 0.0;
            for (std::size_t k = 0; k < 4; ++k) acc += pt[4 * r + k] * u[4 * k + c];
            m[4 * r + c] = acc;
        }
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t c = 0; c < 4; ++c) {
            cplx acc = 0.0;
            for (std::size_t r = 0; r < 4; ++r) acc += std::conj(u[4 * r + a]) * m[4 * r + c];
            e[4 * a + c] = acc;
        }
    for (std::size_t a = 0; a < 4; ++a)
        for (std::size_t c = a; c < 4; ++c) {
            const cplx h = 0.5 * (e[4 * a + c] + std::conj(e[4 * c + a]));
            e[4 * a + c] = h;
            e[4 * c + a] = std::conj(h);
        }
    const double top = 1.0 + e[0].real();
    double col2 = 0.0, lower2 = 0.0;
    for (std::size_t i = 1; i < 4; ++i) {
        col2 += std::norm(e[4 * i]);
        for (std::size_t j = 1; j < 4; ++j) lower2 += std::norm(e[4 * i + j]);
    }
    std::array<double, 3> w{};
    double lambda = 0.0;
    for (int it = 0; it < 4; ++it) {
        const double denom = top - lambda;
        Mat3 schur;
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j)
                schur[3 * i + j] = e[4 * (i + 1) + j + 1] - e[4 * (i + 1)] * std::conj(e[4 * (j + 1)]) / denom;
        w = eigvals3(schur);
        if (!exact && it == 0) {
            const double room = top - 2.0 * std::abs(w[0]);
            const double b = room > 0.0 ? col2 / (top * room) : 1.0;
            if (b < 0.5) {
                const double err = 2.0 * b * std::abs(w[0]) / (1.0 - b) + 1e-14 * (std::abs(w[0]) + std::sqrt(lower2));
                return {w[0], w[0] + w[1], psi, phi, err};
            }
        }
        if (w[0] == lambda) break;
        lambda = w[0];
    }
    return {w[0], w[0] + w[1], psi, phi};
}

/// Exact minimum over bounded samples: re-evaluates each sample whose error bar reaches the
/// lowest upper bound. Ties go to the earliest sample.
inline Sample exact_min(const CMat& incr, const std::vector<Sample>& samples) {
    double cap = std::numeric_limits<double>::infinity();
    for (const auto& s : samples) cap = std::min(cap, s.value + s.err);
    Sample best{std::numeric_limits<double>::infinity(), 0.0, {}, {}};
    for (const auto& s : samples) {
        if (s.value - s.err > cap) continue;
        const Sample x = s.err == 0.0 ? s : evaluate(incr, s.psi, s.phi);
        if (x.value < best.value) best = x;
    }
    return best;
}

inline double min_pt_eig(const CMat& incr, const Ket2& psi, const Ket2& phi) {
    return evaluate(incr, psi, phi).value;
}

inline Sample at_angles(const CMat& incr, const double* x, bool exact = true) {
    return evaluate(incr, qlin::bloch_ket(x[0], x[1]), qlin::bloch_ket(x[2], x[3]), exact);
}

inline Ket2 haar_ket(std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    Ket2 k{cplx(n01(eng), n01(eng)), cplx(n01(eng), n01(eng))};
    const double nrm = std::sqrt(std::norm(k[0]) + std::norm(k[1]));
    return {k[0] / nrm, k[1] / nrm};
}

inline std::array<double, 4> grid_node(std::size_t idx, std::size_t n) {
    constexpr double pi = std::numbers::pi;
    const std::size_t i3 = idx % n, i2 = (idx / n) % n, i1 = (idx / (n * n)) % n, i0 = idx / (n * n * n);
    auto node = [&](std::size_t i, double span) { return (static_cast<double>(i) + 0.5) * span / static_cast<double>(n); };
    return {node(i0, pi), node(i1, 2 * pi), node(i2, pi), node(i3, 2 * pi)};
}

// Bloch angles (θ, φ) of both kets, global phases discarded.
inline std::vector<double> angles_of(const Ket2& psi, const Ket2& phi) {
    auto ang = [](const Ket2& k) {
        const double theta = 2.0 * std::atan2(std::abs(k[1]), std::abs(k[0]));
        return std::pair{theta, std::arg(k[1]) - std::arg(k[0])};
    };
    const auto [t1, p1] = ang(psi);
    const auto [t2, p2] = ang(phi);
    return {t1, p1, t2, p2};
}

// Indices whose value does not exceed any axis neighbour (θ clamped at the poles, φ periodic).
inline std::vector<std::size_t> grid_local_minima(const std::vector<double>& values, std::size_t n) {
    std::vector<std::size_t> out;
    if (n < 2) return out;
    const std::array<std::size_t, 4> stride{n * n * n, n * n, n, 1};
    for (std::size_t idx = 0; idx < values.size(); ++idx) {
        bool is_min = true;
        for (std::size_t d = 0; d < 4 && is_min; ++d) {
            const std::size_t i = (idx / stride[d]) % n;
            const bool periodic = d % 2 == 1;
            for (int delta : {-1, 1}) {
                std::size_t j;
                if (periodic) {
                    j = delta < 0 ? (i + n - 1) % n : (i + 1) % n;
                } else {
                    if ((delta < 0 && i == 0) || (delta > 0 && i + 1 == n)) continue;
                    j = delta < 0 ? i - 1 : i + 1;
                }
                if (values[idx - i * stride[d] + j * stride[d]] < values[idx]) {
                    is_min = false;
                    break;
                }
            }
        }
        if (is_min) out.push_back(idx);
    }
    return out;
}

// Local search on the guide. On a product state that the short-time map leaves separable,
// the lowest PT eigenvalue belongs to the O(τ²) double-flip direction and carries no
// information about nearby entangling states; the second-lowest is the O(τ) one that does.
// Nelder–Mead is restarted from each converged point until a restart stops improving.
inline std::pair<Sample, std::size_t> refine(const CMat& prop, std::vector<double> x, double step) {
    auto f = [&](const std::vector<double>& y) { return at_angles(prop, y.data(), false).guide; };
    double fx = f(x);
    std::size_t evals = 1;
    for (int restart = 0; restart < 8; ++restart) {
        const auto res = optim::nelder_mead(f, x, {400, 1e-18, step});
        evals += static_cast<std::size_t>(res.evaluations);
        const bool improved = res.fx < fx - 1e-15 * std::max(1.0, std::abs(fx));
        if (res.fx < fx) {
            x = res.x;
            fx = res.fx;
        }
        if (!improved) break;
    }
    return {at_angles(prop, x.data()), evals};
}

} // namespace detail

/// Superoperator of ρ ↦ exp(τG)ρ - ρ: τ = dt and G the full generator (Markovian), or
/// τ = dt² and G the dissipator of the equal-time correlations (non-Markovian).
inline CMat propagator_increment(const BlockCoeffMatrix& k, Regime regime, double dt) {
    if (regime == Regime::NonMarkovian) {
        if (k.has_hamiltonian())
            throw ContractViolation("oracle: equal-time correlation matrices carry no Hamiltonian blocks");
        return qlin::expm_minus_identity((dt * dt) * dynamics::generator_superoperator(k, false));
    }
    return qlin::expm_minus_identity(dt * dynamics::generator_superoperator(k, true));
}

inline CMat propagator(const BlockCoeffMatrix& k, Regime regime, double dt) {
    return propagator_increment(k, regime, dt) + CMat::identity(16);
}

inline OracleReport certify(const BlockCoeffMatrix& k, Regime regime, const OracleOptions& opts = {}) {
    coeffs::validate(k);
    if (regime == Regime::NonMarkovian && !qlin::is_psd(coeffs::assemble(k)))
        throw ContractViolation("oracle: equal-time correlation matrix must be PSD");
    const double dt = opts.dt > 0.0 ? opts.dt : default_dt(k, regime);
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ContractViolation("oracle: dt must be > 0");
    const CMat prop = propagator_increment(k, regime, dt);

    OracleReport rep;
    rep.regime = regime;
    rep.dt_used = dt;
    const double scale = coeffs::model_scale(k) * (regime == Regime::Markovian ? dt : dt * dt);
    rep.threshold = opts.rel_tol * scale;

    detail::Sample best{std::numeric_limits<double>::infinity(), 0.0, {}, {}};
    auto better = [](const detail::Sample& a, const detail::Sample& b) { return a.value < b.value; };

    if (const auto* g = std::get_if<Grid>(&opts.sampling)) {
        if (g->n < 1) throw ContractViolation("oracle: grid size must be >= 1");
        const auto n = static_cast<std::size_t>(g->n);
        const std::size_t total = n * n * n * n;
        const auto samples = parallel::map_indexed(total, opts.threads, [&](std::size_t i) {
            const auto x = detail::grid_node(i, n);
            return detail::at_angles(prop, x.data(), false);
        });
        best = detail::exact_min(prop, samples);
        rep.n_samples = total;
    } else if (const auto* r = std::get_if<Random>(&opts.sampling)) {
        if (r->n < 1) throw ContractViolation("oracle: at least one sample is required");
        const auto samples = parallel::map_indexed(r->n, opts.threads, [&](std::size_t i) {
            auto eng = rng::make_engine(r->seed, i);
            const Ket2 psi = detail::haar_ket(eng);
            const Ket2 phi = detail::haar_ket(eng);
            return detail::evaluate(prop, psi, phi, false);
        });
        best = detail::exact_min(prop, samples);
        rep.n_samples = r->n;
    } else {
        const auto& h = std::get<Hybrid>(opts.sampling);
        if (h.grid_n < 1 || h.refine < 1 || h.random_starts < 0)
            throw ContractViolation("oracle: hybrid sampling needs grid_n, refine >= 1 and random_starts >= 0");
        const auto n = static_cast<std::size_t>(h.grid_n);
        const std::size_t total = n * n * n * n;
        const auto samples = parallel::map_indexed(total, opts.threads, [&](std::size_t i) {
            const auto x = detail::grid_node(i, n);
            return detail::at_angles(prop, x.data(), false);
        });
        best = detail::exact_min(prop, samples);
        std::vector<double> guide(total);
        for (std::size_t i = 0; i < total; ++i) guide[i] = samples[i].guide;
        // Refine from the lowest grid-local minima; the lowest raw nodes tend to crowd into one basin.
        std::vector<std::size_t> order = detail::grid_local_minima(guide, n);
        if (order.empty()) {
            order.resize(total);
            std::iota(order.begin(), order.end(), std::size_t{0});
        }
        const auto keep = std::min<std::size_t>(static_cast<std::size_t>(h.refine), order.size());
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                          [&](std::size_t a, std::size_t b) { return guide[a] < guide[b] || (guide[a] == guide[b] && a < b); });
        const double step = std::numbers::pi / static_cast<double>(n);
        const auto n_random = static_cast<std::size_t>(std::max(0, h.random_starts));
        const auto refined = parallel::map_indexed(keep + n_random, opts.threads, [&](std::size_t j) {
            if (j < keep) {
                const auto x0 = detail::grid_node(order[j], n);
                return detail::refine(prop, std::vector<double>(x0.begin(), x0.end()), step);
            }
            auto eng = rng::make_engine(h.seed, j - keep);
            return detail::refine(prop, detail::angles_of(detail::haar_ket(eng), detail::haar_ket(eng)), step);
        });
        std::size_t evals = total;
        for (const auto& [s, e] : refined) {
            evals += e;
            if (better(s, best)) best = s;
        }
        rep.n_samples = evals;
        rep.grid_refined = true;
    }

    rep.min_pt_eig = best.value;
    rep.psi = best.psi;
    rep.phi = best.phi;
    rep.verdict = rep.min_pt_eig < -rep.threshold ? Verdict::Generates : Verdict::DoesNotGenerate;
    return rep;
}

inline OracleReport certify(const baths::CorrelationModel& model, double t0, const OracleOptions& opts = {}) {
    return certify(coeffs::equal_time_D(model, t0), Regime::NonMarkovian, opts);
}

// ---------------------------------------------------------------------------
// Random model families
// ---------------------------------------------------------------------------

namespace detail {

inline CMat random_complex(std::mt19937_64& eng, std::size_t r, std::size_t c) {
    std::normal_distribution<double> n01;
    CMat m(r, c);
    for (auto& v : m.data()) v = cplx(n01(eng), n01(eng));
    return m;
}

inline CMat random_hermitian3(std::mt19937_64& eng, double scale) {
    const CMat a = random_complex(eng, 3, 3);
    return (0.5 * scale) * (a + a.adjoint());
}

inline baths::Vec3c random_real_vec(std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    return {n01(eng), n01(eng), n01(eng)};
}

} // namespace detail

/// K = C C† / ||C C†||_F for a complex 6×m matrix C, m uniform in 1..6. With `hamiltonian`,
/// adds Hermitian h11, h22 and a real h12 of typical size 0.3.
inline BlockCoeffMatrix random_gram_model(std::mt19937_64& eng, bool hamiltonian) {
    std::uniform_int_distribution<std::size_t> rank(1, 6);
    const CMat c = detail::random_complex(eng, 6, rank(eng));
    CMat g = c * c.adjoint();
    g *= 1.0 / g.frobenius_norm();
    BlockCoeffMatrix k = coeffs::from_assembled(g);
    if (hamiltonian) {
        k.h11 = detail::random_hermitian3(eng, 0.3);
        k.h22 = detail::random_hermitian3(eng, 0.3);
        k.h12 = 0.3 * detail::random_complex(eng, 3, 3).real_part();
    }
    return k;
}

/// Thermal bath with real c¹ and purely imaginary c², so that Re D¹² = 0.
inline baths::ThermalBath random_example1_bath(std::mt19937_64& eng, std::size_t modes = 4) {
    std::uniform_real_distribution<double> freq(0.2, 3.0), beta(0.2, 5.0);
    baths::ThermalBath b;
    b.beta = beta(eng);
    for (std::size_t l = 0; l < modes; ++l) {
        baths::ThermalBath::Mode m;
        m.omega = freq(eng);
        m.c1 = detail::random_real_vec(eng);
        const auto r = detail::random_real_vec(eng);
        for (std::size_t j = 0; j < 3; ++j) m.c2[j] = cplx(0.0, r[j].real());
        b.modes.push_back(m);
    }
    return b;
}

/// Thermal bath with all couplings real.
inline baths::ThermalBath random_example2_bath(std::mt19937_64& eng, std::size_t modes = 4) {
    std::uniform_real_distribution<double> freq(0.2, 3.0), beta(0.2, 5.0);
    baths::ThermalBath b;
    b.beta = beta(eng);
    for (std::size_t l = 0; l < modes; ++l)
        b.modes.push_back({freq(eng), detail::random_real_vec(eng), detail::random_real_vec(eng)});
    return b;
}

/// Wiener model with real μ and real c.
inline baths::WienerFieldModel random_real_wiener(std::mt19937_64& eng) {
    baths::WienerFieldModel w;
    w.mu = detail::random_complex(eng, 3, 3).real_part();
    w.c = detail::random_real_vec(eng);
    return w;
}

// ---------------------------------------------------------------------------
// Criterion vs oracle
// ---------------------------------------------------------------------------

struct AgreementRow {
    std::size_t model_id = 0;
    double criterion_value = 0.0;
    double oracle_min_eig = 0.0;
    bool boundary = false;
    bool agree = true;
};

struct AgreementSummary {
    std::size_t agree = 0, disagree = 0, boundary = 0;
    std::vector<AgreementRow> rows;
};

struct AgreementOptions {
    criterion::OptimizerOptions criterion{};
    OracleOptions oracle{};
    double boundary_band = 1e-6;
};

/// Compares criterion and oracle verdicts on `n_models` random Gram models of the given
/// regime (Markovian models carry Hamiltonian blocks). Model i is drawn from stream (seed, i).
inline AgreementSummary agreement_suite(std::size_t n_models, std::uint64_t seed, Regime regime,
                                        const AgreementOptions& opts = {}) {
    if (n_models < 1) throw ContractViolation("agreement_suite: n_models must be >= 1");
    AgreementSummary out;
    for (std::size_t i = 0; i < n_models; ++i) {
        auto eng = rng::make_engine(seed, i);
        const BlockCoeffMatrix k = random_gram_model(eng, regime == Regime::Markovian);
        const auto crit = criterion::decide(k, regime, opts.criterion);
        const auto orc = certify(k, regime, opts.oracle);
        AgreementRow row{i, crit.value, orc.min_pt_eig, false, true};
        if (std::abs(crit.value) <= opts.boundary_band) {
            row.boundary = true;
            ++out.boundary;
        } else {
            row.agree = (crit.value < 0.0) == (orc.verdict == Verdict::Generates);
            ++(row.agree ? out.agree : out.disagree);
        }
        out.rows.push_back(row);
    }
    return out;
}

} // namespace entgen::oracle
