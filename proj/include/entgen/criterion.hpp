// criterion.hpp — short-time entanglement-generation inequalities and their minimization
//
// A product state |ψ⟩⊗|φ⟩ becomes entangled at leading order in time iff
//
//   ⟨u|A11|u⟩ ⟨v|A22ᵀ|v⟩ - |⟨u|M|v⟩|² < 0,
//
// with u_i = ⟨ψ|σ_i|ψ⊥⟩, v_i = ⟨φ⊥|σ_i|φ⟩ and
//   Markovian:      A = K (Kossakowski matrix), M = Re K12 + i h12
//   non-Markovian:  A = D (equal-time correlations), M = Re D12.
// `decide` minimizes the left-hand side over both Bloch spheres.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"
#include "entgen/equal_time.hpp"
#include "entgen/nelder_mead.hpp"
#include "entgen/parallel.hpp"
#include "entgen/qlin.hpp"
#include "entgen/rng.hpp"

namespace entgen {

// A documented precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace entgen

namespace entgen::criterion {

using coeffs::BlockCoeffMatrix;
using qlin::CMat;
using qlin::Ket2;
using Vec3c = std::array<cplx, 3>;

enum class Regime { Markovian, NonMarkovian };
enum class Verdict { Generates, DoesNotGenerate, Boundary };
enum class Side { First, Second };

inline const char* to_string(Regime r) { return r == Regime::Markovian ? "markovian" : "nonmarkovian"; }
inline const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Generates: return "generates";
        case Verdict::DoesNotGenerate: return "does_not_generate";
        case Verdict::Boundary: return "boundary";
    }
    return "?";
}

struct BasisPair {
    Ket2 psi{};
    Ket2 psi_perp{};
};

inline void validate(const BasisPair& b) {
    auto dot = [](const Ket2& a, const Ket2& c) { return std::conj(a[0]) * c[0] + std::conj(a[1]) * c[1]; };
    const double n1 = std::abs(dot(b.psi, b.psi) - 1.0);
    const double n2 = std::abs(dot(b.psi_perp, b.psi_perp) - 1.0);
    const double ov = std::abs(dot(b.psi, b.psi_perp));
    if (n1 > 1e-12 || n2 > 1e-12 || ov > 1e-12)
        throw ValidationError("BasisPair: vectors are not orthonormal (norm defects " + std::to_string(n1) + ", " +
                              std::to_string(n2) + ", overlap " + std::to_string(ov) + ")");
}

// ψ = (cos θ/2, e^{iφ} sin θ/2) and the gauge-fixed ψ⊥ = (-e^{-iφ} sin θ/2, cos θ/2).
inline BasisPair basis_from_angles(double theta, double phi) {
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    return {{cplx(c), std::polar(s, phi)}, {-std::polar(s, -phi), cplx(c)}};
}

struct WitnessVector {
    Vec3c u{};
};

namespace detail {

inline cplx sandwich(const Ket2& bra, const CMat& op, const Ket2& ket) {
    cplx r = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) r += std::conj(bra[i]) * op(i, j) * ket[j];
    return r;
}

// ⟨a|M|b⟩ for 3-vectors.
inline cplx form(const Vec3c& a, const CMat& m, const Vec3c& b) {
    cplx r = 0.0;
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) r += std::conj(a[j]) * m(j, k) * b[k];
    return r;
}

inline WitnessVector witness_unchecked(const BasisPair& b, Side side) {
    WitnessVector w;
    for (int i = 1; i <= 3; ++i)
        w.u[static_cast<std::size_t>(i - 1)] = side == Side::First ? sandwich(b.psi, qlin::sigma(i), b.psi_perp)
                                                                   : sandwich(b.psi_perp, qlin::sigma(i), b.psi);
    return w;
}

} // namespace detail

/// u_i = ⟨ψ|σ_i|ψ⊥⟩ (First) or v_i = ⟨ψ⊥|σ_i|ψ⟩ (Second). Always ⟨u|u⟩ = 2, Σ u_i² = 0.
inline WitnessVector witness_from_basis(const BasisPair& b, Side side) {
    validate(b);
    return detail::witness_unchecked(b, side);
}

inline cplx inner(const WitnessVector& a, const CMat& m, const WitnessVector& b) { return detail::form(a.u, m, b.u); }

namespace detail {

// Pre-extracted blocks so the optimizer loop does no validation or allocation.
struct Blocks {
    CMat a11, a22t, cross;
};

inline Blocks markovian_blocks(const BlockCoeffMatrix& k) {
    coeffs::validate(k);
    return {k.k11, k.k22.transpose(), k.k12.real_part() + cplx(0.0, 1.0) * k.h12.real_part()};
}

inline Blocks nonmarkovian_blocks(const BlockCoeffMatrix& d) {
    coeffs::validate(d);
    if (d.has_hamiltonian())
        throw ContractViolation("eval_nonmarkovian: equal-time correlation matrices carry no Hamiltonian blocks");
    if (!qlin::is_psd(coeffs::assemble(d)))
        throw ContractViolation("eval_nonmarkovian: equal-time correlation matrix must be PSD");
    return {d.k11, d.k22.transpose(), d.k12.real_part()};
}

inline double evaluate(const Blocks& b, const WitnessVector& u, const WitnessVector& v) {
    return (inner(u, b.a11, u) * inner(v, b.a22t, v)).real() - std::norm(inner(u, b.cross, v));
}

} // namespace detail

/// ⟨u|K11|u⟩⟨v|K22ᵀ|v⟩ - |⟨u|Re K12 + i h12|v⟩|².
inline double eval_markovian(const BlockCoeffMatrix& k, const WitnessVector& u, const WitnessVector& v) {
    return detail::evaluate(detail::markovian_blocks(k), u, v);
}

/// ⟨u|D11|u⟩⟨v|D22ᵀ|v⟩ - |⟨u|Re D12|v⟩|². Rejects non-PSD D or nonzero h blocks.
inline double eval_nonmarkovian(const BlockCoeffMatrix& d, const WitnessVector& u, const WitnessVector& v) {
    return detail::evaluate(detail::nonmarkovian_blocks(d), u, v);
}

struct OptimizerOptions {
    int starts = 64;
    int max_iter = 200;
    double simplex_tol = 1e-12;  // relative to the squared model scale
    bool grid = false;  // exhaustive grid_n⁴ scan before polishing
    int grid_n = 20;
    std::uint64_t seed = 0;
    double decision_tol = 1e-9;  // relative to the squared model scale
    unsigned threads = 1;
};

struct CriterionReport {
    double value = 0.0;
    WitnessVector u_min, v_min;
    Ket2 psi{}, phi{};  // the product state |ψ⟩⊗|φ⟩ attaining `value`
    Verdict verdict = Verdict::Boundary;
    Regime regime = Regime::Markovian;
    double decision_tol = 0.0;  // absolute threshold actually applied
    int starts_used = 0;
    std::size_t grid_points = 0;
    bool converged = false;
};

inline Verdict classify(double value, double tol) {
    if (value < -tol) return Verdict::Generates;
    if (std::abs(value) <= tol) return Verdict::Boundary;
    return Verdict::DoesNotGenerate;
}

namespace detail {

struct Point {
    double value;
    std::array<double, 4> angles;
    bool converged;
};

inline double objective(const Blocks& b, const double* x) {
    const auto first = witness_unchecked(basis_from_angles(x[0], x[1]), Side::First);
    const auto second = witness_unchecked(basis_from_angles(x[2], x[3]), Side::Second);
    return evaluate(b, first, second);
}

inline Point polish(const Blocks& b, const std::array<double, 4>& start, const OptimizerOptions& opts, double ftol,
                    double step) {
    optim::NelderMeadOptions nm{opts.max_iter, ftol, step};
    auto res = optim::nelder_mead([&](const std::vector<double>& x) { return objective(b, x.data()); },
                                  std::vector<double>(start.begin(), start.end()), nm);
    return {res.fx, {res.x[0], res.x[1], res.x[2], res.x[3]}, res.converged};
}

inline CriterionReport minimize(const Blocks& b, Regime regime, double scale, const OptimizerOptions& opts) {
    if (opts.starts < 1) throw ContractViolation("decide: at least one start is required");
    constexpr double pi = std::numbers::pi;
    CriterionReport rep;
    rep.regime = regime;
    Point best{};
    const double ftol = opts.simplex_tol * scale * scale;

    if (opts.grid) {
        const std::size_t n = static_cast<std::size_t>(std::max(1, opts.grid_n));
        auto node = [&](std::size_t i, double span) { return (static_cast<double>(i) + 0.5) * span / static_cast<double>(n); };
        // one slab of n³ points per first index
        auto slabs = parallel::map_indexed(n, opts.threads, [&](std::size_t i0) {
            Point p{std::numeric_limits<double>::infinity(), {}, false};
            for (std::size_t i1 = 0; i1 < n; ++i1)
                for (std::size_t i2 = 0; i2 < n; ++i2)
                    for (std::size_t i3 = 0; i3 < n; ++i3) {
                        const std::array<double, 4> x{node(i0, pi), node(i1, 2 * pi), node(i2, pi), node(i3, 2 * pi)};
                        const double f = objective(b, x.data());
                        if (f < p.value) p = {f, x, false};
                    }
            return p;
        });
        const Point coarse = slabs[parallel::argmin(slabs, [](const Point& p) { return p.value; })];
        best = polish(b, coarse.angles, opts, ftol, pi / static_cast<double>(n));
        if (coarse.value < best.value) best = coarse;
        rep.starts_used = 1;
        rep.grid_points = n * n * n * n;
    } else {
        const auto n = static_cast<std::size_t>(opts.starts);
        auto points = parallel::map_indexed(n, opts.threads, [&](std::size_t i) {
            const auto h = rng::halton4(i, opts.seed);
            return polish(b, {h[0] * pi, h[1] * 2 * pi, h[2] * pi, h[3] * 2 * pi}, opts, ftol, 0.5);
        });
        best = points[parallel::argmin(points, [](const Point& p) { return p.value; })];
        rep.starts_used = opts.starts;
    }

    const auto first = basis_from_angles(best.angles[0], best.angles[1]);
    const auto second = basis_from_angles(best.angles[2], best.angles[3]);
    rep.value = best.value;
    rep.u_min = witness_unchecked(first, Side::First);
    rep.v_min = witness_unchecked(second, Side::Second);
    rep.psi = first.psi;
    rep.phi = second.psi;
    rep.converged = best.converged;
    rep.decision_tol = opts.decision_tol * scale * scale;
    rep.verdict = classify(rep.value, rep.decision_tol);
    return rep;
}

} // namespace detail

/// Minimizes the regime's inequality over product states. Deterministic for fixed options.
inline CriterionReport decide(const BlockCoeffMatrix& k, Regime regime, const OptimizerOptions& opts = {}) {
    const auto blocks = regime == Regime::Markovian ? detail::markovian_blocks(k) : detail::nonmarkovian_blocks(k);
    return detail::minimize(blocks, regime, coeffs::model_scale(k), opts);
}

inline CriterionReport decide(const baths::CorrelationModel& model, double t0, const OptimizerOptions& opts = {}) {
    return decide(coeffs::equal_time_D(model, t0), Regime::NonMarkovian, opts);
}

struct ScanRow {
    double t0;
    CriterionReport report;
};

/// Non-Markovian verdicts for a Wiener-field model at each initial time in `t0_grid`.
inline std::vector<ScanRow> scan_t0(const baths::WienerFieldModel& model, std::span<const double> t0_grid,
                                    const OptimizerOptions& opts = {}) {
    if (t0_grid.empty()) throw ContractViolation("scan_t0: empty t0 grid");
    std::vector<ScanRow> rows;
    rows.reserve(t0_grid.size());
    for (double t0 : t0_grid) {
        if (!(t0 >= 0.0)) throw ContractViolation("scan_t0: t0 values must be >= 0");
        rows.push_back({t0, decide(baths::CorrelationModel{model}, t0, opts)});
    }
    return rows;
}

/// Common-bath diagnostic. For D = [[Δ,Δ],[Δ,Δ]] and u = v the inequality reduces to
/// |⟨u|Im Δ|u⟩| > 0, where Im Δ is taken entrywise. The returned quadratic form is purely
/// imaginary; `value_at_u` is the general left-hand side, equal to -|form|².
struct CommonBathShortcut {
    cplx form;
    double value_at_u;
    bool entangles;
};

inline CommonBathShortcut common_bath_shortcut(const CMat& delta, const WitnessVector& u, double tol = 1e-12) {
    qlin::require_hermitian(delta, "common_bath_shortcut");
    const cplx q = inner(u, delta.imag_part(), u);
    return {q, -std::norm(q), std::abs(q) > tol};
}

} // namespace entgen::criterion
