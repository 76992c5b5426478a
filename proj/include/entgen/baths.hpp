// baths.hpp — Gaussian environments: two-point correlations of bosonic and classical baths

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "entgen/qlin.hpp"

namespace entgen {

// A bath description cannot produce the requested correlation data.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace entgen

namespace entgen::baths {

using qlin::CMat;
using Vec3c = std::array<cplx, 3>;

// ---------------------------------------------------------------------------
// Thermal bosonic bath
// ---------------------------------------------------------------------------

/// Independent bosonic modes in a thermal state. Qubit α couples to the field
///   φ^α_j = Σ_ℓ (c^α_{jℓ} b_ℓ + conj(c^α_{jℓ}) b_ℓ†).
struct ThermalBath {
    struct Mode {
        double omega = 1.0;  // > 0
        Vec3c c1{};          // c¹_{jℓ}, j = 1..3
        Vec3c c2{};          // c²_{jℓ}
        friend bool operator==(const Mode&, const Mode&) = default;
    };
    std::vector<Mode> modes;
    double beta = 1.0;

    friend bool operator==(const ThermalBath&, const ThermalBath&) = default;
};

inline constexpr double kBoseOverflow = 700.0;

// e^{βω}/(e^{βω}-1) and 1/(e^{βω}-1), with exact zero-temperature asymptotics past βω = 700.
struct BoseFactors {
    double emission;    // n̄ + 1
    double absorption;  // n̄
};

inline BoseFactors bose_factors(double beta, double omega) {
    const double x = beta * omega;
    if (x > kBoseOverflow) return {1.0, 0.0};
    return {-1.0 / std::expm1(-x), 1.0 / std::expm1(x)};
}

inline void validate(const ThermalBath& bath) {
    if (!(bath.beta > 0.0)) throw ModelError("thermal bath: beta must be > 0");
    for (std::size_t l = 0; l < bath.modes.size(); ++l)
        if (!(bath.modes[l].omega > 0.0))
            throw ModelError("thermal bath: mode " + std::to_string(l) + " frequency must be > 0");
}

inline Vec3c mode_coupling(const ThermalBath::Mode& m, std::size_t alpha) { return alpha == 0 ? m.c1 : m.c2; }

/// 6×6 matrix of D^{αγ}_{jk}(t - s), row index 3α + j, column 3γ + k.
inline CMat thermal_correlation(const ThermalBath& bath, double t, double s) {
    validate(bath);
    const double tau = t - s;
    CMat d(6, 6);
    for (const auto& mode : bath.modes) {
        const auto [emit, absorb] = bose_factors(bath.beta, mode.omega);
        const cplx down = std::polar(1.0, -mode.omega * tau);
        const cplx up = std::conj(down);
        std::array<cplx, 6> x{};
        for (std::size_t a = 0; a < 2; ++a)
            for (std::size_t j = 0; j < 3; ++j) x[3 * a + j] = mode_coupling(mode, a)[j];
        for (std::size_t m = 0; m < 6; ++m)
            for (std::size_t n = 0; n < 6; ++n)
                d(m, n) += std::conj(x[m]) * x[n] * down * emit + x[m] * std::conj(x[n]) * up * absorb;
    }
    return d;
}

struct CommonBathDelta {
    CMat delta;  // Δ_jk, 3×3 Hermitian PSD
    CMat x;      // x_jk = Im⟨C_k|C_j⟩, real antisymmetric (stored with zero imaginary parts)
};

/// Δ for two qubits that couple to the same fields (c¹ = c²). D then equals [[Δ,Δ],[Δ,Δ]].
inline CommonBathDelta common_bath_delta(const ThermalBath& bath) {
    validate(bath);
    for (std::size_t l = 0; l < bath.modes.size(); ++l)
        if (bath.modes[l].c1 != bath.modes[l].c2)
            throw ModelError("common_bath_delta: mode " + std::to_string(l) +
                             " couples the qubits differently; use the general equal-time matrix instead");
    CommonBathDelta out{CMat(3, 3), CMat(3, 3)};
    for (const auto& mode : bath.modes) {
        const auto [emit, absorb] = bose_factors(bath.beta, mode.omega);
        const double coth = emit + absorb;
        for (std::size_t j = 0; j < 3; ++j)
            for (std::size_t k = 0; k < 3; ++k) {
                const cplx g = std::conj(mode.c1[j]) * mode.c1[k];  // conj(c_j) c_k
                out.delta(j, k) += cplx(g.real() * coth, g.imag());
                out.x(j, k) += (std::conj(mode.c1[k]) * mode.c1[j]).imag();
            }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Ornstein–Uhlenbeck dephasing noise
// ---------------------------------------------------------------------------

/// Real OU field coupled through σ_z to both qubits (the same field for each).
struct OUNoise {
    double epsilon = 1.0;  // correlation time
    double omega_z = 0.0;  // free precession frequency; does not enter the criterion
    friend bool operator==(const OUNoise&, const OUNoise&) = default;
};

/// (1/2ε) exp(-|dt|/ε); integrates to 1 over the real line.
inline double ou_kernel(double eps, double dt) {
    if (!(eps > 0.0)) throw ModelError("ou_kernel: epsilon must be > 0");
    return std::exp(-std::abs(dt) / eps) / (2.0 * eps);
}

// ∫_0^t dτ ∫_0^τ ds (1/2ε) e^{-(τ-s)/ε} = t/2 + (ε/2)(e^{-t/ε} - 1).
inline double ou_double_integral(double eps, double t) {
    if (!(eps > 0.0)) throw ModelError("ou_double_integral: epsilon must be > 0");
    return 0.5 * t + 0.5 * eps * std::expm1(-t / eps);
}

/// Exact transition sampler for the stationary OU process with covariance (1/2ε)e^{-|τ|/ε}.
/// Each step draws the new value together with the integral of the path over the step,
/// from their exact joint Gaussian law.
class OUSampler {
public:
    OUSampler(double eps, double step) : eps_(eps), step_(step) {
        if (!(eps > 0.0)) throw ModelError("OUSampler: epsilon must be > 0");
        if (!(step > 0.0)) throw ModelError("OUSampler: step must be > 0");
        const double theta = 1.0 / eps;
        const double a = theta * step;
        const double e1 = -std::expm1(-a);
        const double e2 = -std::expm1(-2.0 * a);
        const double var = stationary_variance();
        decay_ = 1.0 - e1;
        mean_int_ = e1 / theta;
        var_x_ = var * e2;
        var_int_ = 2.0 * var / (theta * theta) * integral_bracket(a);
        cov_ = var / theta * e1 * e1;
        sd_x_ = std::sqrt(var_x_);
        gain_ = cov_ / sd_x_;
        sd_res_ = std::sqrt(std::max(0.0, var_int_ - gain_ * gain_));
    }

    double stationary_variance() const noexcept { return 1.0 / (2.0 * eps_); }
    double step() const noexcept { return step_; }

    template <class Engine>
    double draw_stationary(Engine& eng) const {
        std::normal_distribution<double> n01;
        return std::sqrt(stationary_variance()) * n01(eng);
    }

    struct Increment {
        double value;     // x(t + step)
        double integral;  // ∫_t^{t+step} x
    };

    template <class Engine>
    Increment advance(double x, Engine& eng) const {
        std::normal_distribution<double> n01;
        const double z1 = n01(eng);
        const double z2 = n01(eng);
        return {x * decay_ + sd_x_ * z1, x * mean_int_ + gain_ * z1 + sd_res_ * z2};
    }

private:
    // a - 2(1-e^{-a}) + (1-e^{-2a})/2, by series when cancellation would bite.
    static double integral_bracket(double a) {
        if (a > 0.1) return a + 2.0 * std::expm1(-a) - 0.5 * std::expm1(-2.0 * a);
        double sum = 0.0, pow_a = a * a, fact = 2.0;
        for (int n = 3; n <= 14; ++n) {
            pow_a *= a;
            fact *= n;
            const double sign = (n % 2 == 1) ? 1.0 : -1.0;
            sum += sign * (std::ldexp(1.0, n - 1) - 2.0) * pow_a / fact;
        }
        return sum;
    }

    double eps_, step_;
    double decay_ = 0, mean_int_ = 0, var_x_ = 0, var_int_ = 0, cov_ = 0;
    double sd_x_ = 0, gain_ = 0, sd_res_ = 0;
};

/// Stationary OU path on the grid t_n = n·step, n = 0..n_steps.
template <class Engine>
std::vector<double> sample_ou_path(double eps, double step, std::size_t n_steps, Engine& eng) {
    OUSampler s(eps, step);
    std::vector<double> path;
    path.reserve(n_steps + 1);
    path.push_back(s.draw_stationary(eng));
    for (std::size_t n = 0; n < n_steps; ++n) path.push_back(s.advance(path.back(), eng).value);
    return path;
}

// ---------------------------------------------------------------------------
// Classical Wiener fields
// ---------------------------------------------------------------------------

/// Both qubits see φ_j(t) = Σ_ℓ μ_{jℓ} W_ℓ(t) + c_j.
struct WienerFieldModel {
    CMat mu = CMat::zeros(3, 3);
    Vec3c c{};
    friend bool operator==(const WienerFieldModel&, const WienerFieldModel&) = default;
};

// Σ_ℓ μ_jℓ conj(μ_kℓ)
inline CMat wiener_mu_gram(const WienerFieldModel& w) {
    if (w.mu.rows() != 3 || w.mu.cols() != 3) throw ModelError("wiener: mu must be 3x3");
    return w.mu * w.mu.adjoint();
}

inline CMat outer(const Vec3c& a, const Vec3c& b) {
    CMat o(3, 3);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) o(j, k) = a[j] * std::conj(b[k]);
    return o;
}

/// Δ_jk(t0) = t0 Σ_ℓ μ_jℓ conj(μ_kℓ) + c_j conj(c_k).
inline CMat wiener_delta(const WienerFieldModel& w, double t0) {
    if (!(t0 >= 0.0)) throw ModelError("wiener_delta: t0 must be >= 0");
    return t0 * wiener_mu_gram(w) + outer(w.c, w.c);
}

// ---------------------------------------------------------------------------
// ε-family of delta approximants
// ---------------------------------------------------------------------------

enum class DeltaProfile { Exponential, Gaussian, Triangular };

inline const char* to_string(DeltaProfile p) {
    switch (p) {
        case DeltaProfile::Exponential: return "exponential";
        case DeltaProfile::Gaussian: return "gaussian";
        case DeltaProfile::Triangular: return "triangular";
    }
    return "?";
}

/// d_ε(t) = ε a(t/ε) + b(t/ε) + c(t/ε)/ε, with a = a_scale·g, b = b_scale·g and c = g/∫g
/// for the profile shape g. The matrix model weights the three terms with Hermitian 6×6
/// matrices A, B, C.
struct DeltaFamily {
    DeltaProfile profile = DeltaProfile::Exponential;
    double epsilon = 1.0;
    double a_scale = 1.0;
    double b_scale = 1.0;
    CMat a_weight = CMat::zeros(6, 6);
    CMat b_weight = CMat::zeros(6, 6);
    CMat c_weight = CMat::zeros(6, 6);
    friend bool operator==(const DeltaFamily&, const DeltaFamily&) = default;
};

// Unnormalized even shape g with g(0) = 1.
inline double profile_shape(DeltaProfile p, double x) {
    switch (p) {
        case DeltaProfile::Exponential: return std::exp(-std::abs(x));
        case DeltaProfile::Gaussian: return std::exp(-0.5 * x * x);
        case DeltaProfile::Triangular: return std::max(0.0, 1.0 - std::abs(x));
    }
    return 0.0;
}

inline double profile_mass(DeltaProfile p) {
    switch (p) {
        case DeltaProfile::Exponential: return 2.0;
        case DeltaProfile::Gaussian: return std::sqrt(2.0 * std::numbers::pi);
        case DeltaProfile::Triangular: return 1.0;
    }
    return 1.0;
}

inline double profile_a(const DeltaFamily& f, double x) { return f.a_scale * profile_shape(f.profile, x); }
inline double profile_b(const DeltaFamily& f, double x) { return f.b_scale * profile_shape(f.profile, x); }
inline double profile_c(const DeltaFamily& f, double x) {
    return profile_shape(f.profile, x) / profile_mass(f.profile);
}

inline double delta_family_value(const DeltaFamily& f, double t) {
    if (!(f.epsilon > 0.0)) throw ModelError("delta family: epsilon must be > 0");
    const double x = t / f.epsilon;
    return f.epsilon * profile_a(f, x) + profile_b(f, x) + profile_c(f, x) / f.epsilon;
}

// ---------------------------------------------------------------------------
// User-supplied equal-time table
// ---------------------------------------------------------------------------

/// Equal-time correlation matrices given at a few initial times and interpolated linearly
/// (clamped at the ends). For environments whose correlations are known only numerically.
struct CustomEqualTime {
    std::vector<std::pair<double, CMat>> table;  // sorted by t0
    friend bool operator==(const CustomEqualTime&, const CustomEqualTime&) = default;
};

inline CMat custom_equal_time_at(const CustomEqualTime& c, double t0) {
    if (c.table.empty()) throw ModelError("custom_equal_time: empty table");
    for (const auto& [t, m] : c.table)
        if (m.rows() != 6 || m.cols() != 6) throw ModelError("custom_equal_time: matrices must be 6x6");
    if (t0 <= c.table.front().first) return c.table.front().second;
    if (t0 >= c.table.back().first) return c.table.back().second;
    for (std::size_t i = 1; i < c.table.size(); ++i) {
        const auto& [t1, m1] = c.table[i];
        if (t0 <= t1) {
            const auto& [ta, ma] = c.table[i - 1];
            const double w = (t0 - ta) / (t1 - ta);
            return (1.0 - w) * ma + w * m1;
        }
    }
    return c.table.back().second;
}

// ---------------------------------------------------------------------------
// Unified model
// ---------------------------------------------------------------------------

using CorrelationModel = std::variant<ThermalBath, OUNoise, WienerFieldModel, DeltaFamily, CustomEqualTime>;

inline CMat block_replicate(const CMat& delta) {
    CMat d(6, 6);
    for (std::size_t a = 0; a < 2; ++a)
        for (std::size_t g = 0; g < 2; ++g) d.set_block(3 * a, 3 * g, delta);
    return d;
}

/// 𝔇^{αγ}_{jk}(τ, s; t0) as a 6×6 matrix. Bosonic baths are evaluated at (τ - t0, s - t0);
/// classical fields at (τ, s).
inline CMat correlation(const CorrelationModel& model, double tau, double s, double t0 = 0.0) {
    return std::visit(
        [&](const auto& m) -> CMat {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, ThermalBath>) {
                return thermal_correlation(m, tau - t0, s - t0);
            } else if constexpr (std::is_same_v<T, OUNoise>) {
                CMat d(6, 6);
                const double k = ou_kernel(m.epsilon, tau - s);
                for (std::size_t a : {2u, 5u})
                    for (std::size_t g : {2u, 5u}) d(a, g) = k;
                return d;
            } else if constexpr (std::is_same_v<T, WienerFieldModel>) {
                if (tau < 0.0 || s < 0.0) throw ModelError("wiener: times must be >= 0");
                return block_replicate(std::min(tau, s) * wiener_mu_gram(m) + outer(m.c, m.c));
            } else if constexpr (std::is_same_v<T, DeltaFamily>) {
                if (!(m.epsilon > 0.0)) throw ModelError("delta family: epsilon must be > 0");
                const double x = (tau - s) / m.epsilon;
                return m.epsilon * profile_a(m, x) * m.a_weight + profile_b(m, x) * m.b_weight +
                       (profile_c(m, x) / m.epsilon) * m.c_weight;
            } else {
                if (tau != s) throw ModelError("custom_equal_time: only equal-time data is available");
                return custom_equal_time_at(m, t0);
            }
        },
        model);
}

inline const char* model_name(const CorrelationModel& model) {
    static constexpr std::array<const char*, 5> names{"thermal", "ou_dephasing", "wiener", "delta_family",
                                                      "custom_equal_time"};
    return names.at(model.index());
}

} // namespace entgen::baths
