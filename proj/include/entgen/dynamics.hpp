// dynamics.hpp — short-time two-qubit propagators, negativity, and the OU dephasing model

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"
#include "entgen/criterion.hpp"
#include "entgen/parallel.hpp"
#include "entgen/qlin.hpp"
#include "entgen/rng.hpp"

namespace entgen::dynamics {

using coeffs::BlockCoeffMatrix;
using qlin::CMat;

/// H̃ = Σ h11_jk σ¹_j σ¹_k + Σ h22_jk σ²_j σ²_k + Σ h12_jk σ¹_j σ²_k  (4×4, Hermitian).
inline CMat hamiltonian(const BlockCoeffMatrix& k) {
    coeffs::validate(k);
    CMat h(4, 4);
    for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t l = 0; l < 3; ++l) {
            const CMat& a1 = coeffs::coupling_operator(j);
            const CMat& b1 = coeffs::coupling_operator(l);
            const CMat& a2 = coeffs::coupling_operator(3 + j);
            const CMat& b2 = coeffs::coupling_operator(3 + l);
            if (k.h11(j, l) != cplx(0.0)) h += k.h11(j, l) * (a1 * b1);
            if (k.h22(j, l) != cplx(0.0)) h += k.h22(j, l) * (a2 * b2);
            if (k.h12(j, l) != cplx(0.0)) h += k.h12(j, l).real() * (a1 * b2);
        }
    return h;
}

/// Σ_mn K_mn (F_m ρ F_n - ½{F_n F_m, ρ}) with F_m = σ^α_j, m = 3α + j - 1.
inline CMat dissipator(const BlockCoeffMatrix& k, const CMat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4) throw ValidationError("dissipator: expected 4x4, got " + qlin::shape_str(rho));
    const CMat kk = coeffs::assemble(k);
    CMat out(4, 4);
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            const cplx c = kk(m, n);
            if (c == cplx(0.0)) continue;
            const CMat& fm = coeffs::coupling_operator(m);
            const CMat& fn = coeffs::coupling_operator(n);
            const CMat fnfm = fn * fm;
            out += c * (fm * rho * fn - 0.5 * (fnfm * rho + rho * fnfm));
        }
    return out;
}

/// -i[H̃, ρ] + dissipator.
inline CMat lindblad_apply(const BlockCoeffMatrix& k, const CMat& rho) {
    const CMat h = hamiltonian(k);
    return cplx(0.0, -1.0) * qlin::commutator(h, rho) + dissipator(k, rho);
}

/// ρ + t L[ρ]. Hermitian with unit trace; not necessarily positive.
inline CMat short_time_markov(const BlockCoeffMatrix& k, const CMat& rho, double t) {
    if (!(t >= 0.0)) throw ContractViolation("short_time_markov: t must be >= 0");
    return rho + t * lindblad_apply(k, rho);
}

/// ρ + (t - t0)² · dissipator_D[ρ]. The second derivative of the Gaussian map at t0 is twice
/// the dissipator built from the equal-time correlations, so the Taylor factor ½ cancels.
inline CMat short_time_nonmarkov(const BlockCoeffMatrix& d, const CMat& rho, double t_minus_t0) {
    if (d.has_hamiltonian())
        throw ContractViolation("short_time_nonmarkov: equal-time correlation matrices carry no Hamiltonian blocks");
    if (!(t_minus_t0 >= 0.0)) throw ContractViolation("short_time_nonmarkov: elapsed time must be >= 0");
    return rho + (t_minus_t0 * t_minus_t0) * dissipator(d, rho);
}

/// 16×16 matrix of ρ ↦ L[ρ] acting on row-major vec(ρ), so that A ρ B ↦ A ⊗ Bᵀ.
/// With include_hamiltonian = false only the dissipator is represented.
inline CMat generator_superoperator(const BlockCoeffMatrix& k, bool include_hamiltonian = true) {
    const CMat kk = coeffs::assemble(k);
    const CMat id = CMat::identity(4);
    CMat g(16, 16);
    if (include_hamiltonian) {
        const CMat h = hamiltonian(k);
        g += cplx(0.0, -1.0) * (qlin::kron(h, id) - qlin::kron(id, h.transpose()));
    }
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            const cplx c = kk(m, n);
            if (c == cplx(0.0)) continue;
            const CMat& fm = coeffs::coupling_operator(m);
            const CMat& fn = coeffs::coupling_operator(n);
            const CMat fnfm = fn * fm;
            g += c * (qlin::kron(fm, fn.transpose()) - 0.5 * qlin::kron(fnfm, id) - 0.5 * qlin::kron(id, fnfm.transpose()));
        }
    return g;
}

inline std::vector<cplx> vec(const CMat& rho) { return rho.data(); }

inline CMat unvec(const std::vector<cplx>& v, std::size_t n) {
    CMat m(n, n);
    m.data() = v;
    return m;
}

inline CMat apply_superoperator(const CMat& s, const CMat& rho) {
    const std::size_t n = rho.rows();
    CMat out(n, n);
    for (std::size_t r = 0; r < n * n; ++r) {
        cplx acc = 0.0;
        for (std::size_t c = 0; c < n * n; ++c) acc += s(r, c) * rho.data()[c];
        out.data()[r] = acc;
    }
    return out;
}

/// Sum of |negative eigenvalues| of the partial transpose.
inline double negativity(const CMat& rho) {
    double n = 0.0;
    for (double w : qlin::hermitian_eigvals(qlin::partial_transpose(rho)))
        if (w < 0.0) n -= w;
    return n;
}

// ---------------------------------------------------------------------------
// Single-qubit dephasing by an OU field: H = (ω_z/2) σ_z + √strength · φ(t) σ_z
// ---------------------------------------------------------------------------

struct DephasingModel {
    double omega_z = 0.0;
    double epsilon = 1.0;
    double strength = 1.0;  // multiplies the noise kernel; 0 switches the noise off
};

inline void validate(const DephasingModel& m) {
    if (!(m.epsilon > 0.0)) throw ValidationError("DephasingModel: epsilon must be > 0");
    if (!(m.strength >= 0.0)) throw ValidationError("DephasingModel: strength must be >= 0");
}

inline void require_qubit_state(const CMat& rho, const char* what) {
    if (rho.rows() != 2 || rho.cols() != 2)
        throw ValidationError(std::string(what) + ": expected a 2x2 state, got " + qlin::shape_str(rho));
    qlin::require_hermitian(rho, what);
}

/// Exponent Γ(t) of the coherence damping e^{-Γ(t)}: 4·strength·[t/2 + (ε/2)(e^{-t/ε} - 1)].
inline double dephasing_exponent(const DephasingModel& m, double t) {
    validate(m);
    return 4.0 * m.strength * baths::ou_double_integral(m.epsilon, t);
}

// δ-correlated limit of the exponent.
inline double markov_dephasing_exponent(const DephasingModel& m, double t) { return 2.0 * m.strength * t; }

// Leading coefficient c in Γ(t)/4 = c t² + O(t³), per unit strength.
inline double small_time_coefficient(const DephasingModel& m) {
    validate(m);
    return 1.0 / (4.0 * m.epsilon);
}

inline CMat damp_coherence(const CMat& rho, cplx factor) {
    CMat out = rho;
    out(0, 1) *= factor;
    out(1, 0) *= std::conj(factor);
    return out;
}

/// Interaction-picture state at time t.
inline CMat dephasing_exact(const DephasingModel& m, const CMat& rho0, double t) {
    require_qubit_state(rho0, "dephasing_exact");
    if (!(t >= 0.0)) throw ContractViolation("dephasing_exact: t must be >= 0");
    return damp_coherence(rho0, std::exp(-dephasing_exponent(m, t)));
}

/// RK4 on ρ̇ = -strength · r(t) [σ_z, [σ_z, ρ]] with r(t) = ∫_0^t kernel = ½(1 - e^{-t/ε}).
inline CMat dephasing_rk4(const DephasingModel& m, const CMat& rho0, double t, int steps = 2048) {
    require_qubit_state(rho0, "dephasing_rk4");
    validate(m);
    if (!(t >= 0.0)) throw ContractViolation("dephasing_rk4: t must be >= 0");
    if (steps < 1) throw ContractViolation("dephasing_rk4: steps must be >= 1");
    const CMat& sz = qlin::sigma(3);
    auto rhs = [&](double s, const CMat& r) {
        const double rate = -0.5 * m.strength * std::expm1(-s / m.epsilon);
        return -rate * qlin::commutator(sz, qlin::commutator(sz, r));
    };
    const double h = t / steps;
    CMat rho = rho0;
    for (int i = 0; i < steps; ++i) {
        const double s = i * h;
        const CMat k1 = rhs(s, rho);
        const CMat k2 = rhs(s + 0.5 * h, rho + (0.5 * h) * k1);
        const CMat k3 = rhs(s + 0.5 * h, rho + (0.5 * h) * k2);
        const CMat k4 = rhs(s + h, rho + h * k3);
        rho += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    }
    return rho;
}

struct McEstimate {
    CMat state;
    double stderr_re = 0.0;  // standard error of Re ρ_01
    double stderr_im = 0.0;
    std::size_t n_traj = 0;
};

/// Ensemble average over stationary OU paths; each trajectory contributes the state with
/// ρ_01 multiplied by e^{-2i√strength ∫_0^t φ}. Trajectory i draws from stream (seed, i), so
/// the estimate is independent of the thread count.
inline McEstimate dephasing_mc(const DephasingModel& m, const CMat& rho0, double t, std::size_t n_traj,
                               std::uint64_t seed, unsigned threads = 1) {
    require_qubit_state(rho0, "dephasing_mc");
    validate(m);
    if (n_traj < 100) throw ContractViolation("dephasing_mc: at least 100 trajectories are required");
    if (!(t >= 0.0)) throw ContractViolation("dephasing_mc: t must be >= 0");
    McEstimate est{rho0, 0.0, 0.0, n_traj};
    if (t == 0.0 || m.strength == 0.0) return est;

    const baths::OUSampler sampler(m.epsilon, t);
    const double amp = 2.0 * std::sqrt(m.strength);
    const auto phases = parallel::map_indexed(n_traj, threads, [&](std::size_t i) {
        auto eng = rng::make_engine(seed, i);
        const double x0 = sampler.draw_stationary(eng);
        return std::polar(1.0, -amp * sampler.advance(x0, eng).integral);
    });

    cplx mean = 0.0;
    for (const cplx& p : phases) mean += p;
    mean /= static_cast<double>(n_traj);
    double var_re = 0.0, var_im = 0.0;
    for (const cplx& p : phases) {
        var_re += std::pow(p.real() - mean.real(), 2);
        var_im += std::pow(p.imag() - mean.imag(), 2);
    }
    const double nm1 = static_cast<double>(n_traj - 1);
    const double sqn = std::sqrt(static_cast<double>(n_traj));
    // Standard errors of the damping factor, carried over to ρ_01 = factor · ρ0_01.
    const cplx c0 = rho0(0, 1);
    const double se_re_f = std::sqrt(var_re / nm1) / sqn;
    const double se_im_f = std::sqrt(var_im / nm1) / sqn;
    est.state = damp_coherence(rho0, mean);
    est.stderr_re = std::hypot(c0.real() * se_re_f, c0.imag() * se_im_f);
    est.stderr_im = std::hypot(c0.imag() * se_re_f, c0.real() * se_im_f);
    return est;
}

/// Interaction picture → lab frame: ρ_01 picks up e^{-i ω_z t}.
inline CMat to_lab_frame(const DephasingModel& m, const CMat& rho_int, double t) {
    require_qubit_state(rho_int, "to_lab_frame");
    return damp_coherence(rho_int, std::polar(1.0, -m.omega_z * t));
}

} // namespace entgen::dynamics
