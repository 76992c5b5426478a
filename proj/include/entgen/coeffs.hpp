// coeffs.hpp — Kossakowski-type block coefficient matrices and their partial-transpose image

#pragma once

#include <array>
#include <string>

#include "entgen/qlin.hpp"

namespace entgen::coeffs {

using qlin::CMat;

/// Coefficients of a two-qubit dissipator in 3×3 qubit blocks, plus the bath-induced
/// Hamiltonian
///
///   H = Σ h11_jk σ¹_j σ¹_k + Σ h22_jk σ²_j σ²_k + Σ h12_jk σ¹_j σ²_k .
///
/// k21 is implicit (k12†). h11 and h22 must be Hermitian; h12 is the full coefficient of the
/// commuting products σ¹_j σ²_k and must therefore be real.
///
/// The same type holds equal-time correlation matrices D, in which case all h blocks are zero.
struct BlockCoeffMatrix {
    CMat k11 = CMat::zeros(3, 3);
    CMat k22 = CMat::zeros(3, 3);
    CMat k12 = CMat::zeros(3, 3);
    CMat h11 = CMat::zeros(3, 3);
    CMat h22 = CMat::zeros(3, 3);
    CMat h12 = CMat::zeros(3, 3);

    bool has_hamiltonian() const {
        return h11.max_abs() != 0.0 || h22.max_abs() != 0.0 || h12.max_abs() != 0.0;
    }

    friend bool operator==(const BlockCoeffMatrix&, const BlockCoeffMatrix&) = default;
};

// ℰ = diag(-1, 1, -1): the transposition signs of (σ_x, σ_y, σ_z) up to a global sign.
struct EpsilonSign {
    static constexpr std::array<double, 3> diag{-1.0, 1.0, -1.0};
    static CMat matrix() { return CMat::diag({-1.0, 1.0, -1.0}); }
};

inline void validate(const BlockCoeffMatrix& k) {
    const std::array<std::pair<const CMat*, const char*>, 6> blocks{{{&k.k11, "k11"},
                                                                     {&k.k22, "k22"},
                                                                     {&k.k12, "k12"},
                                                                     {&k.h11, "h11"},
                                                                     {&k.h22, "h22"},
                                                                     {&k.h12, "h12"}}};
    for (const auto& [m, name] : blocks) {
        if (m->rows() != 3 || m->cols() != 3)
            throw ValidationError(std::string("BlockCoeffMatrix.") + name + ": expected 3x3, got " +
                                  qlin::shape_str(*m));
    }
    qlin::require_hermitian(k.k11, "BlockCoeffMatrix.k11");
    qlin::require_hermitian(k.k22, "BlockCoeffMatrix.k22");
    qlin::require_hermitian(k.h11, "BlockCoeffMatrix.h11");
    qlin::require_hermitian(k.h22, "BlockCoeffMatrix.h22");
    const double im = k.h12.imag_part().max_abs();
    if (im > qlin::kHermitianTol * std::max(1.0, k.h12.max_abs()))
        throw ValidationError("BlockCoeffMatrix.h12: coefficients of σ¹_j σ²_k must be real (max |Im| " +
                              std::to_string(im) + ")");
}

/// [[K11, K12], [K12†, K22]].
inline CMat assemble(const BlockCoeffMatrix& k) {
    validate(k);
    CMat out(6, 6);
    out.set_block(0, 0, k.k11);
    out.set_block(0, 3, k.k12);
    out.set_block(3, 0, k.k12.adjoint());
    out.set_block(3, 3, k.k22);
    // Hermitian by construction: symmetrize away any sub-tolerance noise in the diagonal blocks.
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = i; j < 6; ++j) {
            const cplx avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = avg;
            out(j, i) = std::conj(avg);
        }
    return out;
}

// Inverse of assemble for the dissipative part; h blocks are left zero.
inline BlockCoeffMatrix from_assembled(const CMat& m) {
    if (m.rows() != 6 || m.cols() != 6)
        throw ValidationError("from_assembled: expected 6x6, got " + qlin::shape_str(m));
    qlin::require_hermitian(m, "from_assembled");
    BlockCoeffMatrix k;
    k.k11 = m.block(0, 0, 3, 3);
    k.k12 = m.block(0, 3, 3, 3);
    k.k22 = m.block(3, 3, 3, 3);
    return k;
}

/// Coefficient matrix of the partially transposed generator:
///   diag(1,ℰ) · [[K11, Re K12 + i h12], [(Re K12 - i h12)ᵀ, K22ᵀ]] · diag(1,ℰ).
/// Need not be PSD even when K is.
inline CMat pt_transform(const BlockCoeffMatrix& k) {
    validate(k);
    const CMat re12 = k.k12.real_part();
    const CMat h12 = k.h12.real_part();
    const cplx i(0.0, 1.0);
    CMat inner(6, 6);
    inner.set_block(0, 0, k.k11);
    inner.set_block(0, 3, re12 + i * h12);
    inner.set_block(3, 0, (re12 - i * h12).transpose());
    inner.set_block(3, 3, k.k22.transpose());
    const std::array<double, 6> sign{1, 1, 1, EpsilonSign::diag[0], EpsilonSign::diag[1], EpsilonSign::diag[2]};
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) inner(r, c) *= sign[r] * sign[c];
    return inner;
}

// Frobenius scale of a model: ||assembled K||_F + ||h||_F. Used to make tolerances dimensionless.
inline double model_scale(const BlockCoeffMatrix& k) {
    const double h = std::sqrt(std::pow(k.h11.frobenius_norm(), 2) + std::pow(k.h22.frobenius_norm(), 2) +
                               std::pow(k.h12.frobenius_norm(), 2));
    return assemble(k).frobenius_norm() + h;
}

inline BlockCoeffMatrix scaled(BlockCoeffMatrix k, double lambda) {
    for (CMat* m : {&k.k11, &k.k22, &k.k12, &k.h11, &k.h22, &k.h12}) *m *= lambda;
    return k;
}

// Two-qubit operator σ^α_j with α ∈ {0,1} and j ∈ {1,2,3}, indexed by m = 3α + (j-1).
inline const CMat& coupling_operator(std::size_t m) {
    return qlin::two_qubit_pauli(static_cast<int>(m / 3), static_cast<int>(m % 3) + 1);
}

/// The bath-induced Hamiltonian obtained from a 6×6 correlation matrix taken at coinciding
/// times,  ½ Σ_mn [ -i Re(D_mn) [F_m, F_n] - Im(D_mn) {F_m, F_n} ],  F_m = σ^α_j.
/// Vanishes identically for Hermitian D; kept as an explicit check rather than assumed.
inline CMat induced_hamiltonian_equal_time(const CMat& d) {
    qlin::require_hermitian(d, "induced_hamiltonian_equal_time");
    if (d.rows() != 6) throw ValidationError("induced_hamiltonian_equal_time: expected 6x6");
    const cplx i(0.0, 1.0);
    CMat h(4, 4);
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            const CMat& fm = coupling_operator(m);
            const CMat& fn = coupling_operator(n);
            h += (-i * d(m, n).real()) * qlin::commutator(fm, fn);
            h -= d(m, n).imag() * qlin::anticommutator(fm, fn);
        }
    return 0.5 * h;
}

} // namespace entgen::coeffs
