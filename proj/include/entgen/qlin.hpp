// qlin.hpp — small dense complex linear algebra for 2-, 3-, 4- and 6-dimensional problems

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entgen {

using cplx = std::complex<double>;

// Input does not satisfy a documented invariant (dimensions, Hermiticity, trace, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace entgen

namespace entgen::qlin {

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kDefaultPsdTol = 1e-10;

/// Row-major dense complex matrix. Dimensions are fixed at construction.
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    CMat(std::initializer_list<std::initializer_list<cplx>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw ValidationError("CMat: ragged initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static CMat zeros(std::size_t r, std::size_t c) { return CMat(r, c); }
    static CMat identity(std::size_t n) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static CMat diag(std::initializer_list<cplx> d) {
        CMat m(d.size(), d.size());
        std::size_t i = 0;
        for (auto v : d) { m(i, i) = v; ++i; }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    cplx& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::vector<cplx>& data() noexcept { return data_; }
    const std::vector<cplx>& data() const noexcept { return data_; }

    CMat adjoint() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
        return r;
    }
    CMat transpose() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }
    CMat conj() const {
        CMat r = *this;
        for (auto& v : r.data_) v = std::conj(v);
        return r;
    }
    // Entrywise real part, returned as a complex matrix with zero imaginary parts.
    CMat real_part() const {
        CMat r = *this;
        for (auto& v : r.data_) v = v.real();
        return r;
    }
    CMat imag_part() const {
        CMat r = *this;
        for (auto& v : r.data_) v = v.imag();
        return r;
    }

    cplx trace() const {
        cplx t = 0.0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }
    double frobenius_norm() const {
        double s = 0.0;
        for (const auto& v : data_) s += std::norm(v);
        return std::sqrt(s);
    }
    double max_abs() const {
        double m = 0.0;
        for (const auto& v : data_) m = std::max(m, std::abs(v));
        return m;
    }

    CMat block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        CMat b(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
        return b;
    }
    void set_block(std::size_t r0, std::size_t c0, const CMat& b) {
        for (std::size_t i = 0; i < b.rows(); ++i)
            for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    CMat& operator+=(const CMat& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }
    CMat& operator-=(const CMat& o) {
        require_same_shape(o);
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }
    CMat& operator*=(cplx s) {
        for (auto& v : data_) v *= s;
        return *this;
    }

    friend CMat operator+(CMat a, const CMat& b) { return a += b; }
    friend CMat operator-(CMat a, const CMat& b) { return a -= b; }
    friend CMat operator*(CMat a, cplx s) { return a *= s; }
    friend CMat operator*(cplx s, CMat a) { return a *= s; }
    friend CMat operator*(double s, CMat a) { return a *= cplx(s); }
    friend CMat operator*(CMat a, double s) { return a *= cplx(s); }

    friend CMat operator*(const CMat& a, const CMat& b) {
        if (a.cols_ != b.rows_) throw ValidationError("CMat: product dimension mismatch");
        CMat r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx(0.0)) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
            }
        return r;
    }

    friend bool operator==(const CMat&, const CMat&) = default;

private:
    void require_same_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) throw ValidationError("CMat: shape mismatch");
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

inline std::string shape_str(const CMat& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

inline CMat kron(const CMat& a, const CMat& b) {
    CMat r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return r;
}

inline CMat commutator(const CMat& a, const CMat& b) { return a * b - b * a; }
inline CMat anticommutator(const CMat& a, const CMat& b) { return a * b + b * a; }

// Largest |M_ij - conj(M_ji)|.
inline double hermitian_defect(const CMat& m) {
    double d = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i; j < m.cols(); ++j) d = std::max(d, std::abs(m(i, j) - std::conj(m(j, i))));
    return d;
}

inline bool is_hermitian(const CMat& m, double tol = kHermitianTol) {
    return m.is_square() && hermitian_defect(m) <= tol * std::max(1.0, m.max_abs());
}

inline void require_hermitian(const CMat& m, const char* what, double tol = kHermitianTol) {
    if (!m.is_square())
        throw ValidationError(std::string(what) + ": expected a square matrix, got " + shape_str(m));
    const double defect = hermitian_defect(m);
    if (defect > tol * std::max(1.0, m.max_abs())) {
        std::ostringstream os;
        os << what << ": matrix is not Hermitian (max asymmetry " << defect << ")";
        throw ValidationError(os.str());
    }
}

// Standard-representation Pauli matrices. Under transposition sigma_y flips sign.
inline const CMat& sigma(int i) {
    static const std::array<CMat, 4> paulis = {
        CMat{{1.0, 0.0}, {0.0, 1.0}},
        CMat{{0.0, 1.0}, {1.0, 0.0}},
        CMat{{0.0, cplx(0, -1)}, {cplx(0, 1), 0.0}},
        CMat{{1.0, 0.0}, {0.0, -1.0}},
    };
    return paulis.at(static_cast<std::size_t>(i));
}

// sigma_x, sigma_y, sigma_z on qubit `which` (0 or 1) of a two-qubit register, j in {1,2,3}.
inline const CMat& two_qubit_pauli(int which, int j) {
    static const auto table = [] {
        std::array<std::array<CMat, 3>, 2> t;
        for (int k = 1; k <= 3; ++k) {
            t[0][static_cast<std::size_t>(k - 1)] = kron(sigma(k), CMat::identity(2));
            t[1][static_cast<std::size_t>(k - 1)] = kron(CMat::identity(2), sigma(k));
        }
        return t;
    }();
    return table.at(static_cast<std::size_t>(which)).at(static_cast<std::size_t>(j - 1));
}

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    CMat vectors;                // columns are eigenvectors, ordered like `values`
};

namespace detail {

// Cyclic complex Jacobi. Each rotation first removes the phase of a_pq, then applies a
// real Givens rotation that annihilates it. Works in place on `a`; accumulates into `v`.
inline void jacobi_hermitian(CMat& a, CMat* v) {
    const std::size_t n = a.rows();
    const double scale = std::max(a.frobenius_norm(), 1e-300);
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-17 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const cplx apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                const cplx phase = apq / mag;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // U restricted to (p,q): [[c, s], [-s conj(phase), c conj(phase)]]
                const cplx upp = c, upq = s;
                const cplx uqp = -s * std::conj(phase), uqq = c * std::conj(phase);
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * upp + akq * uqp;
                    a(k, q) = akp * upq + akq * uqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx apk = a(p, k), aqk = a(q, k);
                    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
                    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                if (v) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const cplx vkp = (*v)(k, p), vkq = (*v)(k, q);
                        (*v)(k, p) = vkp * upp + vkq * uqp;
                        (*v)(k, q) = vkp * upq + vkq * uqq;
                    }
                }
            }
        }
    }
}

} // namespace detail

/// Eigenvalues of a Hermitian matrix, ascending.
/// Throws ValidationError naming the largest asymmetry if `m` is not Hermitian.
inline std::vector<double> hermitian_eigvals(const CMat& m) {
    require_hermitian(m, "hermitian_eigvals");
    CMat a = m;
    detail::jacobi_hermitian(a, nullptr);
    std::vector<double> w(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) w[i] = a(i, i).real();
    std::sort(w.begin(), w.end());
    return w;
}

inline EigenDecomposition hermitian_eig(const CMat& m) {
    require_hermitian(m, "hermitian_eig");
    const std::size_t n = m.rows();
    CMat a = m;
    CMat v = CMat::identity(n);
    detail::jacobi_hermitian(a, &v);
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    EigenDecomposition out{std::vector<double>(n), CMat(n, n)};
    for (std::size_t c = 0; c < n; ++c) {
        out.values[c] = a(order[c], order[c]).real();
        for (std::size_t r = 0; r < n; ++r) out.vectors(r, c) = v(r, order[c]);
    }
    return out;
}

inline double min_eigval(const CMat& m) { return hermitian_eigvals(m).front(); }

// PSD iff the smallest eigenvalue is >= -tol * max(1, ||m||_F).
inline bool is_psd(const CMat& m, double tol = kDefaultPsdTol) {
    if (m.rows() == 0) return true;
    return min_eigval(m) >= -tol * std::max(1.0, m.frobenius_norm());
}

/// Transposition of the second qubit (id ⊗ T) of a 4×4 operator.
inline CMat partial_transpose(const CMat& rho) {
    if (rho.rows() != 4 || rho.cols() != 4)
        throw ValidationError("partial_transpose: expected 4x4, got " + shape_str(rho));
    CMat r(4, 4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) r(2 * i + j, 2 * k + l) = rho(2 * i + l, 2 * k + j);
    return r;
}

/// exp(A) - I by scaling and squaring of the Taylor series without its constant term,
/// doubling with exp(2X) - I = E(E + 2I). Accurate in the relative sense when ‖A‖ is small.
inline CMat expm_minus_identity(const CMat& a) {
    if (!a.is_square()) throw ValidationError("expm: expected a square matrix, got " + shape_str(a));
    const double norm = a.frobenius_norm();
    int squarings = 0;
    if (norm > 0.25) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.25)));
    const CMat x = a * std::ldexp(1.0, -squarings);
    CMat e = x;
    CMat term = x;
    for (int k = 2; k <= 30; ++k) {
        term = term * x * (1.0 / k);
        e += term;
        if (term.max_abs() <= 1e-18 * e.max_abs()) break;
    }
    const CMat two = 2.0 * CMat::identity(a.rows());
    for (int s = 0; s < squarings; ++s) e = e * (e + two);
    return e;
}

inline CMat expm(const CMat& a) { return expm_minus_identity(a) + CMat::identity(a.rows()); }

/// Validated 4×4 two-qubit density matrix: unit trace, Hermitian, eigenvalues >= -1e-10.
class TwoQubitState {
public:
    explicit TwoQubitState(CMat m) : m_(std::move(m)) {
        if (m_.rows() != 4 || m_.cols() != 4)
            throw ValidationError("TwoQubitState: expected 4x4, got " + shape_str(m_));
        require_hermitian(m_, "TwoQubitState");
        const cplx tr = m_.trace();
        if (std::abs(tr - 1.0) > 1e-12) {
            std::ostringstream os;
            os << "TwoQubitState: trace " << tr.real() << " differs from 1";
            throw ValidationError(os.str());
        }
        const double lo = min_eigval(m_);
        if (lo < -1e-10) {
            std::ostringstream os;
            os << "TwoQubitState: negative eigenvalue " << lo;
            throw ValidationError(os.str());
        }
    }

    const CMat& matrix() const noexcept { return m_; }
    operator const CMat&() const noexcept { return m_; }

private:
    CMat m_;
};

using Ket2 = std::array<cplx, 2>;

inline CMat projector(const Ket2& k) {
    CMat p(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) p(i, j) = k[i] * std::conj(k[j]);
    return p;
}

inline TwoQubitState product_state(const Ket2& a, const Ket2& b) {
    return TwoQubitState(kron(projector(a), projector(b)));
}

// (cos θ/2, e^{iφ} sin θ/2)
inline Ket2 bloch_ket(double theta, double phi) {
    return {cplx(std::cos(0.5 * theta)), std::polar(std::sin(0.5 * theta), phi)};
}

} // namespace entgen::qlin
