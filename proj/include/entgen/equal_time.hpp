// equal_time.hpp — equal-time correlation matrix D(t0) of a Gaussian environment

#pragma once

#include <sstream>

#include "entgen/baths.hpp"
#include "entgen/coeffs.hpp"

namespace entgen::coeffs {

/// D^{αγ}_{jk} = 𝔇^{αγ}_{jk}(t0, t0; t0), packed into a BlockCoeffMatrix with zero h blocks
/// (the induced Hamiltonian vanishes at coinciding times). Throws ModelError if the model
/// cannot be evaluated or yields a matrix that is not PSD.
inline BlockCoeffMatrix equal_time_D(const baths::CorrelationModel& model, double t0) {
    if (!(t0 >= 0.0)) throw ModelError("equal_time_D: t0 must be >= 0");
    const CMat d = baths::correlation(model, t0, t0, t0);
    if (!qlin::is_hermitian(d)) throw ModelError("equal_time_D: correlation matrix is not Hermitian");
    if (!qlin::is_psd(d, qlin::kDefaultPsdTol)) {
        std::ostringstream os;
        os << "equal_time_D: " << baths::model_name(model) << " model gives a non-PSD equal-time matrix (min eigenvalue "
           << qlin::min_eigval(d) << ")";
        throw ModelError(os.str());
    }
    return from_assembled(d);
}

} // namespace entgen::coeffs
