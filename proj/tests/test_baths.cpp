#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "support.hpp"

using namespace entgen;
using namespace entgen::testing;
using qlin::CMat;

namespace {

const cplx I(0.0, 1.0);

baths::ThermalBath single_mode(double omega, double beta, baths::Vec3c c1, baths::Vec3c c2) {
    baths::ThermalBath b;
    b.beta = beta;
    b.modes.push_back({omega, c1, c2});
    return b;
}

using mp = boost::multiprecision::cpp_bin_float_50;

struct MpComplex {
    mp re, im;
};

MpComplex mul(const MpComplex& a, const MpComplex& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

// D^{αγ}_{jk}(τ) = Σ_ℓ conj(c^α_j) c^γ_k e^{-iωτ} e^{βω}/(e^{βω}-1) + c^α_j conj(c^γ_k) e^{iωτ}/(e^{βω}-1),
// summed in 50-digit arithmetic.
CMat thermal_reference(const baths::ThermalBath& b, double tau) {
    CMat out(6, 6);
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            MpComplex acc{0, 0};
            for (const auto& mode : b.modes) {
                const cplx xm = (m < 3 ? mode.c1 : mode.c2)[m % 3];
                const cplx xn = (n < 3 ? mode.c1 : mode.c2)[n % 3];
                const mp w = mode.omega, beta = b.beta, t = tau;
                const mp e = exp(beta * w);
                const mp emit = e / (e - 1), absorb = 1 / (e - 1);
                const MpComplex down{cos(w * t), -sin(w * t)}, up{cos(w * t), sin(w * t)};
                const MpComplex a = mul(MpComplex{mp(xm.real()), -mp(xm.imag())}, MpComplex{mp(xn.real()), mp(xn.imag())});
                const MpComplex c = mul(MpComplex{mp(xm.real()), mp(xm.imag())}, MpComplex{mp(xn.real()), -mp(xn.imag())});
                const MpComplex t1 = mul(a, down), t2 = mul(c, up);
                acc.re += t1.re * emit + t2.re * absorb;
                acc.im += t1.im * emit + t2.im * absorb;
            }
            out(m, n) = cplx(static_cast<double>(acc.re), static_cast<double>(acc.im));
        }
    return out;
}

baths::Vec3c random_vec(std::mt19937_64& eng) {
    std::normal_distribution<double> n01;
    return {cplx(n01(eng), n01(eng)), cplx(n01(eng), n01(eng)), cplx(n01(eng), n01(eng))};
}

} // namespace

TEST(ThermalCorrelation, EqualTimeSingleRealModeIsCoth) {
    const auto b = single_mode(1.3, 0.7, {0.4, -1.1, 0.3}, {0.2, 0.5, -0.9});
    const CMat d = baths::thermal_correlation(b, 2.0, 2.0);
    const double coth = 1.0 / std::tanh(0.5 * 0.7 * 1.3);
    const std::array<double, 6> x{0.4, -1.1, 0.3, 0.2, 0.5, -0.9};
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            EXPECT_NEAR(d(m, n).real(), x[m] * x[n] * coth, 1e-12);
            EXPECT_NEAR(d(m, n).imag(), 0.0, 1e-12);
        }
}

TEST(ThermalCorrelation, EqualTimeIsReCothPlusIIm) {
    auto eng = rng::make_engine(301, 0);
    const auto b = single_mode(0.8, 1.7, random_vec(eng), random_vec(eng));
    const CMat d = baths::thermal_correlation(b, 0.0, 0.0);
    const double coth = 1.0 / std::tanh(0.5 * 1.7 * 0.8);
    for (std::size_t m = 0; m < 6; ++m)
        for (std::size_t n = 0; n < 6; ++n) {
            const cplx xm = (m < 3 ? b.modes[0].c1 : b.modes[0].c2)[m % 3];
            const cplx xn = (n < 3 ? b.modes[0].c1 : b.modes[0].c2)[n % 3];
            const cplx g = std::conj(xm) * xn;
            EXPECT_NEAR(d(m, n).real(), g.real() * coth, 1e-12);
            EXPECT_NEAR(d(m, n).imag(), g.imag(), 1e-12);
        }
}

TEST(ThermalCorrelation, ZeroTemperatureLimitIsExact) {
    const auto b = single_mode(1.0, 800.0, {1.0, 0.0, 0.0}, {1.0, 0.0, 0.0});
    EXPECT_NEAR(baths::thermal_correlation(b, 0.0, 0.0)(0, 0).real(), 1.0, 1e-12);
    const auto f = baths::bose_factors(800.0, 1.0);
    EXPECT_EQ(f.emission, 1.0);
    EXPECT_EQ(f.absorption, 0.0);
}

TEST(ThermalCorrelation, MatchesFiftyDigitSummation) {
    for (std::uint64_t i = 0; i < 10; ++i) {
        auto eng = rng::make_engine(302, i);
        std::uniform_real_distribution<double> w(0.2, 3.0);
        baths::ThermalBath b;
        b.beta = w(eng);
        for (int l = 0; l < 2; ++l) b.modes.push_back({w(eng), random_vec(eng), random_vec(eng)});
        const double s = 1.1, t = s + 0.3;
        EXPECT_LE(max_abs_diff(baths::thermal_correlation(b, t, s), thermal_reference(b, 0.3)), 1e-10);
    }
}

TEST(ThermalCorrelation, TranslationInvariantAndHermitian) {
    auto eng = rng::make_engine(303, 0);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int i = 0; i < 50; ++i) {
        const auto b = single_mode(1.0 + 0.1 * i, 0.9, random_vec(eng), random_vec(eng));
        const double t = u(eng), s = u(eng), h = u(eng);
        EXPECT_LE(max_abs_diff(baths::thermal_correlation(b, t, s), baths::thermal_correlation(b, t + h, s + h)), 1e-12);
        EXPECT_LE(max_abs_diff(baths::thermal_correlation(b, t, s), baths::thermal_correlation(b, s, t).adjoint()), 1e-12);
    }
}

TEST(ThermalCorrelation, InvalidParametersAreModelErrors) {
    EXPECT_THROW(baths::thermal_correlation(single_mode(1.0, -1.0, {}, {}), 0, 0), ModelError);
    EXPECT_THROW(baths::thermal_correlation(single_mode(0.0, 1.0, {}, {}), 0, 0), ModelError);
}

TEST(CommonBathDelta, RealCouplingsHaveNoAntisymmetricPart) {
    auto b = single_mode(1.0, 2.0, {0.3, 1.0, -0.2}, {0.3, 1.0, -0.2});
    b.modes.push_back({2.0, {1.0, 0.0, 0.5}, {1.0, 0.0, 0.5}});
    const auto r = baths::common_bath_delta(b);
    EXPECT_EQ(r.x.max_abs(), 0.0);
    EXPECT_EQ(r.delta.imag_part().max_abs(), 0.0);
}

TEST(CommonBathDelta, GramImaginaryPart) {
    // C₁ = (1, ...), C₂ = (i, ...) stacked over modes: x₁₂ = Im⟨C₂|C₁⟩ = Im(-i) = -1.
    const auto r = baths::common_bath_delta(single_mode(1.0, 1000.0, {1.0, I, 0.0}, {1.0, I, 0.0}));
    EXPECT_DOUBLE_EQ(r.x(0, 1).real(), -1.0);
    EXPECT_DOUBLE_EQ(r.x(1, 0).real(), 1.0);
    const CMat expected{{1.0, I, 0.0}, {-I, 1.0, 0.0}, {0.0, 0.0, 0.0}};
    EXPECT_LE(max_abs_diff(r.delta, expected), 1e-12);
    const auto w = qlin::hermitian_eigvals(r.delta);
    EXPECT_NEAR(w[0], 0.0, 1e-12);
    EXPECT_NEAR(w[1], 0.0, 1e-12);
    EXPECT_NEAR(w[2], 2.0, 1e-12);
}

TEST(CommonBathDelta, AssemblesIntoReplicatedBlocks) {
    auto eng = rng::make_engine(304, 0);
    const auto c = random_vec(eng);
    const auto b = single_mode(0.7, 1.5, c, c);
    const auto r = baths::common_bath_delta(b);
    EXPECT_LE(max_abs_diff(baths::thermal_correlation(b, 0, 0), baths::block_replicate(r.delta)), 1e-12);
    EXPECT_TRUE(qlin::is_psd(r.delta));
    EXPECT_LE(max_abs_diff(r.x, -1.0 * r.x.transpose()), 0.0);
}

TEST(CommonBathDelta, UnequalCouplingsRejected) {
    EXPECT_THROW(baths::common_bath_delta(single_mode(1.0, 1.0, {1.0, 0, 0}, {0, 1.0, 0})), ModelError);
}

TEST(WienerDelta, ZeroTimeIsOffsetOuterProduct) {
    baths::WienerFieldModel w;
    w.mu = CMat::identity(3);
    w.c = {1.0, I, 0.0};
    const CMat d = baths::wiener_delta(w, 0.0);
    EXPECT_DOUBLE_EQ(d(0, 1).imag(), -1.0);
    EXPECT_LE(max_abs_diff(d, baths::outer(w.c, w.c)), 0.0);
}

TEST(WienerDelta, IdentityMuScalesWithTime) {
    baths::WienerFieldModel w;
    w.mu = CMat::identity(3);
    const CMat d = baths::wiener_delta(w, 2.0);
    EXPECT_LE(max_abs_diff(d, 2.0 * CMat::identity(3)), 0.0);
    EXPECT_EQ(d.imag_part().max_abs(), 0.0);
}

TEST(WienerDelta, AffineInT0AndPsd) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto eng = rng::make_engine(305, i);
        baths::WienerFieldModel w;
        w.mu = random_complex(eng, 3, 3);
        w.c = random_vec(eng);
        const double t0 = 0.25 * static_cast<double>(i % 9);
        const CMat d0 = baths::wiener_delta(w, 0.0), d1 = baths::wiener_delta(w, 1.0);
        EXPECT_LE(max_abs_diff(baths::wiener_delta(w, t0) - d0, t0 * (d1 - d0)), 1e-12);
        EXPECT_TRUE(qlin::is_psd(baths::wiener_delta(w, t0)));
    }
}

TEST(WienerDelta, RealFieldsGiveRealDelta) {
    for (std::uint64_t i = 0; i < 100; ++i) {
        auto eng = rng::make_engine(306, i);
        const auto w = oracle::random_real_wiener(eng);
        for (double t0 : {0.0, 0.5, 3.0}) EXPECT_EQ(baths::wiener_delta(w, t0).imag_part().max_abs(), 0.0);
    }
}

TEST(WienerDelta, NegativeTimeRejected) {
    EXPECT_THROW(baths::wiener_delta(baths::WienerFieldModel{}, -0.1), ModelError);
}

TEST(DeltaFamily, OuShapedCAtHalfEpsilon) {
    baths::DeltaFamily f;
    f.profile = baths::DeltaProfile::Exponential;
    f.epsilon = 0.5;
    f.a_scale = f.b_scale = 0.0;
    EXPECT_DOUBLE_EQ(baths::delta_family_value(f, 0.0), 1.0);
    for (double t : {0.1, 0.7, -1.3}) EXPECT_NEAR(baths::delta_family_value(f, t), baths::ou_kernel(0.5, t), 1e-15);
}

TEST(DeltaFamily, UnitEpsilonSumsProfilesAtZero) {
    for (auto p : {baths::DeltaProfile::Exponential, baths::DeltaProfile::Gaussian, baths::DeltaProfile::Triangular}) {
        baths::DeltaFamily f;
        f.profile = p;
        f.a_scale = 0.5;
        f.b_scale = 2.0;
        EXPECT_DOUBLE_EQ(baths::delta_family_value(f, 0.0),
                         baths::profile_a(f, 0) + baths::profile_b(f, 0) + baths::profile_c(f, 0));
    }
}

TEST(DeltaFamily, ThreeTermFitRecoversProfileCoefficients) {
    for (auto p : {baths::DeltaProfile::Exponential, baths::DeltaProfile::Gaussian, baths::DeltaProfile::Triangular}) {
        baths::DeltaFamily f;
        f.profile = p;
        f.a_scale = 0.5;
        f.b_scale = 2.0;
        std::vector<double> eps{1.0, 0.3, 0.1, 0.03, 0.01}, y;
        for (double e : eps) {
            f.epsilon = e;
            y.push_back(baths::delta_family_value(f, 0.0));
        }
        const auto fit = fit_three_term(eps, y);
        EXPECT_LE(fit.max_residual, 1e-9);
        EXPECT_NEAR(fit.inv_eps, baths::profile_c(f, 0.0), 1e-9);
        EXPECT_NEAR(fit.constant, baths::profile_b(f, 0.0), 1e-9);
        EXPECT_NEAR(fit.linear, baths::profile_a(f, 0.0), 1e-9);
    }
}

TEST(DeltaFamily, CProfilesIntegrateToOne) {
    for (auto p : {baths::DeltaProfile::Exponential, baths::DeltaProfile::Gaussian, baths::DeltaProfile::Triangular}) {
        baths::DeltaFamily f;
        f.profile = p;
        // Even profiles: twice the half-line integral, split at the triangular kink.
        auto c = [&](double x) { return baths::profile_c(f, x); };
        const double inner = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(c, 0.0, 1.0, 15, 1e-14);
        const double outer = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(c, 1.0, 60.0, 15, 1e-14);
        EXPECT_NEAR(2.0 * (inner + outer), 1.0, 1e-6) << baths::to_string(p);
    }
}

TEST(DeltaFamily, NonPositiveEpsilonRejected) {
    baths::DeltaFamily f;
    f.epsilon = 0.0;
    EXPECT_THROW(baths::delta_family_value(f, 0.0), ModelError);
}

TEST(OuKernel, ValueSymmetryAndNormalization) {
    EXPECT_DOUBLE_EQ(baths::ou_kernel(0.5, 0.0), 1.0);
    for (double x : {0.1, 0.9, 4.0}) EXPECT_EQ(baths::ou_kernel(0.7, x), baths::ou_kernel(0.7, -x));
    auto k = [](double x) { return baths::ou_kernel(0.3, x); };
    const double half = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(k, 0.0, 40.0, 15, 1e-14);
    EXPECT_NEAR(2.0 * half, 1.0, 1e-10);
    EXPECT_THROW(baths::ou_kernel(0.0, 1.0), ModelError);
}

TEST(OuKernel, DoubleIntegralMatchesQuadrature) {
    using boost::math::quadrature::gauss_kronrod;
    for (double eps : {0.1, 0.5, 2.0})
        for (double t : {0.3, 1.0, 4.0}) {
            auto inner = [&](double tau) {
                return gauss_kronrod<double, 61>::integrate([&](double s) { return baths::ou_kernel(eps, tau - s); }, 0.0,
                                                            tau, 10, 1e-13);
            };
            const double q = gauss_kronrod<double, 61>::integrate(inner, 0.0, t, 10, 1e-12);
            EXPECT_NEAR(baths::ou_double_integral(eps, t), q, 1e-9) << "eps " << eps << " t " << t;
        }
}

TEST(OuSampler, ExactTransitionMoments) {
    const double eps = 0.4, step = 0.3, var = 1.0 / (2.0 * eps), a = step / eps;
    const baths::OUSampler s(eps, step);
    const std::size_t n = 200000;
    double sx = 0, sxx = 0, sy = 0, syy = 0, sx0x1 = 0, sx0y = 0;
    for (std::size_t i = 0; i < n; ++i) {
        auto eng = rng::make_engine(307, i);
        const double x0 = s.draw_stationary(eng);
        const auto inc = s.advance(x0, eng);
        sx += inc.value;
        sxx += inc.value * inc.value;
        sy += inc.integral;
        syy += inc.integral * inc.integral;
        sx0x1 += x0 * inc.value;
        sx0y += x0 * inc.integral;
    }
    const double dn = static_cast<double>(n);
    // Stationary covariance C(u) = var e^{-u/ε}; Var ∫_0^h x = 2 var ε² (a - 1 + e^{-a});
    // Cov(x(0), ∫_0^h x) = var ε (1 - e^{-a}).
    const double var_int = 2.0 * var * eps * eps * (a - 1.0 + std::exp(-a));
    const double cov_int = var * eps * (1.0 - std::exp(-a));
    const double se = 5.0 / std::sqrt(dn);
    EXPECT_NEAR(sx / dn, 0.0, se * std::sqrt(var));
    EXPECT_NEAR(sxx / dn, var, se * var * std::sqrt(2.0));
    EXPECT_NEAR(sy / dn, 0.0, se * std::sqrt(var_int));
    EXPECT_NEAR(syy / dn, var_int, se * var_int * std::sqrt(2.0));
    EXPECT_NEAR(sx0x1 / dn, var * std::exp(-a), se * var * 1.5);
    EXPECT_NEAR(sx0y / dn, cov_int, se * std::sqrt(var * var_int) * 1.5);
}

TEST(OuSampler, PathIsDeterministicGivenSeed) {
    auto e1 = rng::make_engine(9, 0), e2 = rng::make_engine(9, 0);
    EXPECT_EQ(baths::sample_ou_path(0.5, 0.1, 50, e1), baths::sample_ou_path(0.5, 0.1, 50, e2));
}

TEST(Correlation, HermitianAcrossAllModels) {
    auto eng = rng::make_engine(308, 0);
    baths::DeltaFamily f;
    f.epsilon = 0.3;
    f.a_weight = random_gram(eng, 6, 2);
    f.b_weight = random_gram(eng, 6, 3);
    f.c_weight = random_gram(eng, 6, 1);
    baths::WienerFieldModel w;
    w.mu = random_complex(eng, 3, 3);
    w.c = random_vec(eng);
    const std::vector<baths::CorrelationModel> models{oracle::random_example1_bath(eng), baths::OUNoise{0.7, 1.0}, w, f};
    for (const auto& m : models)
        for (auto [t, s] : {std::pair{0.4, 1.3}, std::pair{2.0, 0.1}}) {
            const CMat a = baths::correlation(m, t, s, 0.2);
            const CMat b = baths::correlation(m, s, t, 0.2);
            EXPECT_LE(max_abs_diff(a, b.adjoint()), 1e-12) << baths::model_name(m);
        }
}

TEST(CustomEqualTime, InterpolatesAndClamps) {
    baths::CustomEqualTime c;
    c.table.emplace_back(0.0, CMat::identity(6));
    c.table.emplace_back(2.0, 3.0 * CMat::identity(6));
    EXPECT_DOUBLE_EQ(baths::custom_equal_time_at(c, 1.0)(0, 0).real(), 2.0);
    EXPECT_DOUBLE_EQ(baths::custom_equal_time_at(c, 5.0)(0, 0).real(), 3.0);
    EXPECT_THROW(baths::correlation(baths::CorrelationModel{c}, 1.0, 0.5), ModelError);
}
