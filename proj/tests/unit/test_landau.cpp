#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "superfluid/bethe.hpp"
#include "superfluid/errors.hpp"
#include "superfluid/landau.hpp"

using namespace superfluid;
using namespace superfluid::landau;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(SoundVelocity, ExactOnGirardeauCurve) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 2.0 * pi, 401);
    const auto fit = sound_velocity(curve);
    EXPECT_NEAR(fit.velocity, pi, 1e-12);
    EXPECT_NEAR(fit.curvature, 0.5, 1e-10);
    EXPECT_EQ(fit.samples_used, 6u);
    EXPECT_NEAR(fit.window_halving_change, 0.0, 1e-12);
}

TEST(SoundVelocity, TooFewSamplesIsNumericalError) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 1.0, 3);
    EXPECT_THROW(sound_velocity(curve), NumericalError);
    SoundFitOptions narrow;
    narrow.k_window = 1e-6;
    EXPECT_THROW(sound_velocity(girardeau_branch(1.0, BranchKind::ParticleTypeI, 1.0, 100), narrow), NumericalError);
}

TEST(CriticalVelocity, GirardeauIsPi) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 2.0 * pi, 201);
    const auto vc = critical_velocity(curve);
    EXPECT_NEAR(vc.velocity, pi, 1e-12);
    EXPECT_TRUE(vc.at_boundary);
}

TEST(CriticalVelocity, FreeParticlesHaveNone) {
    const auto vc = critical_velocity(free_particle_branch(1.0, 5.0, 101));
    EXPECT_NEAR(vc.velocity, 0.0, 1e-12);
}

TEST(CriticalVelocity, HoleBranchVanishesAtUmklapp) {
    const auto vc = critical_velocity(girardeau_branch(1.0, BranchKind::HoleTypeII, 2.0 * pi, 201));
    EXPECT_NEAR(vc.velocity, 0.0, 1e-12);
    EXPECT_NEAR(vc.minimizing_k, 2.0 * pi, 1e-12);
}

TEST(CriticalVelocity, InteriorMinimumRefinedByParabola) {
    // eps = k (1 + (k - 1)^2): eps/k has its minimum 1 at k = 1, between samples
    DispersionBranch curve{BranchKind::ParticleTypeI, 1.0, {}};
    for (int i = 0; i <= 30; ++i) {
        const double k = 0.07 * i;
        curve.samples.push_back({k, k * (1.0 + (k - 1.0) * (k - 1.0))});
    }
    const auto vc = critical_velocity(curve);
    EXPECT_NEAR(vc.velocity, 1.0, 1e-12);
    EXPECT_NEAR(vc.minimizing_k, 1.0, 1e-9);
    EXPECT_FALSE(vc.at_boundary);
}

TEST(CriticalVelocity, FlatCurveIsDegenerate) {
    DispersionBranch curve{BranchKind::ParticleTypeI, 1.0, {{0.0, 0.0}, {1.0, 0.0}, {2.0, 0.0}}};
    EXPECT_TRUE(critical_velocity(curve).degenerate);
}

TEST(Stability, BoostsBelowAndAboveVc) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 2.0 * pi, 801);
    EXPECT_TRUE(is_stable(curve, {3.0}).stable);
    EXPECT_TRUE(is_stable(curve, {-3.0}).stable);
    const auto bad = is_stable(curve, {3.3});
    EXPECT_FALSE(bad.stable);
    EXPECT_LT(bad.margin, 0.0);
    EXPECT_THROW(is_stable(curve, {std::nan("")}), std::invalid_argument);
}

TEST(Stability, MonotoneInSpeed) {
    const auto curve = bethe::dispersion_curve({21, 21.0, 1.0}, BranchKind::ParticleTypeI, 21);
    bool seen_unstable = false;
    for (double v = 0.0; v < 4.0; v += 0.05) {
        const bool stable = is_stable(curve, {v}).stable;
        if (seen_unstable) EXPECT_FALSE(stable) << "v=" << v;
        seen_unstable = seen_unstable || !stable;
    }
    EXPECT_TRUE(seen_unstable);
}

TEST(Stability, BisectionMatchesInfimum) {
    const auto curve = girardeau_branch(2.0, BranchKind::ParticleTypeI, 4.0 * pi, 2001);
    double inf_ratio = 1e300;
    for (const auto& s : curve.samples)
        if (s.k > 0) inf_ratio = std::min(inf_ratio, s.epsilon / s.k);
    // the stability predicate tolerates eps - v k >= -1e-9 max(eps), worth 1e-9 max(eps) / k_1 in v
    const double slack = 1e-9 * curve.max_energy() / curve.samples[1].k;
    const double v = bisect_critical_velocity(curve, 1e-14);
    EXPECT_GE(v, inf_ratio - 1e-12);
    EXPECT_LE(v, inf_ratio + slack + 1e-12);
}

TEST(Consistency, GirardeauPassesEverything) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 4.0 * pi, 2001);
    const auto report = consistency_report(curve, thermo::eos_closed_form(1.0));
    EXPECT_TRUE(report.all_passed());
    EXPECT_NEAR(report.v_c, pi, 1e-12);
    EXPECT_NEAR(report.v_s_slope, pi, 1e-12);
    EXPECT_NEAR(report.v_s_kappa, pi, 1e-12);
    ASSERT_NE(report.find(kVsAgreement), nullptr);
    EXPECT_EQ(report.find("no such check"), nullptr);
}

TEST(Consistency, IdealGasFailsFiniteCompressibility) {
    const auto report = consistency_report(free_particle_branch(1.0, 2.0, 101), thermo::eos_ideal_bose(1.0));
    EXPECT_FALSE(report.find(kFiniteCompressibility)->passed);
    EXPECT_TRUE(report.find(kKappaNonNegative)->passed);
    EXPECT_FALSE(report.all_passed());
}

TEST(Consistency, InteractingGasSlopeMatchesCompressibility) {
    const int n = 201;
    for (double c : {1.0, 5.0}) {
        const auto curve = bethe::dispersion_curve({n, static_cast<double>(n), c}, BranchKind::ParticleTypeI, 8);
        const auto report = consistency_report(curve, thermo::eos_integral_equation(1.0, c));
        EXPECT_TRUE(report.all_passed()) << "c=" << c;
        EXPECT_LT(report.find(kVsAgreement)->value, 0.03);
    }
}

TEST(Consistency, DensityMismatchRejected) {
    const auto curve = girardeau_branch(1.0, BranchKind::ParticleTypeI, 1.0, 50);
    EXPECT_THROW(consistency_report(curve, thermo::eos_closed_form(2.0)), std::invalid_argument);
}
