#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "superfluid/instability.hpp"
#include "superfluid/quadrature.hpp"

using namespace superfluid;
using namespace superfluid::instability;

namespace {

constexpr double pi = std::numbers::pi;

ProfilePair ramps() { return ProfilePair::cosine_ramps(1.0, 2.0, 3.0); }

}  // namespace

TEST(EnergyIncrement, IdentityWithoutDriftIsZero) {
    for (int d : {1, 3}) {
        const UniformCurrentState state{1.0, 0.5, 0.0, {}};
        const auto e = energy_increment(state, {d, 5.0, 1.0, 2.0, 3.0}, ProfilePair::identity(),
                                        PairInteraction::smooth_bump(2.0, 0.5));
        EXPECT_EQ(e.t1, 0.0);
        EXPECT_EQ(e.t2, 0.0);
        EXPECT_EQ(e.t3, 0.0);
    }
}

TEST(EnergyIncrement, IdentityWithDriftRejected) {
    EXPECT_THROW(validate_profiles(ProfilePair::identity(), {1, 5.0, 1.0, 2.0, 3.0}, 1.0), std::invalid_argument);
    EXPECT_NO_THROW(validate_profiles(ProfilePair::identity(), {1, 5.0, 1.0, 2.0, 3.0}, 0.0));
    EXPECT_NO_THROW(validate_profiles(ramps(), {3, 5.0, 1.0, 2.0, 3.0}, 1.0));
}

TEST(EnergyIncrement, OneDimensionalClosedForms) {
    // cosine ramps: int_0^a g^2 = 3a/8, int (g')^2 = pi^2 / (8 w) per ramp of width w
    const double n = 1.3, t = 0.5, v = 0.8, R = 50.0;
    const auto e = energy_increment({n, t, v, {}}, {1, R, 1.0, 2.0, 3.0}, ramps(), PairInteraction::none());
    const double t1 = -0.5 * n * v * v * 2.0 * (R + 3.0 / 8.0);
    const double g2_minus_1 = (3.0 / 8.0 - 1.0) + (0.0 - 1.0) + (3.0 / 8.0 - 1.0);
    const double t2 = 2.0 * (t * g2_minus_1 + 0.5 * n * 2.0 * pi * pi / 8.0);
    EXPECT_NEAR(e.t1, t1, 1e-12 * std::abs(t1));
    EXPECT_NEAR(e.t2, t2, 1e-12 * std::abs(t2));
    EXPECT_EQ(e.t3, 0.0);
}

TEST(EnergyIncrement, OneDimensionalExample) {
    const auto e = energy_increment({1.0, 0.5, 1.0, {}}, {1, 50.0, 1.0, 2.0, 3.0}, ramps(), PairInteraction::none());
    EXPECT_NEAR(e.t1, -50.0, 0.05 * 50.0);
    EXPECT_LT(std::abs(e.t2), 5.0);
    EXPECT_LT(e.total(), 0.0);
    const auto fine = energy_increment({1.0, 0.5, 1.0, {}}, {1, 50.0, 1.0, 2.0, 3.0}, ramps(), PairInteraction::none(),
                                       {240});
    EXPECT_NEAR(e.total(), fine.total(), 1e-10 * std::abs(fine.total()));
}

TEST(EnergyIncrement, ThreeDimensionalKineticClosedForm) {
    // T1 = -1/2 n v^2 4 pi (R^3/3 + int_0^a (R+s)^2 g(s)^2 ds), integrated independently
    const double R = 7.0, n = 1.0, v = 1.0;
    const auto p = ramps();
    const auto& rule = gauss_legendre(64);
    double shell = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double s = 0.5 * (rule.nodes[i] + 1.0);
        shell += 0.5 * rule.weights[i] * (R + s) * (R + s) * std::pow(p.g(s), 2);
    }
    const double t1 = -0.5 * n * v * v * 4.0 * pi * (R * R * R / 3.0 + shell);
    const auto e = energy_increment({n, 0.0, v, {}}, {3, R, 1.0, 2.0, 3.0}, p, PairInteraction::none());
    EXPECT_NEAR(e.t1, t1, 1e-12 * std::abs(t1));
}

TEST(EnergyIncrement, ReducedFormEqualsUnreducedKinetic) {
    for (int d : {1, 3}) {
        const UniformCurrentState state{0.9, 0.4, 0.7, {}};
        const ShellConfig shells{d, 6.0, 1.0, 2.0, 3.0};
        const auto e = energy_increment(state, shells, ramps(), PairInteraction::none());
        const double unreduced = kinetic_increment_unreduced(state, shells, ramps());
        EXPECT_NEAR(e.t1 + e.t2, unreduced, 1e-8 * std::abs(unreduced)) << "d=" << d;
    }
}

TEST(EnergyIncrement, InteractionTermNonPositive) {
    for (int d : {1, 3})
        for (double R : {0.5, 5.0, 30.0}) {
            const auto e = energy_increment({1.0, 0.5, 1.0, {}}, {d, R, 1.0, 2.0, 3.0}, ramps(),
                                            PairInteraction::step(1.0, 0.5));
            EXPECT_LE(e.t3, 0.0);
            EXPECT_LE(e.t1, 0.0);
        }
}

TEST(EnergyIncrement, InteractionTermGrowsLikeSurfaceInThreeDimensions) {
    std::vector<double> radii{20.0, 40.0, 80.0}, t3;
    for (double R : radii)
        t3.push_back(energy_increment({1.0, 0.5, 1.0, {}}, {3, R, 1.0, 2.0, 3.0}, ramps(),
                                      PairInteraction::smooth_bump(1.0, 0.5))
                         .t3);
    EXPECT_NEAR(log_log_slope(radii, t3), 2.0, 0.15);
}

TEST(EnergyIncrement, QuadratureOrderDoubling) {
    for (int d : {1, 3}) {
        const ShellConfig shells{d, 12.0, 1.0, 2.0, 3.0};
        const auto a = energy_increment({1.0, 0.5, 1.0, {}}, shells, ramps(), PairInteraction::smooth_bump(1.0, 0.5));
        const auto b = energy_increment({1.0, 0.5, 1.0, {}}, shells, ramps(), PairInteraction::smooth_bump(1.0, 0.5),
                                        {48});
        EXPECT_NEAR(a.total(), b.total(), 1e-6 * std::abs(b.total()));
        EXPECT_NEAR(a.t3, b.t3, 1e-6 * std::abs(b.t3));
    }
}

TEST(EnergyIncrement, ZeroInteractionMeansZeroT3) {
    for (double R : {1.0, 10.0, 100.0})
        EXPECT_EQ(energy_increment({1.0, 0.5, 1.0, {}}, {3, R, 1.0, 2.0, 3.0}, ramps(), PairInteraction::none()).t3,
                  0.0);
}

TEST(ConvolutionHelpers, FirstMomentAndBallVolume) {
    const RadialFunction one = [](double) { return 1.0; };
    EXPECT_NEAR(detail::first_moment(one, 10.0, 3.0, 16), 4.5, 1e-13);
    // u == 1 deep inside its support: (u * w)(r) is the integral of w
    const std::vector<double> bp;
    const double v = detail::radial_convolution_3d(one, 0.0, 10.0, bp, one, 0.5, 3.0, 24);
    EXPECT_NEAR(v, 4.0 * pi / 3.0 * 0.125, 1e-12);
}

TEST(ConvolutionHelpers, GaussianConvolution) {
    // exp(-|y|^2) * exp(-|y|^2) = (pi/2)^(3/2) exp(-r^2/2)
    const RadialFunction g = [](double s) { return std::exp(-s * s); };
    const std::vector<double> bp{1.0, 2.0, 3.0};
    for (double r : {0.3, 1.0, 2.5}) {
        const double v = detail::radial_convolution_3d(g, 0.0, 9.0, bp, g, 9.0, r, 32);
        EXPECT_NEAR(v, std::pow(pi / 2.0, 1.5) * std::exp(-r * r / 2.0), 1e-10) << "r=" << r;
    }
}

TEST(InstabilityRadius, FoundAndTailStaysNegative) {
    const UniformCurrentState state{1.0, 0.0, 0.5, {}};
    const ShellConfig shells{1, 1.0, 1.0, 2.0, 3.0};
    const auto res = find_instability_radius(state, shells, ramps(), PairInteraction::none());
    ASSERT_TRUE(res.radius.has_value());
    EXPECT_FALSE(res.negative_at_lower_bound);
    EXPECT_TRUE(res.tail_decreasing);
    // closed form: dE = -n v^2 (R + 3/8) + n pi^2 / 4  ->  R* = pi^2 / (4 v^2) - 3/8
    EXPECT_NEAR(*res.radius, pi * pi / (4.0 * 0.25) - 0.375, 0.02 * *res.radius);
    for (double f = 1.0; f <= 8.0; f *= 2.0)
        EXPECT_LT(energy_increment(state, shells.with_radius(*res.radius * f * 1.01), ramps(), PairInteraction::none())
                      .total(),
                  0.0);
}

TEST(InstabilityRadius, ScalesLikeInverseSquareDrift) {
    const ShellConfig shells{1, 1.0, 0.25, 0.5, 0.75};
    const auto p = ProfilePair::cosine_ramps(0.25, 0.5, 0.75);
    std::vector<double> speeds{0.5, 1.0, 2.0}, radii;
    for (double v : speeds) {
        const auto res = find_instability_radius({1.0, 0.0, v, {}}, shells, p, PairInteraction::none());
        ASSERT_TRUE(res.radius.has_value());
        radii.push_back(*res.radius);
    }
    EXPECT_NEAR(log_log_slope(speeds, radii), -2.0, 0.15);
}

TEST(InstabilityRadius, NoDriftNoInstability) {
    const auto res = find_instability_radius({1.0, 0.0, 0.0, {}}, {1, 1.0, 1.0, 2.0, 3.0}, ramps(),
                                             PairInteraction::none(), {1e-3, 1e3, 0.01, {}});
    EXPECT_FALSE(res.radius.has_value());
    EXPECT_NE(res.diagnostic.find("no instability"), std::string::npos);
}

TEST(ScalingExponents, VolumeAndSurface) {
    const std::vector<double> radii{40.0, 80.0, 160.0, 320.0};
    for (int d : {1, 3}) {
        const auto fit = scaling_exponents({1.0, 0.5, 1.0, {}}, {d, 1.0, 1.0, 2.0, 3.0}, ramps(),
                                           PairInteraction::smooth_bump(1.0, 0.5), radii);
        EXPECT_NEAR(fit.p1, d, 0.1);
        EXPECT_NEAR(fit.p2, d - 1, 0.15);
        EXPECT_EQ(fit.table.size(), radii.size());
    }
}

TEST(ScalingExponents, NeedsFourRadii) {
    const std::vector<double> radii{20.0, 40.0, 80.0};
    EXPECT_THROW(scaling_exponents({1.0, 0.5, 1.0, {}}, {1, 1.0, 1.0, 2.0, 3.0}, ramps(), PairInteraction::none(),
                                   radii),
                 std::invalid_argument);
}

TEST(ShellConfig, Validation) {
    EXPECT_THROW((ShellConfig{2, 1.0, 1.0, 2.0, 3.0}.validate()), std::invalid_argument);
    EXPECT_THROW((ShellConfig{1, 1.0, 2.0, 1.0, 3.0}.validate()), std::invalid_argument);
    EXPECT_THROW((ShellConfig{1, -1.0, 1.0, 2.0, 3.0}.validate()), std::invalid_argument);
    EXPECT_DOUBLE_EQ((ShellConfig{3, 1.0, 1.0, 2.0, 3.0}.with_radius(4.0).inner_radius), 4.0);
}
