#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "superfluid/girardeau.hpp"
#include "superfluid/thermo.hpp"

using namespace superfluid;
using namespace superfluid::thermo;

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

// Strong-coupling expansion e = (pi^2/6) rho^3 (g/(g+2))^2, g = 2c/rho.
double strong_coupling_energy(double rho, double c) {
    const double g = 2.0 * c / rho;
    return pi * pi / 6.0 * rho * rho * rho * std::pow(g / (g + 2.0), 2);
}

}  // namespace

TEST(Thermo, MethodNames) {
    EXPECT_EQ(to_string(EosMethod::ClosedForm), "closed_form");
    EXPECT_EQ(to_string(EosMethod::IntegralEquation), "integral_equation");
    EXPECT_EQ(to_string(EosMethod::FiniteNExtrapolation), "finite_N_extrapolation");
}

TEST(Thermo, ClosedFormPoint) {
    const auto p = eos_closed_form(1.0);
    EXPECT_DOUBLE_EQ(p.energy_density, pi * pi / 6.0);
    EXPECT_DOUBLE_EQ(p.pressure, pi * pi / 3.0);
    EXPECT_DOUBLE_EQ(p.kappa0, 1.0 / (pi * pi));
    EXPECT_TRUE(std::isinf(p.coupling_c));
    EXPECT_FALSE(p.infinite_compressibility());
}

TEST(Thermo, IdealBoseGasHasInfiniteCompressibility) {
    const auto p = eos_ideal_bose(1.0);
    EXPECT_EQ(p.energy_density, 0.0);
    EXPECT_EQ(p.pressure, 0.0);
    EXPECT_TRUE(p.infinite_compressibility());
    EXPECT_FALSE(p.kappa_violation());
}

TEST(Thermo, StencilDerivativesAgainstCentralDifferenceOracle) {
    auto e = [](double r) { return std::sin(r) + r * r * r; };
    const double rho = 1.3;
    const auto p = eos_from_energy(e, rho, 1.0, EosMethod::ClosedForm);
    const double de = std::cos(rho) + 3 * rho * rho;
    const double pressure = rho * de - e(rho);
    const double dp = rho * (-std::sin(rho) + 6 * rho);
    EXPECT_NEAR(p.pressure, pressure, 1e-10);
    EXPECT_NEAR(p.kappa0, 1.0 / (rho * dp), 1e-9);
}

TEST(Lieb, StrongCouplingMatchesExpansion) {
    for (double c : {500.0, 2000.0}) {
        const double e = energy_density_integral(1.0, c);
        EXPECT_NEAR(e, strong_coupling_energy(1.0, c), 2e-7 * e) << "c=" << c;
    }
}

TEST(Lieb, WeakCouplingMatchesMeanFieldWithBogoliubovCorrection) {
    // e / (c rho^2) = 1 - (4 / 3 pi) sqrt(2c / rho) + O(c)
    const double c = 0.005;
    const double ratio = energy_density_integral(1.0, c, {256}) / c;
    EXPECT_NEAR(ratio, 1.0 - 4.0 / (3.0 * pi) * std::sqrt(2.0 * c), 2e-3);
}

TEST(Lieb, NodeDoublingIsStable) {
    for (double c : {0.3, 1.0, 10.0}) {
        const double e64 = energy_density_integral(1.0, c, {64});
        const double e128 = energy_density_integral(1.0, c, {128});
        EXPECT_LT(std::abs(e64 - e128) / e128, 1e-8) << "c=" << c;
    }
}

TEST(Lieb, SolutionReachesTargetDensity) {
    const auto sol = solve_lieb_at_density(0.8, 1.7);
    EXPECT_NEAR(sol.density, 0.8, 1e-12);
    EXPECT_GT(sol.cutoff, 0.0);
    EXPECT_LT(sol.cutoff, pi * 0.8);
    for (double r : sol.root_density) EXPECT_GT(r, 1.0 / (2.0 * pi) - 1e-14);
}

TEST(Lieb, ScalingCollapseDependsOnGammaOnly) {
    const double a = energy_density_integral(1.0, 1.0);
    const double b = energy_density_integral(2.0, 2.0) / 8.0;
    EXPECT_NEAR(a, b, 1e-11);
    const std::vector<double> grid{0.5, 1.0, 2.0};
    const auto pts = scaling_collapse(1.0, grid);
    ASSERT_EQ(pts.size(), 3u);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].gamma, pts[i - 1].gamma);
    for (std::size_t i = 1; i < pts.size(); ++i) EXPECT_LT(pts[i].e_hat, pts[i - 1].e_hat);
    EXPECT_NEAR(scaling_collapse(inf, grid)[0].e_hat, pi * pi / 6.0, 1e-15);
    EXPECT_EQ(scaling_collapse(0.0, grid)[2].e_hat, 0.0);
}

TEST(Lieb, CompressibilityPositiveAcrossGrid) {
    for (double rho : {0.5, 1.0, 3.0})
        for (double c : {0.1, 1.0, 10.0}) {
            const auto p = eos_integral_equation(rho, c);
            EXPECT_GT(p.kappa0, 0.0);
            EXPECT_TRUE(std::isfinite(p.kappa0));
            EXPECT_GT(p.pressure, 0.0);
        }
}

TEST(Lieb, InvalidInputs) {
    EXPECT_THROW(eos_integral_equation(1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(eos_integral_equation(1.0, inf), std::invalid_argument);
    EXPECT_THROW(solve_lieb_at_density(-1.0, 1.0), std::invalid_argument);
    EXPECT_THROW(energy_density_integral(1.0, 1.0, {4}), std::invalid_argument);
}

TEST(FiniteN, ExtrapolationAgreesWithIntegralEquation) {
    const std::vector<int> sizes{16, 32, 64};
    const auto ext = eos_finite_n(1.0, 1.0, sizes);
    const double reference = energy_density_integral(1.0, 1.0);
    EXPECT_NEAR(ext.value, reference, 1e-5 * reference);
    EXPECT_LT(ext.error_estimate, 1e-4);
    EXPECT_EQ(ext.finite_size_values.size(), 3u);
}

TEST(FiniteN, ImpenetrableExtrapolationIsExact) {
    const std::vector<int> sizes{5, 9, 17};
    const auto ext = eos_finite_n(1.0, inf, sizes);
    EXPECT_NEAR(ext.value, pi * pi / 6.0, 1e-12);
}

TEST(FiniteN, RejectsBadFamilies) {
    const std::vector<int> two{8, 16};
    EXPECT_THROW(eos_finite_n(1.0, 1.0, two), std::invalid_argument);
    const std::vector<int> unordered{16, 8, 32};
    EXPECT_THROW(eos_finite_n(1.0, 1.0, unordered), std::invalid_argument);
}

TEST(EquationOfStateTable, FromPoints) {
    const std::vector<EosPoint> pts{eos_closed_form(1.0), eos_closed_form(2.0)};
    const auto table = EquationOfState::from_points(pts);
    EXPECT_EQ(table.size(), 2u);
    EXPECT_TRUE(table.valid());
    EXPECT_DOUBLE_EQ(table.pressure[1], girardeau::pressure(2.0));
}
