#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "superfluid/quadrature.hpp"

using namespace superfluid;

namespace {

double monomial_integral(int k) { return k % 2 == 1 ? 0.0 : 2.0 / (k + 1); }

}  // namespace

TEST(GaussLegendre, ExactForPolynomialsUpToDegree2nMinus1) {
    for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
        const auto rule = gauss_legendre(n);
        for (int k = 0; k <= static_cast<int>(2 * n - 1) && k <= 40; ++k) {
            double sum = 0.0;
            for (std::size_t i = 0; i < n; ++i) sum += rule.weights[i] * std::pow(rule.nodes[i], k);
            EXPECT_NEAR(sum, monomial_integral(k), 1e-13) << "n=" << n << " k=" << k;
        }
    }
}

TEST(GaussLegendre, NodesIncreasingAndSymmetric) {
    const auto rule = gauss_legendre(37);
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        EXPECT_NEAR(rule.nodes[i], -rule.nodes[36 - i], 1e-15);
        EXPECT_NEAR(rule.weights[i], rule.weights[36 - i], 1e-15);
        EXPECT_GT(rule.weights[i], 0.0);
    }
}

TEST(GaussLegendre, SinglePointRule) {
    const auto rule = gauss_legendre(1);
    ASSERT_EQ(rule.nodes.size(), 1u);
    EXPECT_EQ(rule.nodes[0], 0.0);
    EXPECT_DOUBLE_EQ(rule.weights[0], 2.0);
}

TEST(GaussLegendre, LargeRuleWeightsSumToTwo) {
    const auto& rule = cached_gauss_legendre(2048);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-12);
    EXPECT_EQ(&rule, &cached_gauss_legendre(2048));
}

TEST(GaussLegendre, ZeroPointsRejected) { EXPECT_THROW(gauss_legendre(0), std::invalid_argument); }

TEST(IntegratePanels, KinkIsExactWithBreakpoint) {
    const std::vector<double> bp{0.0};
    const double v = integrate_panels([](double x) { return std::abs(x); }, -1.0, 2.0, bp, 2);
    EXPECT_NEAR(v, 2.5, 1e-14);
}

TEST(IntegratePanels, BreakpointsOutsideIgnoredAndUnsortedAccepted) {
    const std::vector<double> bp{5.0, 0.5, -3.0, 0.25};
    const double v = integrate_panels([](double x) { return std::exp(x); }, 0.0, 1.0, bp, 8);
    EXPECT_NEAR(v, std::exp(1.0) - 1.0, 1e-14);
}

TEST(LogLogSlope, RecoversPowerLaw) {
    const std::vector<double> x{1.0, 2.0, 4.0, 8.0};
    std::vector<double> y;
    for (double v : x) y.push_back(-3.0 * std::pow(v, 2.5));
    EXPECT_NEAR(log_log_slope(x, y), 2.5, 1e-12);
}

TEST(LogLogSlope, RejectsMismatchedInput) {
    const std::vector<double> x{1.0, 2.0};
    const std::vector<double> y{1.0};
    EXPECT_THROW(log_log_slope(x, y), std::invalid_argument);
}
