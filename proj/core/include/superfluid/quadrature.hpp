#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace superfluid {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Builds the n-point rule (n >= 1). Nodes are returned in increasing order.
/// Newton iteration on P_n from Chebyshev-like initial guesses; accurate to a
/// few ulp for n up to several thousand.
GaussLegendreRule gauss_legendre(std::size_t n);

/// Cached rule. Thread-safe; the returned reference stays valid for the
/// lifetime of the program.
const GaussLegendreRule& cached_gauss_legendre(std::size_t n);

/// Integrates f over [lo, hi] with a composite rule: the interval is split at
/// every breakpoint that falls strictly inside it, and each panel receives an
/// `order`-point Gauss-Legendre rule. Breakpoints need not be sorted.
template <typename F>
double integrate_panels(F&& f, double lo, double hi, std::span<const double> breakpoints,
                        std::size_t order);

/// Least-squares slope of log|y| against log x.
double log_log_slope(std::span<const double> x, std::span<const double> y);

}  // namespace superfluid

#include "superfluid/detail/quadrature_impl.hpp"
