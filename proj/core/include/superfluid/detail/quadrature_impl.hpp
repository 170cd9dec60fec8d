#pragma once

#include <algorithm>
#include <vector>

namespace superfluid {

template <typename F>
double integrate_panels(F&& f, double lo, double hi, std::span<const double> breakpoints,
                        std::size_t order) {
    if (!(hi > lo)) return 0.0;
    std::vector<double> cuts;
    cuts.reserve(breakpoints.size() + 2);
    cuts.push_back(lo);
    for (double b : breakpoints)
        if (b > lo && b < hi) cuts.push_back(b);
    cuts.push_back(hi);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const GaussLegendreRule& rule = cached_gauss_legendre(order);
    double total = 0.0;
    for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
        const double half = 0.5 * (cuts[p + 1] - cuts[p]);
        const double mid = 0.5 * (cuts[p + 1] + cuts[p]);
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            panel += rule.weights[i] * f(mid + half * rule.nodes[i]);
        total += half * panel;
    }
    return total;
}

}  // namespace superfluid
