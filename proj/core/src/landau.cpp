#include "superfluid/landau.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "superfluid/errors.hpp"

namespace superfluid::landau {

namespace {

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
};

// Ordinary least squares y = intercept + slope * x.
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double det = n * sxx - sx * sx;
    LineFit fit;
    fit.slope = (n * sxy - sx * sy) / det;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

// eps/k against k for 0 < k <= window.
std::size_t collect_window(const DispersionBranch& curve, double window, std::vector<double>& k,
                           std::vector<double>& ratio) {
    k.clear();
    ratio.clear();
    for (const auto& s : curve.samples)
        if (s.k > 0.0 && s.k <= window) {
            k.push_back(s.k);
            ratio.push_back(s.epsilon / s.k);
        }
    return k.size();
}

}  // namespace

SoundVelocityFit sound_velocity(const DispersionBranch& curve, const SoundFitOptions& options) {
    curve.validate();
    const std::size_t min_samples = std::max<std::size_t>(options.min_samples, 2);

    double window = 0.0;
    if (options.k_window) {
        window = *options.k_window;
    } else {
        std::size_t seen = 0;
        for (const auto& s : curve.samples) {
            if (s.k <= 0.0) continue;
            window = s.k;
            if (++seen == std::max<std::size_t>(options.default_window_samples, min_samples)) break;
        }
    }

    std::vector<double> k, ratio;
    if (collect_window(curve, window, k, ratio) < min_samples) {
        std::ostringstream msg;
        msg << "sound_velocity: only " << k.size() << " samples with 0 < k <= " << window << ", need "
            << min_samples;
        throw NumericalError(msg.str());
    }

    const LineFit fit = fit_line(k, ratio);
    SoundVelocityFit out;
    out.velocity = std::abs(fit.intercept);
    out.curvature = fit.slope;
    out.k_window = window;
    out.samples_used = k.size();
    out.window_halving_change = std::numeric_limits<double>::quiet_NaN();
    if (collect_window(curve, 0.5 * window, k, ratio) >= min_samples) {
        const double halved = std::abs(fit_line(k, ratio).intercept);
        out.window_halving_change =
            out.velocity > 0.0 ? std::abs(halved - out.velocity) / out.velocity : std::abs(halved);
    }
    return out;
}

CriticalVelocity critical_velocity(const DispersionBranch& curve, const SoundFitOptions& options) {
    curve.validate();
    std::vector<double> k, ratio;
    collect_window(curve, std::numeric_limits<double>::infinity(), k, ratio);
    if (k.empty()) throw std::invalid_argument("critical_velocity: curve has no samples beyond k = 0");

    CriticalVelocity out;
    if (curve.max_energy() == 0.0) {
        out.degenerate = true;
        out.at_boundary = true;
        return out;
    }

    const auto it = std::min_element(ratio.begin(), ratio.end());
    const std::size_t i = static_cast<std::size_t>(it - ratio.begin());
    double best = ratio[i];
    double best_k = k[i];
    if (i > 0 && i + 1 < k.size()) {
        // parabola through the minimiser and its neighbours
        const double x0 = k[i - 1], x1 = k[i], x2 = k[i + 1];
        const double y0 = ratio[i - 1], y1 = ratio[i], y2 = ratio[i + 1];
        // Newton form: y(x) = y0 + d01 (x - x0) + a (x - x0)(x - x1)
        const double d01 = (y1 - y0) / (x1 - x0);
        const double d12 = (y2 - y1) / (x2 - x1);
        const double a = (d12 - d01) / (x2 - x0);
        if (a > 0.0) {
            const double b = d01 - a * (x0 + x1);
            const double xv = std::clamp(-b / (2.0 * a), x0, x2);
            const double y_vertex = y0 + d01 * (xv - x0) + a * (xv - x0) * (xv - x1);
            if (y_vertex < best) {
                best = y_vertex;
                best_k = xv;
            }
        }
    }

    out.velocity = best;
    out.minimizing_k = best_k;
    try {
        const double slope = sound_velocity(curve, options).velocity;
        if (slope <= best) {
            out.velocity = slope;
            out.minimizing_k = 0.0;
            out.at_boundary = true;
        }
    } catch (const NumericalError&) {
        out.at_boundary = (i == 0);
    }
    return out;
}

StabilityResult is_stable(const DispersionBranch& curve, BoostSpec boost) {
    curve.validate();
    if (!std::isfinite(boost.speed)) throw std::invalid_argument("is_stable: boost speed must be finite");
    const double v = std::abs(boost.speed);
    StabilityResult out;
    out.tolerance = 1e-9 * curve.max_energy();
    out.margin = std::numeric_limits<double>::infinity();
    for (const auto& s : curve.samples) {
        const double m = s.epsilon - v * s.k;
        if (m < out.margin) {
            out.margin = m;
            out.worst_k = s.k;
        }
    }
    out.stable = out.margin >= -out.tolerance;
    return out;
}

double bisect_critical_velocity(const DispersionBranch& curve, double relative_precision) {
    curve.validate();
    double hi = 0.0;
    for (const auto& s : curve.samples)
        if (s.k > 0.0) hi = std::max(hi, s.epsilon / s.k);
    hi = 2.0 * hi + std::numeric_limits<double>::min();
    double lo = 0.0;
    if (is_stable(curve, {hi}).stable) return hi;  // nothing in the sampled range destabilises
    for (int it = 0; it < 400 && hi - lo > relative_precision * hi; ++it) {
        const double mid = 0.5 * (lo + hi);
        (is_stable(curve, {mid}).stable ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

bool ConsistencyReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConsistencyCheck& c) { return c.passed; });
}

const ConsistencyCheck* ConsistencyReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

ConsistencyReport consistency_report(const DispersionBranch& curve, const thermo::EosPoint& eos,
                                     const ConsistencyOptions& options) {
    if (std::abs(curve.density - eos.rho) > 1e-9 * std::max(1.0, eos.rho))
        throw std::invalid_argument("consistency_report: curve and equation of state are at different densities");

    ConsistencyReport report;
    report.rho = eos.rho;
    report.coupling_c = eos.coupling_c;
    report.branch = curve.branch;
    report.kappa0 = eos.kappa0;
    report.v_s_slope = sound_velocity(curve, options.sound).velocity;
    report.v_c = critical_velocity(curve, options.sound).velocity;
    if (eos.kappa0 > 0.0)
        report.v_s_kappa = std::isinf(eos.kappa0) ? 0.0 : 1.0 / std::sqrt(eos.rho * eos.kappa0);
    else
        report.v_s_kappa = std::numeric_limits<double>::quiet_NaN();

    report.checks.push_back({kKappaNonNegative, eos.kappa0 >= 0.0, eos.kappa0, 0.0});
    report.checks.push_back({kFiniteCompressibility, std::isfinite(eos.kappa0), eos.kappa0,
                             std::numeric_limits<double>::infinity()});
    report.checks.push_back({kVcBelowVs, report.v_c <= report.v_s_slope * (1.0 + options.inequality_slack),
                             report.v_c, report.v_s_slope});
    report.checks.push_back({kVsPositive, report.v_s_slope > 0.0, report.v_s_slope, 0.0});

    double mismatch = std::numeric_limits<double>::quiet_NaN();
    if (std::isfinite(report.v_s_kappa)) {
        const double diff = std::abs(report.v_s_slope - report.v_s_kappa);
        mismatch = report.v_s_kappa > 0.0 ? diff / report.v_s_kappa : diff;
    }
    report.checks.push_back(
        {kVsAgreement, mismatch <= options.agreement_tolerance, mismatch, options.agreement_tolerance});
    return report;
}

}  // namespace superfluid::landau
