#include "superfluid/instability.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "superfluid/quadrature.hpp"

namespace superfluid::instability {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kProfileTol = 1e-12;
constexpr std::size_t kProbePoints = 200;

double surface_measure(int d) { return d == 1 ? 2.0 : 4.0 * kPi; }

double radial_weight(int d, double r) { return d == 1 ? 1.0 : r * r; }

template <typename Pred>
void probe(double lo, double hi, Pred&& pred) {
    for (std::size_t i = 0; i <= kProbePoints; ++i) pred(lo + (hi - lo) * static_cast<double>(i) / kProbePoints);
}

void check_state(const UniformCurrentState& state) {
    if (!(state.n_bar >= 0.0) || !std::isfinite(state.n_bar))
        throw std::invalid_argument("UniformCurrentState: n_bar must be finite and >= 0");
    if (!std::isfinite(state.t_bar)) throw std::invalid_argument("UniformCurrentState: t_bar must be finite");
    if (!std::isfinite(state.drift_v)) throw std::invalid_argument("UniformCurrentState: drift must be finite");
}

void check_interaction(const PairInteraction& interaction, const UniformCurrentState& state) {
    if (interaction.is_zero()) return;
    if (!std::isfinite(interaction.range))
        throw std::invalid_argument("PairInteraction: support radius must be finite");
    probe(0.0, interaction.range, [&](double r) {
        if (!(interaction.potential(r) >= 0.0)) throw std::invalid_argument("PairInteraction: V must be >= 0");
        if (!(state.pair_correlation_at(r) >= 0.0))
            throw std::invalid_argument("UniformCurrentState: pair correlation must be >= 0");
    });
}

// Breakpoints of the radial profile in absolute radius.
std::vector<double> shell_breakpoints(const ShellConfig& s) {
    const double R = s.inner_radius;
    return {R, R + s.offset_a, R + s.offset_b, R + s.offset_c};
}

std::vector<double> shifted(const std::vector<double>& base, double range, bool mirrored) {
    std::vector<double> out = base;
    for (double b : base) {
        out.push_back(b - range);
        out.push_back(b + range);
        if (mirrored) out.push_back(range - b);
    }
    return out;
}

}  // namespace

void ShellConfig::validate() const {
    if (dimension != 1 && dimension != 3) throw std::invalid_argument("ShellConfig: dimension must be 1 or 3");
    if (!(inner_radius > 0.0) || !std::isfinite(inner_radius))
        throw std::invalid_argument("ShellConfig: inner radius must be positive and finite");
    if (!(offset_a > 0.0 && offset_b > offset_a && offset_c > offset_b) || !std::isfinite(offset_c))
        throw std::invalid_argument("ShellConfig: offsets must satisfy 0 < a < b < c");
}

ShellConfig ShellConfig::with_radius(double radius) const {
    ShellConfig out = *this;
    out.inner_radius = radius;
    return out;
}

ProfilePair ProfilePair::cosine_ramps(double a, double b, double c) {
    if (!(a > 0.0 && b > a && c > b)) throw std::invalid_argument("cosine_ramps: need 0 < a < b < c");
    const double w2 = c - b;
    ProfilePair p;
    p.g = [=](double s) {
        if (s <= 0.0 || s >= c) return 1.0;
        if (s < a) return 0.5 * (1.0 + std::cos(kPi * s / a));
        if (s <= b) return 0.0;
        return 0.5 * (1.0 - std::cos(kPi * (s - b) / w2));
    };
    p.dg = [=](double s) {
        if (s <= 0.0 || s >= c || (s >= a && s <= b)) return 0.0;
        if (s < a) return -0.5 * kPi / a * std::sin(kPi * s / a);
        return 0.5 * kPi / w2 * std::sin(kPi * (s - b) / w2);
    };
    const double wb = b - a;
    p.cutoff = [=](double s) {
        if (s <= a) return 1.0;
        if (s >= b) return 0.0;
        const double t = (s - a) / wb;
        return 1.0 - t * t * t * (10.0 - 15.0 * t + 6.0 * t * t);
    };
    p.dcutoff = [=](double s) {
        if (s <= a || s >= b) return 0.0;
        const double t = (s - a) / wb;
        return -30.0 * t * t * (1.0 - t) * (1.0 - t) / wb;
    };
    p.grad_g_bound = 0.5 * kPi / std::min(a, w2);
    return p;
}

ProfilePair ProfilePair::identity() {
    ProfilePair p;
    p.g = [](double) { return 1.0; };
    p.dg = [](double) { return 0.0; };
    p.cutoff = [](double) { return 0.0; };
    p.dcutoff = [](double) { return 0.0; };
    p.grad_g_bound = 0.0;
    return p;
}

double UniformCurrentState::pair_correlation_at(double r) const {
    return pair_correlation ? pair_correlation(r) : n_bar * n_bar;
}

PairInteraction PairInteraction::none() { return {}; }

PairInteraction PairInteraction::smooth_bump(double strength, double range) {
    if (!(strength >= 0.0) || !(range > 0.0)) throw std::invalid_argument("smooth_bump: need strength >= 0, range > 0");
    return {[=](double r) {
                const double x = r / range;
                if (x >= 1.0) return 0.0;
                return strength * std::exp(1.0 - 1.0 / (1.0 - x * x));
            },
            range};
}

PairInteraction PairInteraction::step(double strength, double range) {
    if (!(strength >= 0.0) || !(range > 0.0)) throw std::invalid_argument("step: need strength >= 0, range > 0");
    return {[=](double r) { return r < range ? strength : 0.0; }, range};
}

void validate_profiles(const ProfilePair& profiles, const ShellConfig& shells, double drift_v) {
    shells.validate();
    if (!profiles.g || !profiles.dg) throw std::invalid_argument("ProfilePair: g and dg are required");
    if (!(profiles.grad_g_bound >= 0.0) || !std::isfinite(profiles.grad_g_bound))
        throw std::invalid_argument("ProfilePair: gradient bound must be finite");
    const double a = shells.offset_a, b = shells.offset_b, c = shells.offset_c;
    const double inner = std::min(shells.inner_radius, c);

    auto fail = [](const std::string& what) { throw std::invalid_argument("ProfilePair: " + what); };
    probe(-inner, 0.0, [&](double s) {
        if (std::abs(profiles.g(s) - 1.0) > kProfileTol) fail("g must equal 1 inside radius R");
    });
    probe(c, 2.0 * c, [&](double s) {
        if (std::abs(profiles.g(s) - 1.0) > kProfileTol) fail("g must equal 1 beyond radius R + c");
    });
    const double bound = profiles.grad_g_bound * (1.0 + 1e-9) + kProfileTol;
    probe(0.0, c, [&](double s) {
        const double g = profiles.g(s);
        if (g < -kProfileTol || g > 1.0 + kProfileTol) fail("g must take values in [0, 1]");
        if (std::abs(profiles.dg(s)) > bound) fail("|grad g| exceeds its declared bound");
    });

    if (drift_v == 0.0) return;
    probe(a, b, [&](double s) {
        if (std::abs(profiles.g(s)) > kProfileTol) fail("g must vanish on the evacuated shell (R+a, R+b)");
    });
    if (!profiles.cutoff || !profiles.dcutoff) fail("boost cutoff is required when the drift is nonzero");
    probe(-inner, a, [&](double s) {
        if (std::abs(profiles.cutoff(s) - 1.0) > kProfileTol) fail("h must equal -v.x inside radius R + a");
    });
    probe(b, 2.0 * c, [&](double s) {
        if (std::abs(profiles.cutoff(s)) > kProfileTol) fail("h must vanish beyond radius R + b");
    });
}

namespace detail {

double first_moment(const RadialFunction& w, double range, double t, std::size_t order) {
    const double top = std::min(t, range);
    if (!(top > 0.0)) return 0.0;
    const std::array<double, 3> cuts{0.25 * top, 0.5 * top, 0.75 * top};
    return integrate_panels([&](double tau) { return tau * w(tau); }, 0.0, top, cuts, order);
}

double radial_convolution_3d(const RadialFunction& u, double support_lo, double support_hi,
                             std::span<const double> u_breakpoints, const RadialFunction& w, double range,
                             double r, std::size_t order) {
    if (!(r > 0.0)) throw std::invalid_argument("radial_convolution_3d: r must be positive");
    const double lo = std::max({support_lo, r - range, 0.0});
    const double hi = std::min(support_hi, r + range);
    if (!(hi > lo)) return 0.0;

    const double phi_full = first_moment(w, range, range, order);
    std::vector<double> cuts(u_breakpoints.begin(), u_breakpoints.end());
    cuts.insert(cuts.end(), {r, r - range, r + range, range - r});
    const double integral = integrate_panels(
        [&](double s) {
            const double upper = (r + s >= range) ? phi_full : first_moment(w, range, r + s, order);
            return s * u(s) * (upper - first_moment(w, range, std::abs(r - s), order));
        },
        lo, hi, cuts, order);
    return 2.0 * kPi / r * integral;
}

}  // namespace detail

EnergyIncrement energy_increment(const UniformCurrentState& state, const ShellConfig& shells,
                                 const ProfilePair& profiles, const PairInteraction& interaction,
                                 const QuadratureOptions& options) {
    check_state(state);
    validate_profiles(profiles, shells, state.drift_v);
    check_interaction(interaction, state);

    const int d = shells.dimension;
    const double R = shells.inner_radius;
    const double outer = R + shells.offset_c;
    const double sd = surface_measure(d);
    const std::size_t order = options.order;
    const auto bps = shell_breakpoints(shells);
    auto g = [&](double r) { return profiles.g(r - R); };

    EnergyIncrement out;
    out.radius = R;

    // T1: g == 1 on [0, R], so that part is R^d / d exactly.
    const double ramp = integrate_panels([&](double r) { return radial_weight(d, r) * g(r) * g(r); }, R,
                                         R + shells.offset_a, bps, order);
    const double v = state.drift_v;
    out.t1 = -0.5 * state.n_bar * v * v * sd * (std::pow(R, d) / d + ramp);

    out.t2 = sd * integrate_panels(
                      [&](double r) {
                          const double gr = g(r);
                          const double dg = profiles.dg(r - R);
                          return radial_weight(d, r) * (state.t_bar * (gr * gr - 1.0) + 0.5 * state.n_bar * dg * dg);
                      },
                      R, outer, bps, order);

    if (interaction.is_zero()) return out;

    // T3 = int int (g^2 g^2 - 1) w = -2 W U + int int u(x) u(y) w(x - y), u = 1 - g^2 supported on the shell.
    const double range = interaction.range;
    const RadialFunction w = [&](double t) { return state.pair_correlation_at(t) * interaction.potential(t); };
    const RadialFunction u = [&](double r) {
        const double gr = g(r);
        return 1.0 - gr * gr;
    };
    const double u_volume = sd * integrate_panels([&](double r) { return radial_weight(d, r) * u(r); }, R, outer, bps, order);

    double w_total = 0.0;
    double overlap = 0.0;
    if (d == 1) {
        w_total = 2.0 * integrate_panels(w, 0.0, range, std::array<double, 1>{0.5 * range}, order);
        const auto xcuts = shifted(bps, range, true);
        // x on the right shell; y on the right shell (|x-y|) and on the mirrored left shell (x+y').
        overlap = 2.0 * integrate_panels(
                            [&](double x) {
                                std::vector<double> ycuts = bps;
                                ycuts.insert(ycuts.end(), {x, x - range, x + range, range - x});
                                const double same = integrate_panels(
                                    [&](double y) { return u(y) * w(std::abs(x - y)); }, std::max(R, x - range),
                                    std::min(outer, x + range), ycuts, order);
                                const double mirror =
                                    (x + R >= range) ? 0.0
                                                     : integrate_panels([&](double y) { return u(y) * w(x + y); }, R,
                                                                        std::min(outer, range - x), ycuts, order);
                                return u(x) * (same + mirror);
                            },
                            R, outer, xcuts, order);
    } else {
        w_total = 4.0 * kPi *
                  integrate_panels([&](double t) { return t * t * w(t); }, 0.0, range,
                                   std::array<double, 1>{0.5 * range}, order);
        const auto rcuts = shifted(bps, range, true);
        overlap = 4.0 * kPi * integrate_panels(
                                  [&](double r) {
                                      return r * r * u(r) *
                                             detail::radial_convolution_3d(u, R, outer, bps, w, range, r, order);
                                  },
                                  R, outer, rcuts, order);
    }
    out.t3 = -2.0 * w_total * u_volume + overlap;
    return out;
}

double kinetic_increment_unreduced(const UniformCurrentState& state, const ShellConfig& shells,
                                   const ProfilePair& profiles, const QuadratureOptions& options) {
    check_state(state);
    validate_profiles(profiles, shells, state.drift_v);
    const int d = shells.dimension;
    const double R = shells.inner_radius;
    const double v2 = state.drift_v * state.drift_v;
    auto bps = shell_breakpoints(shells);
    bps.push_back(0.0);

    const auto integrand = [&](double r) {
        const double s = r - R;
        const double g = profiles.g(s);
        const double dg = profiles.dg(s);
        const double chi = profiles.cutoff ? profiles.cutoff(s) : 0.0;
        const double dchi = profiles.dcutoff ? profiles.dcutoff(s) : 0.0;
        // h(x) = -(v.x) chi(|x| - R); averages of v.grad h and |grad h|^2 over directions of x.
        double v_dot_grad_h = 0.0, grad_h_sq = 0.0;
        if (d == 1) {
            const double dh = chi + r * dchi;
            v_dot_grad_h = -v2 * dh;
            grad_h_sq = v2 * dh * dh;
        } else {
            v_dot_grad_h = -v2 * (chi + r * dchi / 3.0);
            grad_h_sq = v2 * (chi * chi + 2.0 / 3.0 * r * chi * dchi + r * r * dchi * dchi / 3.0);
        }
        const double local = state.t_bar * (g * g - 1.0) + state.n_bar * g * g * (v_dot_grad_h + 0.5 * grad_h_sq) +
                             0.5 * state.n_bar * dg * dg;
        return radial_weight(d, r) * local;
    };
    return surface_measure(d) * integrate_panels(integrand, 0.0, R + shells.offset_c, bps, options.order);
}

InstabilityRadius find_instability_radius(const UniformCurrentState& state, const ShellConfig& shells_template,
                                          const ProfilePair& profiles, const PairInteraction& interaction,
                                          const RadiusSearchOptions& options) {
    if (!(options.r_min > 0.0 && options.r_max > options.r_min))
        throw std::invalid_argument("find_instability_radius: need 0 < r_min < r_max");
    InstabilityRadius out;
    if (state.drift_v == 0.0 || state.n_bar == 0.0) {
        out.diagnostic = "no instability: zero drift (or zero density) leaves T1 = 0";
        return out;
    }

    auto eval = [&](double R) {
        EnergyIncrement inc = energy_increment(state, shells_template.with_radius(R), profiles, interaction,
                                               options.quadrature);
        out.table.push_back(inc);
        return inc.total();
    };
    auto finish = [&] {
        std::sort(out.table.begin(), out.table.end(),
                  [](const EnergyIncrement& x, const EnergyIncrement& y) { return x.radius < y.radius; });
    };

    double lo = options.r_min;
    if (eval(lo) < 0.0) {
        out.radius = lo;
        out.negative_at_lower_bound = true;
    } else {
        double hi = lo;
        bool found = false;
        while (hi < options.r_max) {
            lo = hi;
            hi = std::min(2.0 * hi, options.r_max);
            if (eval(hi) < 0.0) {
                found = true;
                break;
            }
        }
        if (!found) {
            std::ostringstream msg;
            msg << "no sign change of dE up to R = " << options.r_max
                << "; the drift is too small relative to the shell cost";
            out.diagnostic = msg.str();
            finish();
            return out;
        }
        while (hi - lo > options.relative_precision * hi) {
            const double mid = 0.5 * (lo + hi);
            (eval(mid) < 0.0 ? hi : lo) = mid;
        }
        out.radius = hi;
    }
    const double at_star = energy_increment(state, shells_template.with_radius(*out.radius), profiles, interaction,
                                            options.quadrature)
                               .total();
    out.tail_decreasing = eval(2.0 * *out.radius) < at_star;
    finish();
    return out;
}

ScalingFit scaling_exponents(const UniformCurrentState& state, const ShellConfig& shells_template,
                             const ProfilePair& profiles, const PairInteraction& interaction,
                             std::span<const double> radii, const QuadratureOptions& options) {
    if (radii.size() < 4) throw std::invalid_argument("scaling_exponents: need at least 4 radii");
    for (std::size_t i = 0; i < radii.size(); ++i)
        if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
            throw std::invalid_argument("scaling_exponents: radii must be positive and increasing");

    ScalingFit fit;
    std::vector<double> t1, t2;
    for (double R : radii) {
        fit.table.push_back(energy_increment(state, shells_template.with_radius(R), profiles, interaction, options));
        t1.push_back(fit.table.back().t1);
        t2.push_back(fit.table.back().t2);
    }
    fit.p1 = log_log_slope(radii, t1);
    fit.p2 = log_log_slope(radii, t2);
    return fit;
}

}  // namespace superfluid::instability
