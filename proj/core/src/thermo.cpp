#include "superfluid/thermo.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "superfluid/errors.hpp"
#include "superfluid/girardeau.hpp"
#include "superfluid/quadrature.hpp"

namespace superfluid::thermo {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kMaxNodesPerHalf = 4096;

void require_coupling(double c, const char* what) {
    if (!(c > 0.0) || !std::isfinite(c))
        throw std::invalid_argument(std::string(what) + ": coupling must be positive and finite");
}

// Neville evaluation at h = 0 of the interpolating polynomial through (h_i, y_i).
double extrapolate_to_zero(std::span<const double> h, std::span<const double> y) {
    std::vector<double> p(y.begin(), y.end());
    const std::size_t n = h.size();
    for (std::size_t m = 1; m < n; ++m)
        for (std::size_t i = 0; i + m < n; ++i)
            p[i] = (h[i + m] * p[i] - h[i] * p[i + 1]) / (h[i + m] - h[i]);
    return p[0];
}

}  // namespace

std::string_view to_string(EosMethod method) {
    switch (method) {
        case EosMethod::ClosedForm: return "closed_form";
        case EosMethod::IntegralEquation: return "integral_equation";
        case EosMethod::FiniteNExtrapolation: return "finite_N_extrapolation";
    }
    return "unknown";
}

void NystromConfig::validate() const {
    if (node_count < 8) throw std::invalid_argument("NystromConfig: node_count must be >= 8");
    if (!(outer_tolerance > 0.0)) throw std::invalid_argument("NystromConfig: tolerance must be > 0");
    if (max_outer_iterations < 1) throw std::invalid_argument("NystromConfig: need at least one iteration");
}

LiebSolution solve_lieb_equation(double cutoff, double coupling_c, const NystromConfig& config) {
    config.validate();
    require_coupling(coupling_c, "solve_lieb_equation");
    if (!(cutoff >= 0.0)) throw std::invalid_argument("solve_lieb_equation: cutoff must be >= 0");

    LiebSolution sol;
    sol.cutoff = cutoff;
    sol.coupling_c = coupling_c;
    if (cutoff == 0.0) return sol;

    const double cp = 2.0 * coupling_c;
    // The kernel has width c'; keep several nodes per kernel width when Q >> c'.
    const double needed = std::ceil(8.0 * cutoff / cp);
    const std::size_t per_half =
        std::max(config.node_count, static_cast<std::size_t>(std::min<double>(needed, kMaxNodesPerHalf)));
    const GaussLegendreRule& rule = cached_gauss_legendre(per_half);

    const std::size_t n = 2 * per_half;
    sol.nodes.resize(n);
    sol.weights.resize(n);
    const double half = 0.5 * cutoff;
    for (std::size_t i = 0; i < per_half; ++i) {
        sol.nodes[i] = -half + half * rule.nodes[i];
        sol.nodes[per_half + i] = half + half * rule.nodes[i];
        sol.weights[i] = sol.weights[per_half + i] = half * rule.weights[i];
    }

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const double d = sol.nodes[i] - sol.nodes[j];
            a(i, j) = (i == j ? 1.0 : 0.0) - (cp / kPi) / (cp * cp + d * d) * sol.weights[j];
        }
    const Eigen::VectorXd rhs = Eigen::VectorXd::Constant(n, 1.0 / (2.0 * kPi));
    const Eigen::VectorXd density = a.partialPivLu().solve(rhs);

    sol.root_density.assign(density.data(), density.data() + n);
    for (std::size_t i = 0; i < n; ++i) {
        sol.density += sol.weights[i] * density[i];
        sol.energy_density += 0.5 * sol.weights[i] * sol.nodes[i] * sol.nodes[i] * density[i];
    }
    return sol;
}

LiebSolution solve_lieb_at_density(double rho, double coupling_c, const NystromConfig& config) {
    config.validate();
    require_coupling(coupling_c, "solve_lieb_at_density");
    if (!(rho > 0.0) || !std::isfinite(rho))
        throw std::invalid_argument("solve_lieb_at_density: density must be positive and finite");

    // rho(k) >= 1/2pi, so int_{-Q}^{Q} rho >= Q/pi and the root lies in (0, pi rho].
    double lo = 0.0, hi = kPi * rho;
    const double cp = 2.0 * coupling_c;
    // strong-coupling guess, floored by half the weak-coupling estimate 2 sqrt(c' rho)
    const double strong = kPi * rho / (1.0 + 2.0 * rho / cp);
    double q = std::min(hi, std::max(strong, std::sqrt(cp * rho)));

    const double tol = config.outer_tolerance * rho;
    LiebSolution best;
    double best_err = std::numeric_limits<double>::infinity();
    for (int it = 0; it < config.max_outer_iterations; ++it) {
        LiebSolution sol = solve_lieb_equation(q, coupling_c, config);
        const double f = sol.density - rho;
        if (std::abs(f) < best_err) {
            best_err = std::abs(f);
            best = std::move(sol);
        }
        if (std::abs(f) <= tol) return best;
        (f < 0.0 ? lo : hi) = q;

        const double dq = 1e-7 * q;
        const double slope = (solve_lieb_equation(q + dq, coupling_c, config).density - (f + rho)) / dq;
        double next = q - f / slope;
        if (!(next > lo && next < hi) || !std::isfinite(next)) next = 0.5 * (lo + hi);
        if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
        q = next;
    }
    if (best_err <= 1e3 * tol) return best;  // bracket collapsed at rounding level
    std::ostringstream msg;
    msg << "solve_lieb_at_density: cutoff search failed for rho=" << rho << ", c=" << coupling_c
        << " (density mismatch " << best_err << ")";
    throw NumericalError(msg.str());
}

bool EosPoint::infinite_compressibility() const { return std::isinf(kappa0) && kappa0 > 0.0; }

EosPoint eos_from_energy(const std::function<double(double)>& energy_density, double rho, double coupling_c,
                         EosMethod method, double relative_step) {
    if (!(rho > 0.0)) throw std::invalid_argument("eos_from_energy: density must be positive");
    if (!(relative_step > 0.0 && relative_step < 0.25))
        throw std::invalid_argument("eos_from_energy: relative step must lie in (0, 0.25)");
    const double h = relative_step * rho;

    std::array<double, 9> e{};  // e(rho + m h), m = -4..4
    for (int m = -4; m <= 4; ++m) e[m + 4] = energy_density(rho + m * h);
    auto e_at = [&](int m) { return e[m + 4]; };
    auto de_at = [&](int m) {
        return (e_at(m - 2) - 8.0 * e_at(m - 1) + 8.0 * e_at(m + 1) - e_at(m + 2)) / (12.0 * h);
    };
    auto p_at = [&](int m) { return (rho + m * h) * de_at(m) - e_at(m); };
    const double dp = (p_at(-2) - 8.0 * p_at(-1) + 8.0 * p_at(1) - p_at(2)) / (12.0 * h);

    EosPoint point;
    point.rho = rho;
    point.coupling_c = coupling_c;
    point.energy_density = e_at(0);
    point.pressure = p_at(0);
    point.kappa0 = (dp == 0.0) ? std::numeric_limits<double>::infinity() : 1.0 / (rho * dp);
    point.method = method;
    return point;
}

EosPoint eos_closed_form(double rho) {
    EosPoint point;
    point.rho = rho;
    point.coupling_c = std::numeric_limits<double>::infinity();
    point.energy_density = girardeau::ground_energy_density(rho);
    point.pressure = girardeau::pressure(rho);
    point.kappa0 = girardeau::compressibility(rho);
    point.method = EosMethod::ClosedForm;
    return point;
}

EosPoint eos_ideal_bose(double rho) {
    return eos_from_energy([](double) { return 0.0; }, rho, 0.0, EosMethod::ClosedForm);
}

double energy_density_integral(double rho, double coupling_c, const NystromConfig& config) {
    return solve_lieb_at_density(rho, coupling_c, config).energy_density;
}

EosPoint eos_integral_equation(double rho, double coupling_c, const NystromConfig& config,
                               double relative_step) {
    require_coupling(coupling_c, "eos_integral_equation");
    return eos_from_energy([&](double x) { return energy_density_integral(x, coupling_c, config); }, rho,
                           coupling_c, EosMethod::IntegralEquation, relative_step);
}

Extrapolation eos_finite_n(std::span<const bethe::LiebLinigerParams> family, const bethe::SolverOptions& options) {
    if (family.size() < 3) throw std::invalid_argument("eos_finite_n: need at least 3 system sizes");
    const double rho = family.front().density();
    const double c = family.front().coupling_c;
    Extrapolation out;
    std::vector<double> h;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& p = family[i];
        p.validate();
        if (i > 0 && p.n_particles <= family[i - 1].n_particles)
            throw std::invalid_argument("eos_finite_n: system sizes must be strictly increasing");
        if (std::abs(p.density() - rho) > 1e-12 * rho)
            throw std::invalid_argument("eos_finite_n: all systems must share one density");
        if (p.coupling_c != c) throw std::invalid_argument("eos_finite_n: all systems must share one coupling");
        out.sizes.push_back(p.n_particles);
        out.finite_size_values.push_back(bethe::solve_ground(p, options).energy / p.box_length);
        h.push_back(1.0 / (static_cast<double>(p.n_particles) * p.n_particles));
    }
    out.value = extrapolate_to_zero(h, out.finite_size_values);
    const double reduced = extrapolate_to_zero(std::span(h).subspan(1), std::span(out.finite_size_values).subspan(1));
    out.error_estimate = std::abs(out.value - reduced);
    return out;
}

Extrapolation eos_finite_n(double rho, double coupling_c, std::span<const int> sizes,
                           const bethe::SolverOptions& options) {
    if (!(rho > 0.0)) throw std::invalid_argument("eos_finite_n: density must be positive");
    std::vector<bethe::LiebLinigerParams> family;
    for (int n : sizes) family.push_back({n, n / rho, coupling_c});
    return eos_finite_n(family, options);
}

std::vector<CollapsePoint> scaling_collapse(double coupling_c, std::span<const double> rho_grid,
                                            const NystromConfig& config) {
    if (!(coupling_c >= 0.0)) throw std::invalid_argument("scaling_collapse: coupling must be >= 0");
    std::vector<CollapsePoint> out;
    for (double rho : rho_grid) {
        if (!(rho > 0.0)) throw std::invalid_argument("scaling_collapse: densities must be positive");
        CollapsePoint p{rho, 2.0 * coupling_c / rho, 0.0};
        if (std::isinf(coupling_c))
            p.e_hat = kPi * kPi / 6.0;
        else if (coupling_c > 0.0)
            p.e_hat = energy_density_integral(rho, coupling_c, config) / (rho * rho * rho);
        out.push_back(p);
    }
    return out;
}

EquationOfState EquationOfState::from_points(std::span<const EosPoint> points) {
    EquationOfState eos;
    if (!points.empty()) eos.method = points.front().method;
    for (const auto& p : points) {
        eos.densities.push_back(p.rho);
        eos.couplings.push_back(p.coupling_c);
        eos.energy_density.push_back(p.energy_density);
        eos.pressure.push_back(p.pressure);
        eos.kappa0.push_back(p.kappa0);
    }
    return eos;
}

bool EquationOfState::valid() const {
    const std::size_t n = densities.size();
    if (couplings.size() != n || energy_density.size() != n || pressure.size() != n || kappa0.size() != n)
        return false;
    return std::all_of(kappa0.begin(), kappa0.end(), [](double k) { return k >= 0.0; });
}

}  // namespace superfluid::thermo
