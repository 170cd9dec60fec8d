#include "superfluid/condensate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "superfluid/errors.hpp"

namespace superfluid::condensate {

namespace {

constexpr double kPi = std::numbers::pi;

void require_increasing(const std::vector<double>& axis, const char* name) {
    if (axis.empty()) throw std::invalid_argument(std::string("CylindricalGrid: empty ") + name + " axis");
    for (std::size_t i = 0; i < axis.size(); ++i) {
        if (!std::isfinite(axis[i])) throw std::invalid_argument(std::string("CylindricalGrid: non-finite ") + name);
        if (i > 0 && !(axis[i] > axis[i - 1]))
            throw std::invalid_argument(std::string("CylindricalGrid: ") + name + " must be strictly increasing");
    }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / (n - 1);
    return out;
}

double max_spacing(const std::vector<double>& axis) {
    double h = 0.0;
    for (std::size_t i = 1; i < axis.size(); ++i) h = std::max(h, axis[i] - axis[i - 1]);
    return h;
}

// Second-order derivative of samples f(x_i) at index i on a nonuniform axis.
template <typename Get>
Complex axis_derivative(const std::vector<double>& x, std::size_t i, Get&& f) {
    const std::size_t n = x.size();
    if (n < 2) return {0.0, 0.0};
    if (n == 2) return (f(1) - f(0)) / (x[1] - x[0]);
    std::size_t a = 0, b = 0, c = 0;  // stencil points
    if (i == 0) { a = 0; b = 1; c = 2; }
    else if (i == n - 1) { a = n - 3; b = n - 2; c = n - 1; }
    else { a = i - 1; b = i; c = i + 1; }
    // derivative of the quadratic through (x_a, x_b, x_c) evaluated at x_i
    const double xi = x[i];
    const double wa = ((xi - x[b]) + (xi - x[c])) / ((x[a] - x[b]) * (x[a] - x[c]));
    const double wb = ((xi - x[a]) + (xi - x[c])) / ((x[b] - x[a]) * (x[b] - x[c]));
    const double wc = ((xi - x[a]) + (xi - x[b])) / ((x[c] - x[a]) * (x[c] - x[b]));
    return wa * f(a) + wb * f(b) + wc * f(c);
}

WindingResult accumulate(const std::vector<Complex>& loop, const WindingOptions& options, bool& under_resolved) {
    double amax = 0.0, amin = std::numeric_limits<double>::infinity();
    for (const auto& z : loop) {
        amax = std::max(amax, std::abs(z));
        amin = std::min(amin, std::abs(z));
    }
    if (!(amax > 0.0) || amin < options.amplitude_threshold * amax) {
        std::ostringstream msg;
        msg << "ill-defined winding: |Psi| on the loop falls to " << amin << " (max " << amax << ")";
        throw NumericalError(msg.str());
    }
    double total = 0.0, worst = 0.0;
    for (std::size_t j = 0; j < loop.size(); ++j) {
        const double step = std::arg(loop[(j + 1) % loop.size()] * std::conj(loop[j]));
        worst = std::max(worst, std::abs(step));
        total += step;
    }
    under_resolved = worst > options.max_phase_step * kPi;
    WindingResult out;
    out.raw = total / (2.0 * kPi);
    out.winding = static_cast<int>(std::lround(out.raw));
    out.residual = std::abs(out.raw - out.winding);
    out.samples = loop.size();
    return out;
}

}  // namespace

CylindricalGrid CylindricalGrid::uniform(double r_min, double r_max, std::size_t n_r, std::size_t n_theta,
                                         double z_min, double z_max, std::size_t n_z) {
    CylindricalGrid grid;
    grid.r = linspace(r_min, r_max, n_r);
    grid.z = linspace(z_min, z_max, n_z);
    grid.n_theta = n_theta;
    grid.validate();
    return grid;
}

double CylindricalGrid::theta(std::size_t j) const { return 2.0 * kPi * static_cast<double>(j) / n_theta; }

void CylindricalGrid::validate() const {
    require_increasing(r, "r");
    require_increasing(z, "z");
    if (r.front() < 0.0) throw std::invalid_argument("CylindricalGrid: radii must be >= 0");
    if (n_theta < 3) throw std::invalid_argument("CylindricalGrid: need at least 3 angular samples");
}

CondensateField build_field(const CylindricalGrid& grid, const RadialProfile& f, int n, double omega) {
    grid.validate();
    if (!std::isfinite(omega)) throw std::invalid_argument("build_field: rotation rate must be finite");
    CondensateField field;
    field.grid = grid;
    field.omega = omega;
    field.declared_n = n;
    field.amplitude.resize(grid.size());
    for (std::size_t i = 0; i < grid.r.size(); ++i)
        for (std::size_t k = 0; k < grid.z.size(); ++k) {
            const Complex fv = f(grid.r[i], grid.z[k]);
            if (!std::isfinite(fv.real()) || !std::isfinite(fv.imag()))
                throw std::invalid_argument("build_field: profile is not finite on the grid");
            for (std::size_t j = 0; j < grid.n_theta; ++j)
                field.amplitude[grid.index(i, j, k)] = fv * std::polar(1.0, n * grid.theta(j));
        }
    return field;
}

int checked_winding(double n) {
    if (!std::isfinite(n) || n != std::round(n) || std::abs(n) > 1e9)
        throw std::invalid_argument("winding number must be an integer");
    return static_cast<int>(n);
}

CondensateField conjugate(const CondensateField& field) {
    CondensateField out = field;
    for (auto& z : out.amplitude) z = std::conj(z);
    out.omega = -field.omega;
    if (field.declared_n) out.declared_n = -*field.declared_n;
    return out;
}

WindingResult winding_number(const CondensateField& field, std::size_t r_index, std::size_t z_index,
                             const WindingOptions& options) {
    const auto& grid = field.grid;
    if (r_index >= grid.r.size() || z_index >= grid.z.size())
        throw std::out_of_range("winding_number: loop index outside the grid");
    if (!(grid.r[r_index] > 0.0)) throw std::invalid_argument("winding_number: loop radius must be positive");
    std::vector<Complex> loop(grid.n_theta);
    for (std::size_t j = 0; j < grid.n_theta; ++j) loop[j] = field.at(r_index, j, z_index);
    bool under_resolved = false;
    WindingResult out = accumulate(loop, options, under_resolved);
    if (under_resolved)
        throw NumericalError("ill-defined winding: phase step above the resolution limit; refine the angular grid");
    return out;
}

WindingResult winding_number(const std::function<Complex(double theta)>& loop, std::size_t initial_samples,
                             const WindingOptions& options) {
    std::size_t samples = std::max<std::size_t>(initial_samples, 3);
    for (std::size_t level = 0;; ++level, samples *= 2) {
        std::vector<Complex> values(samples);
        for (std::size_t j = 0; j < samples; ++j) values[j] = loop(2.0 * kPi * static_cast<double>(j) / samples);
        bool under_resolved = false;
        WindingResult out = accumulate(values, options, under_resolved);
        if (!under_resolved) return out;
        if (level == options.max_refinements)
            throw NumericalError("ill-defined winding: loop refinement limit reached");
    }
}

CondensateObservables condensate_current(const CondensateField& field) {
    const auto& grid = field.grid;
    grid.validate();
    if (field.amplitude.size() != grid.size()) throw std::invalid_argument("condensate_current: field/grid size mismatch");

    CondensateObservables obs;
    obs.grid = grid;
    const std::size_t total = grid.size();
    obs.density.assign(total, 0.0);
    obs.j_r.assign(total, 0.0);
    obs.j_theta.assign(total, 0.0);
    obs.j_z.assign(total, 0.0);
    obs.valid.assign(total, false);
    obs.dr = max_spacing(grid.r);
    obs.dz = max_spacing(grid.z);
    obs.dtheta = 2.0 * kPi / grid.n_theta;

    const std::size_t nt = grid.n_theta;
    for (std::size_t i = 0; i < grid.r.size(); ++i)
        for (std::size_t j = 0; j < nt; ++j)
            for (std::size_t k = 0; k < grid.z.size(); ++k) {
                const std::size_t idx = grid.index(i, j, k);
                const Complex psi = field.amplitude[idx];
                obs.density[idx] = std::norm(psi);
                const double r = grid.r[i];
                if (!(r > 0.0)) continue;
                obs.valid[idx] = true;

                const Complex d_r = axis_derivative(grid.r, i, [&](std::size_t m) { return field.at(m, j, k); });
                const Complex d_z = axis_derivative(grid.z, k, [&](std::size_t m) { return field.at(i, j, m); });
                const Complex d_t = (field.at(i, (j + 1) % nt, k) - field.at(i, (j + nt - 1) % nt, k)) /
                                    (2.0 * obs.dtheta);
                obs.j_r[idx] = std::imag(std::conj(psi) * d_r);
                obs.j_z[idx] = std::imag(std::conj(psi) * d_z);
                obs.j_theta[idx] = std::imag(std::conj(psi) * d_t) / r - obs.density[idx] * field.omega * r;
            }
    return obs;
}

RotationCheck rotational_superfluidity_check(const CondensateField& field, double tolerance_coefficient) {
    if (!field.declared_n || *field.declared_n != 0)
        throw PreconditionError("rotational_superfluidity_check: requires a field declared with winding number 0");
    const CondensateObservables obs = condensate_current(field);
    const auto& grid = field.grid;

    double residual = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < grid.r.size(); ++i)
        for (std::size_t j = 0; j < grid.n_theta; ++j)
            for (std::size_t k = 0; k < grid.z.size(); ++k) {
                const std::size_t idx = grid.index(i, j, k);
                if (!obs.valid[idx]) continue;
                const double rigid = obs.density[idx] * field.omega * grid.r[i];
                residual = std::max(residual, std::abs(obs.j_theta[idx] + rigid));
                scale = std::max(scale, std::abs(rigid));
            }

    RotationCheck out;
    out.grid_spacing = std::max({obs.dr, obs.dz, grid.r.back() * obs.dtheta});
    out.max_residual = residual;
    out.tolerance = tolerance_coefficient * out.grid_spacing * out.grid_spacing * scale + 1e-12 * std::max(1.0, scale);
    out.passed = residual <= out.tolerance;
    return out;
}

}  // namespace superfluid::condensate
