#pragma once

// Thermodynamic-limit equation of state of the delta-interacting Bose gas.
//
// Energy density e(rho) comes from one of three routes: the closed
// impenetrable-limit form, the Lieb integral equation discretised on
// Gauss-Legendre nodes, or Richardson extrapolation of finite-N Bethe
// energies. Pressure and compressibility follow by numerical differentiation:
//     P = rho e' - e,    kappa_0 = 1 / (rho dP/drho).

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "superfluid/bethe.hpp"

namespace superfluid::thermo {

enum class EosMethod { ClosedForm, IntegralEquation, FiniteNExtrapolation };

std::string_view to_string(EosMethod method);

struct NystromConfig {
    std::size_t node_count = 64;     // Gauss-Legendre nodes on each of [-Q,0] and [0,Q]
    double outer_tolerance = 1e-14;  // relative density mismatch accepted by the Q search
    int max_outer_iterations = 200;

    void validate() const;
};

/// Root density on the Fermi interval [-Q, Q] for coupling c (Hamiltonian
/// convention, c' = 2c in the kernel).
struct LiebSolution {
    double cutoff = 0.0;
    double coupling_c = 0.0;
    double density = 0.0;         // int rho(k) dk
    double energy_density = 0.0;  // 1/2 int k^2 rho(k) dk
    std::vector<double> nodes;
    std::vector<double> weights;
    std::vector<double> root_density;
};

/// Solves rho(k) - (1/2pi) int_{-Q}^{Q} 2c'/(c'^2 + (k-q)^2) rho(q) dq = 1/2pi.
LiebSolution solve_lieb_equation(double cutoff, double coupling_c, const NystromConfig& config = {});

/// Finds Q with int rho = rho_target (safeguarded Newton inside the bracket
/// [0, pi rho], which always contains the root) and returns that solution.
LiebSolution solve_lieb_at_density(double rho, double coupling_c, const NystromConfig& config = {});

/// One equation-of-state point.
struct EosPoint {
    double rho = 0.0;
    double coupling_c = 0.0;
    double energy_density = 0.0;
    double pressure = 0.0;
    double kappa0 = 0.0;  // +inf when dP/drho vanishes
    EosMethod method = EosMethod::ClosedForm;

    double gamma() const { return 2.0 * coupling_c / rho; }
    bool infinite_compressibility() const;
    /// kappa_0 < 0: impossible for a stable system, so it signals a numerics bug.
    bool kappa_violation() const { return kappa0 < 0.0; }
};

/// Differentiates an arbitrary e(rho): five-point central stencils with step
/// relative_step * rho for both e' and P'. A flat pressure (rho P' == 0)
/// yields kappa_0 = +inf.
EosPoint eos_from_energy(const std::function<double(double)>& energy_density, double rho,
                         double coupling_c, EosMethod method, double relative_step = 1e-3);

EosPoint eos_closed_form(double rho);

/// e == 0: the ideal Bose gas, whose compressibility is infinite.
EosPoint eos_ideal_bose(double rho);

/// Lieb integral equation route. rho > 0, 0 < c < inf.
EosPoint eos_integral_equation(double rho, double coupling_c, const NystromConfig& config = {},
                               double relative_step = 1e-3);

/// Energy density only (no derivatives).
double energy_density_integral(double rho, double coupling_c, const NystromConfig& config = {});

struct Extrapolation {
    double value = 0.0;
    double error_estimate = 0.0;
    std::vector<int> sizes;
    std::vector<double> finite_size_values;  // E_N / L
};

/// Richardson extrapolation of E_N / L in 1/N^2 (polynomial through all sizes,
/// evaluated at 1/N^2 = 0). The error estimate is the change caused by dropping
/// the smallest system. Requires >= 3 strictly increasing sizes at one density
/// and one coupling.
Extrapolation eos_finite_n(std::span<const bethe::LiebLinigerParams> family,
                           const bethe::SolverOptions& options = {});

/// Convenience overload: L_i = N_i / rho.
Extrapolation eos_finite_n(double rho, double coupling_c, std::span<const int> sizes,
                           const bethe::SolverOptions& options = {});

struct CollapsePoint {
    double rho = 0.0;
    double gamma = 0.0;  // 2c / rho
    double e_hat = 0.0;  // e / rho^3
};

/// e(rho, c) / rho^3 as a function of gamma = 2c/rho. c = 0 gives e_hat = 0,
/// c = inf the closed form pi^2/6.
std::vector<CollapsePoint> scaling_collapse(double coupling_c, std::span<const double> rho_grid,
                                            const NystromConfig& config = {});

/// Column-oriented table of EoS points from a single method.
struct EquationOfState {
    std::vector<double> densities;
    std::vector<double> couplings;
    std::vector<double> energy_density;
    std::vector<double> pressure;
    std::vector<double> kappa0;
    EosMethod method = EosMethod::ClosedForm;

    static EquationOfState from_points(std::span<const EosPoint> points);
    std::size_t size() const { return densities.size(); }
    /// All columns equal length and kappa_0 >= 0 everywhere.
    bool valid() const;
};

}  // namespace superfluid::thermo
