#pragma once

// Macroscopic wave function on a cylindrical grid: axially symmetric fields
// Psi = f(r, z) exp(i n theta) in a frame rotating at rate omega about z,
// winding-number extraction, and the rotating-frame condensate current
//   j_c = Im(conj(Psi) grad Psi) - |Psi|^2 (omega x x).

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace superfluid::condensate {

using Complex = std::complex<double>;

/// Tensor grid r_i x theta_j x z_k. theta_j = 2 pi j / n_theta is periodic.
struct CylindricalGrid {
    std::vector<double> r;  // strictly increasing, >= 0
    std::vector<double> z;  // strictly increasing
    std::size_t n_theta = 0;

    static CylindricalGrid uniform(double r_min, double r_max, std::size_t n_r, std::size_t n_theta,
                                   double z_min, double z_max, std::size_t n_z);

    double theta(std::size_t j) const;
    std::size_t size() const { return r.size() * n_theta * z.size(); }
    std::size_t index(std::size_t i, std::size_t j, std::size_t k) const {
        return (i * n_theta + j) * z.size() + k;
    }
    /// Throws std::invalid_argument for empty axes, n_theta < 3, negative or
    /// unordered radii.
    void validate() const;
};

struct CondensateField {
    CylindricalGrid grid;
    std::vector<Complex> amplitude;  // indexed by grid.index(i, j, k)
    double omega = 0.0;
    std::optional<int> declared_n;

    const Complex& at(std::size_t i, std::size_t j, std::size_t k) const {
        return amplitude[grid.index(i, j, k)];
    }
};

using RadialProfile = std::function<Complex(double r, double z)>;

CondensateField build_field(const CylindricalGrid& grid, const RadialProfile& f, int n, double omega);

/// Converts a winding number supplied as a real value; throws
/// std::invalid_argument unless it is an exact integer.
int checked_winding(double n);

/// Complex conjugate field with omega -> -omega (time reversal).
CondensateField conjugate(const CondensateField& field);

struct WindingOptions {
    double amplitude_threshold = 1e-8;  // relative to max |Psi| on the loop
    double max_phase_step = 0.5;        // in units of pi
    std::size_t max_refinements = 16;   // loop refinement (callable overload only)
};

struct WindingResult {
    int winding = 0;
    double raw = 0.0;       // accumulated phase / 2 pi
    double residual = 0.0;  // |raw - winding|
    std::size_t samples = 0;
};

/// Winding around the grid circle at (r_i, z_k). Throws NumericalError
/// ("ill-defined winding") when |Psi| drops below the threshold on the loop or
/// a phase step exceeds max_phase_step * pi.
WindingResult winding_number(const CondensateField& field, std::size_t r_index, std::size_t z_index,
                             const WindingOptions& options = {});

/// Winding of a closed loop theta -> Psi(theta), theta in [0, 2 pi). The loop is
/// resampled at doubled resolution until every phase step is below
/// max_phase_step * pi. `initial_samples` must already keep every true phase
/// step below pi: a coarser sampling aliases and cannot be detected.
WindingResult winding_number(const std::function<Complex(double theta)>& loop,
                             std::size_t initial_samples, const WindingOptions& options = {});

struct CondensateObservables {
    CylindricalGrid grid;
    std::vector<double> density;
    std::vector<double> j_r;
    std::vector<double> j_theta;
    std::vector<double> j_z;
    std::vector<bool> valid;  // false at r = 0, where no derivative is taken
    double dr = 0.0;          // largest spacings
    double dtheta = 0.0;
    double dz = 0.0;
};

/// Second-order differences in r, theta (periodic) and z; one-sided
/// second-order stencils on the r and z edges.
CondensateObservables condensate_current(const CondensateField& field);

struct RotationCheck {
    bool passed = false;
    double max_residual = 0.0;  // max |j_theta + rho_c omega r|
    double tolerance = 0.0;
    double grid_spacing = 0.0;
};

/// Requires declared_n == 0 (throws PreconditionError otherwise). Passes when
/// the transverse current equals -rho_c (omega x x) to within
/// tolerance_coefficient * h^2 * max(rho_c |omega| r), h the largest spacing,
/// plus a rounding floor.
RotationCheck rotational_superfluidity_check(const CondensateField& field,
                                             double tolerance_coefficient = 1.0);

}  // namespace superfluid::condensate
