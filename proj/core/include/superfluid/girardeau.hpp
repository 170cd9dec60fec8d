#pragma once

// Closed-form ground-state and excitation quantities of the impenetrable
// (infinite-coupling) one-dimensional Bose gas, plus the finite-N Bose wave
// function obtained from the free-Fermi Slater determinant.
//
// Units: hbar = m = 1, kinetic energy -1/2 d^2/dx^2.

#include <complex>
#include <span>
#include <vector>

namespace superfluid::girardeau {

/// k_F = pi * rho. Throws std::invalid_argument for rho < 0.
double fermi_momentum(double rho);

/// eps(p) = p^2/2 + k_F |p|: one particle lifted from the Fermi edge.
double excitation_energy(double rho, double p);

/// Lower edge of the spectrum, eps_II(p) = k_F |p| - p^2/2 for |p| <= 2 k_F
/// (a hole dug below the Fermi edge). Zero at p = 0 and at the umklapp point 2 k_F.
double hole_excitation_energy(double rho, double p);

/// e(rho) = pi^2 rho^3 / 6.
double ground_energy_density(double rho);

/// P(rho) = pi^2 rho^3 / 3.
double pressure(double rho);

/// kappa_0 = 1 / (pi^2 rho^3). Returns +infinity at rho = 0 (the compressibility
/// diverges, i.e. the finite-compressibility condition fails). Throws for rho < 0.
double compressibility(double rho);

/// v_s = pi * rho.
double sound_velocity_closed(double rho);

/// N particles on a ring of length L occupying plane waves exp(2 pi i m x / L).
struct FermiSeaConfig {
    int n_particles = 0;
    double box_length = 0.0;
    std::vector<int> occupied_modes;

    /// Symmetric filling {-(N-1)/2, ..., (N-1)/2} for odd N; {-N/2+1, ..., N/2}
    /// for even N (one of the two degenerate fillings, fixed for determinism).
    static FermiSeaConfig ground(int n_particles, double box_length);

    bool is_ground() const;
    /// Throws std::invalid_argument unless N >= 1, L > 0, N modes, all distinct.
    void validate() const;
};

/// Normalised free-fermion Slater determinant psi^F(x_1..x_N).
std::complex<double> fermi_wavefunction(const FermiSeaConfig& config,
                                        std::span<const double> positions);

/// Bose wave function psi^B = A * psi^F with A = prod_{j<l} sgn(x_j - x_l).
/// For the ground filling the result is |psi^F| (real, non-negative).
/// Coincident positions give exactly zero.
std::complex<double> bose_wavefunction(const FermiSeaConfig& config,
                                       std::span<const double> positions);

}  // namespace superfluid::girardeau
