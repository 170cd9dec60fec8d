#pragma once

// Finite-N Bethe-ansatz solver for N bosons on a ring of length L with
// H = -1/2 sum d^2/dx_j^2 + 2c sum_{i<j} delta(x_i - x_j).
//
// Writing H = 1/2 (-sum d^2 + 4c sum delta) maps the problem onto the
// conventional Lieb-Liniger form with coupling c' = 2c; energies are halved.
// The logarithmic Bethe equations solved here are
//
//     k_j L + sum_l 2 atan((k_j - k_l) / c') = 2 pi I_j,
//
// with E = 1/2 sum k_j^2 and P = sum k_j = (2 pi / L) sum I_j.

#include <cstddef>
#include <span>
#include <vector>

#include "superfluid/dispersion.hpp"

namespace superfluid::bethe {

struct LiebLinigerParams {
    int n_particles = 1;
    double box_length = 1.0;
    double coupling_c = 0.0;  // c of the Hamiltonian above; >= 0

    double density() const { return n_particles / box_length; }
    double effective_coupling() const { return 2.0 * coupling_c; }
    /// Throws std::invalid_argument unless N >= 1, 0 < L < inf, 0 <= c.
    /// c may be +infinity (impenetrable limit).
    void validate() const;
};

struct SolverOptions {
    double target_residual = 1e-12;
    double accept_residual = 1e-10;
    int max_newton_steps = 200;  // per continuation rung
    double ladder_ratio = 4.0;   // geometric step of the coupling ladder
};

struct BetheState {
    LiebLinigerParams params;
    /// 2 I_j, so that half-integer quantum numbers stay exact.
    std::vector<int> twice_quantum_numbers;
    std::vector<double> roots;
    double energy = 0.0;    // 1/2 sum k_j^2
    double momentum = 0.0;  // sum k_j
    double residual = 0.0;  // max_j |Bethe equation defect|
    int newton_steps = 0;   // summed over continuation rungs

    /// (2 pi / L) sum I_j, the exact quantised momentum.
    double quantized_momentum() const;
};

/// I_j = j - (N+1)/2, j = 1..N, as doubled integers.
std::vector<int> ground_quantum_numbers(int n_particles);

/// Quantum numbers of a single elementary excitation with `steps` units of
/// momentum 2 pi / L.
///  * ParticleTypeI: the top number is raised by `steps`.
///  * HoleTypeII: the `steps`-th number counted from the top is removed and
///    I_max + 1 appended; steps = N is the umklapp state.
/// steps = 0 gives the ground state. Throws std::invalid_argument for
/// steps < 0 or, on the hole branch, steps > N.
std::vector<int> excited_quantum_numbers(int n_particles, BranchKind branch, int steps);

/// max_j |k_j L + sum_l 2 atan((k_j - k_l)/c') - 2 pi I_j|.
double bethe_residual(const LiebLinigerParams& params, std::span<const int> twice_quantum_numbers,
                      std::span<const double> roots);

/// Solves for an arbitrary set of strictly increasing quantum numbers.
/// Damped Newton on the Gaudin matrix with a geometric continuation ladder
/// coming down from strong coupling. c = 0 is the ideal-gas limit
/// k_j = (2 pi / L)(I_j - j + (N+1)/2); c = inf gives k_j = 2 pi I_j / L.
/// Throws ConvergenceError with the residual history if a rung fails.
BetheState solve(const LiebLinigerParams& params, std::vector<int> twice_quantum_numbers,
                 const SolverOptions& options = {});

BetheState solve_ground(const LiebLinigerParams& params, const SolverOptions& options = {});

BetheState solve_excited(const LiebLinigerParams& params, BranchKind branch, int steps,
                         const SolverOptions& options = {});

/// Samples eps(p) = E_exc - E_0 against p = P_exc for steps = 0..max_steps.
DispersionBranch dispersion_curve(const LiebLinigerParams& params, BranchKind branch,
                                  int max_steps, const SolverOptions& options = {});

}  // namespace superfluid::bethe
