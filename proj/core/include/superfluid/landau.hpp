#pragma once

// Landau criterion on a sampled dispersion curve: critical velocity
// inf eps(k)/k, sound velocity from the small-k slope, the stability
// predicate for a boosted state, and the consistency report that ties the
// excitation spectrum to the equation of state.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "superfluid/dispersion.hpp"
#include "superfluid/thermo.hpp"

namespace superfluid::landau {

/// Drift speed |v|. The direction is folded out: the worst case for a
/// one-dimensional k is v antiparallel to k.
struct BoostSpec {
    double speed = 0.0;
};

struct SoundFitOptions {
    /// Samples with 0 < k <= k_window enter the fit. When unset, the window
    /// ends at the `default_window_samples`-th nonzero sample.
    std::optional<double> k_window;
    std::size_t default_window_samples = 6;
    std::size_t min_samples = 3;
};

struct SoundVelocityFit {
    double velocity = 0.0;   // |lim_{k->0} d eps/dk|
    double curvature = 0.0;  // coefficient of k^2 in the local model
    double k_window = 0.0;
    std::size_t samples_used = 0;
    /// Relative change of the slope when the window is halved; NaN when the
    /// halved window holds fewer than min_samples samples.
    double window_halving_change = 0.0;
};

/// Fits eps(k) = v k + a k^2 through the origin over the small-k window,
/// weighting residuals by 1/k^2 (equivalently, a straight-line fit of eps/k).
/// Throws NumericalError if fewer than min_samples samples fall in the window.
SoundVelocityFit sound_velocity(const DispersionBranch& curve, const SoundFitOptions& options = {});

struct CriticalVelocity {
    double velocity = 0.0;
    double minimizing_k = 0.0;
    bool at_boundary = false;  // infimum approached as k -> 0
    bool degenerate = false;   // all eps == 0
};

/// inf_k eps(k)/k over the samples, refined by a parabola through the grid
/// minimiser and its neighbours. The k -> 0 end is represented by the fitted
/// slope, so the result never exceeds the sound velocity.
CriticalVelocity critical_velocity(const DispersionBranch& curve, const SoundFitOptions& options = {});

struct StabilityResult {
    bool stable = true;
    double worst_k = 0.0;
    double margin = 0.0;  // min_k [eps(k) - |v| k]
    double tolerance = 0.0;
};

/// Landau condition eps(k) - |v| k >= -tol on every sample, with
/// tol = 1e-9 max(eps).
StabilityResult is_stable(const DispersionBranch& curve, BoostSpec boost);

/// Locates the largest stable speed by bisection on is_stable.
double bisect_critical_velocity(const DispersionBranch& curve, double relative_precision = 1e-6);

struct ConsistencyCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double bound = 0.0;
};

struct ConsistencyOptions {
    double agreement_tolerance = 0.03;  // relative, slope vs (rho kappa_0)^(-1/2)
    double inequality_slack = 1e-9;     // relative slack on v_c <= v_s
    SoundFitOptions sound;
};

struct ConsistencyReport {
    double rho = 0.0;
    double coupling_c = 0.0;
    BranchKind branch = BranchKind::ParticleTypeI;
    double v_c = 0.0;
    double v_s_slope = 0.0;
    double v_s_kappa = 0.0;
    double kappa0 = 0.0;
    std::vector<ConsistencyCheck> checks;

    bool all_passed() const;
    const ConsistencyCheck* find(const std::string& name) const;
};

/// Check names used in reports.
inline constexpr const char* kKappaNonNegative = "kappa0_nonnegative";
inline constexpr const char* kFiniteCompressibility = "finite_compressibility";
inline constexpr const char* kVcBelowVs = "vc_le_vs";
inline constexpr const char* kVsPositive = "vs_positive";
inline constexpr const char* kVsAgreement = "vs_slope_matches_kappa";

/// Evaluates every check for a curve and an EoS point at the same (rho, c).
/// Failures are recorded in the report, never thrown.
ConsistencyReport consistency_report(const DispersionBranch& curve, const thermo::EosPoint& eos,
                                     const ConsistencyOptions& options = {});

}  // namespace superfluid::landau
