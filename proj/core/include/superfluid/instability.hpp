#pragma once

// Energy increment of a uniform current-carrying state under a local
// modification confined to a ball of radius R + c: the drift is removed
// inside radius R + a, the shell (R + a, R + b) is evacuated, and the density
// is restored smoothly across (R, R + a) and (R + b, R + c).
//
//   dE = T1 + T2 + T3
//   T1 = -1/2 n v^2 int_{|x| < R+a} g^2
//   T2 = int_{R < |x| < R+c} [ t (g^2 - 1) + 1/2 n |grad g|^2 ]
//   T3 = int int (g(x)^2 g(y)^2 - 1) n2(x - y) V(x - y)
//
// For large R, T1 ~ -R^d dominates T2 ~ R^(d-1) and T3 <= 0, so dE < 0.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace superfluid::instability {

using RadialFunction = std::function<double(double)>;

/// Concentric balls of radii R, R+a, R+b, R+c. Offsets stay fixed while R varies.
struct ShellConfig {
    int dimension = 1;  // 1 or 3
    double inner_radius = 1.0;
    double offset_a = 1.0;
    double offset_b = 2.0;
    double offset_c = 3.0;

    /// Throws std::invalid_argument unless d in {1,3}, R > 0, 0 < a < b < c.
    void validate() const;
    ShellConfig with_radius(double radius) const;
};

/// Profiles expressed in the shell offset s = |x| - R, so one profile serves
/// every R.
///   g(s):      1 for s <= 0 and s >= c, 0 on [a, b], values in [0, 1].
///   cutoff(s): the boost potential is h(x) = -(v.x) cutoff(|x| - R);
///              1 for s <= a, 0 for s >= b.
struct ProfilePair {
    RadialFunction g;
    RadialFunction dg;  // dg/ds
    RadialFunction cutoff;
    RadialFunction dcutoff;
    double grad_g_bound = 0.0;

    /// Half-cosine ramps on [0, a] and [b, c]; quintic smoothstep cutoff on [a, b].
    static ProfilePair cosine_ramps(double offset_a, double offset_b, double offset_c);
    /// g == 1, h == 0. Admissible only together with zero drift.
    static ProfilePair identity();
};

struct UniformCurrentState {
    double n_bar = 1.0;
    double t_bar = 0.5;
    double drift_v = 0.0;
    RadialFunction pair_correlation;  // n2(r) >= 0; empty means n_bar^2

    double pair_correlation_at(double r) const;
};

/// Radial two-body potential V(r) >= 0, zero for r >= range.
struct PairInteraction {
    RadialFunction potential;
    double range = 0.0;

    static PairInteraction none();
    /// strength * exp(1 - 1/(1 - (r/range)^2)); smooth, peak value = strength.
    static PairInteraction smooth_bump(double strength, double range);
    /// strength for r < range.
    static PairInteraction step(double strength, double range);

    bool is_zero() const { return !potential || range <= 0.0; }
};

struct QuadratureOptions {
    std::size_t order = 24;  // Gauss-Legendre points per panel
};

struct EnergyIncrement {
    double radius = 0.0;
    double t1 = 0.0;
    double t2 = 0.0;
    double t3 = 0.0;

    double total() const { return t1 + t2 + t3; }
};

/// Rejects (std::invalid_argument) a profile pair that violates its contract on
/// the given shells. The evacuation of (R+a, R+b) and the boost form of h are
/// only required when drift != 0: with v = 0 and h = 0 the reduced formula is
/// exact for any g with values in [0,1] that equals 1 inside R and beyond R+c.
void validate_profiles(const ProfilePair& profiles, const ShellConfig& shells, double drift_v);

EnergyIncrement energy_increment(const UniformCurrentState& state, const ShellConfig& shells,
                                 const ProfilePair& profiles, const PairInteraction& interaction,
                                 const QuadratureOptions& options = {});

/// T1 + T2 recomputed from the unreduced local kinetic increment
///   t (g^2 - 1) + n g^2 (v.grad h + 1/2 |grad h|^2) + 1/2 n |grad g|^2
/// integrated over the whole modified region (angle-averaged in d = 3).
double kinetic_increment_unreduced(const UniformCurrentState& state, const ShellConfig& shells,
                                   const ProfilePair& profiles, const QuadratureOptions& options = {});

struct RadiusSearchOptions {
    double r_min = 1e-3;
    double r_max = 1e7;
    double relative_precision = 0.01;
    QuadratureOptions quadrature;
};

struct InstabilityRadius {
    std::optional<double> radius;  // empty: no instability found
    bool negative_at_lower_bound = false;
    bool tail_decreasing = false;  // dE(2 R*) < dE(R*)
    std::vector<EnergyIncrement> table;
    std::string diagnostic;
};

/// Smallest R with dE(R) < 0: bracket by doubling from r_min, then bisect.
InstabilityRadius find_instability_radius(const UniformCurrentState& state,
                                          const ShellConfig& shells_template,
                                          const ProfilePair& profiles,
                                          const PairInteraction& interaction,
                                          const RadiusSearchOptions& options = {});

struct ScalingFit {
    double p1 = 0.0;  // exponent of |T1| in R
    double p2 = 0.0;  // exponent of |T2| in R
    std::vector<EnergyIncrement> table;
};

/// Log-log regression of |T1| and |T2| over R_list (>= 4 radii, geometric).
ScalingFit scaling_exponents(const UniformCurrentState& state, const ShellConfig& shells_template,
                             const ProfilePair& profiles, const PairInteraction& interaction,
                             std::span<const double> radii, const QuadratureOptions& options = {});

namespace detail {

/// Phi(t) = int_0^t tau w(tau) dtau.
double first_moment(const RadialFunction& w, double range, double t, std::size_t order);

/// Three-dimensional convolution of radial functions evaluated at radius r:
///   (u * w)(r) = (2 pi / r) int s u(s) [Phi(r + s) - Phi(|r - s|)] ds
/// with u supported on [support_lo, support_hi].
double radial_convolution_3d(const RadialFunction& u, double support_lo, double support_hi,
                             std::span<const double> u_breakpoints, const RadialFunction& w,
                             double range, double r, std::size_t order);

}  // namespace detail

}  // namespace superfluid::instability
