#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace superfluid {

/// The two elementary-excitation branches of the delta-interacting Bose gas.
/// There is no default: callers always say which branch they mean.
enum class BranchKind { ParticleTypeI, HoleTypeII };

std::string_view to_string(BranchKind kind);

/// Parses "particle" / "hole" (also the enumerator names). Empty optional on
/// anything else.
std::optional<BranchKind> parse_branch(std::string_view text);

struct DispersionSample {
    double k = 0.0;        // momentum, >= 0
    double epsilon = 0.0;  // excitation energy above the ground state
};

/// Sampled excitation curve eps(k), k >= 0, starting at (0, 0).
struct DispersionBranch {
    BranchKind branch = BranchKind::ParticleTypeI;
    double density = 0.0;
    std::vector<DispersionSample> samples;

    /// Throws std::invalid_argument unless the first sample is (0, 0), k is
    /// strictly increasing and eps >= 0 (up to a 1e-12 relative slack).
    void validate() const;

    double max_energy() const;
};

/// Closed-form infinite-coupling branches sampled uniformly on [0, k_max].
/// ParticleTypeI uses p^2/2 + k_F p; HoleTypeII uses k_F p - p^2/2 and
/// k_max is clipped to the umklapp point 2 k_F.
DispersionBranch girardeau_branch(double rho, BranchKind kind, double k_max, std::size_t count);

/// Ideal Bose gas, eps = k^2/2.
DispersionBranch free_particle_branch(double rho, double k_max, std::size_t count);

}  // namespace superfluid
