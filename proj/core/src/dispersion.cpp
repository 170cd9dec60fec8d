#include "superfluid/dispersion.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "superfluid/girardeau.hpp"

namespace superfluid {

std::string_view to_string(BranchKind kind) {
    switch (kind) {
        case BranchKind::ParticleTypeI: return "particle";
        case BranchKind::HoleTypeII: return "hole";
    }
    return "unknown";
}

std::optional<BranchKind> parse_branch(std::string_view text) {
    if (text == "particle" || text == "ParticleTypeI" || text == "I") return BranchKind::ParticleTypeI;
    if (text == "hole" || text == "HoleTypeII" || text == "II") return BranchKind::HoleTypeII;
    return std::nullopt;
}

void DispersionBranch::validate() const {
    if (samples.empty()) throw std::invalid_argument("DispersionBranch: no samples");
    if (samples.front().k != 0.0 || samples.front().epsilon != 0.0)
        throw std::invalid_argument("DispersionBranch: first sample must be (0, 0)");
    const double slack = 1e-12 * std::max(1.0, max_energy());
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].k > samples[i - 1].k))
            throw std::invalid_argument("DispersionBranch: k must be strictly increasing");
        if (!(samples[i].epsilon >= -slack))
            throw std::invalid_argument("DispersionBranch: negative excitation energy");
    }
}

double DispersionBranch::max_energy() const {
    double m = 0.0;
    for (const auto& s : samples) m = std::max(m, s.epsilon);
    return m;
}

DispersionBranch girardeau_branch(double rho, BranchKind kind, double k_max, std::size_t count) {
    if (count < 2 || !(k_max > 0.0)) throw std::invalid_argument("girardeau_branch: need k_max > 0, count >= 2");
    const double kf = girardeau::fermi_momentum(rho);
    if (kind == BranchKind::HoleTypeII) k_max = std::min(k_max, 2.0 * kf);
    DispersionBranch curve{kind, rho, {}};
    curve.samples.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double k = k_max * static_cast<double>(i) / static_cast<double>(count - 1);
        const double eps = kind == BranchKind::ParticleTypeI ? girardeau::excitation_energy(rho, k)
                                                             : girardeau::hole_excitation_energy(rho, k);
        curve.samples.push_back({k, std::max(eps, 0.0)});
    }
    return curve;
}

DispersionBranch free_particle_branch(double rho, double k_max, std::size_t count) {
    if (count < 2 || !(k_max > 0.0)) throw std::invalid_argument("free_particle_branch: need k_max > 0, count >= 2");
    DispersionBranch curve{BranchKind::ParticleTypeI, rho, {}};
    for (std::size_t i = 0; i < count; ++i) {
        const double k = k_max * static_cast<double>(i) / static_cast<double>(count - 1);
        curve.samples.push_back({k, 0.5 * k * k});
    }
    return curve;
}

}  // namespace superfluid
