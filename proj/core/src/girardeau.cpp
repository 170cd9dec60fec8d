#include "superfluid/girardeau.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <set>
#include <stdexcept>

namespace superfluid::girardeau {

namespace {

constexpr double kPi = std::numbers::pi;

void require_nonnegative(double rho, const char* what) {
    if (!(rho >= 0.0) || !std::isfinite(rho))
        throw std::invalid_argument(std::string(what) + ": density must be finite and >= 0");
}

}  // namespace

double fermi_momentum(double rho) {
    require_nonnegative(rho, "fermi_momentum");
    return kPi * rho;
}

double excitation_energy(double rho, double p) {
    return 0.5 * p * p + fermi_momentum(rho) * std::abs(p);
}

double hole_excitation_energy(double rho, double p) {
    const double kf = fermi_momentum(rho);
    const double q = std::abs(p);
    if (q > 2.0 * kf)
        throw std::invalid_argument("hole_excitation_energy: |p| exceeds the umklapp momentum 2 k_F");
    return kf * q - 0.5 * q * q;
}

double ground_energy_density(double rho) {
    require_nonnegative(rho, "ground_energy_density");
    return kPi * kPi * rho * rho * rho / 6.0;
}

double pressure(double rho) {
    require_nonnegative(rho, "pressure");
    return kPi * kPi * rho * rho * rho / 3.0;
}

double compressibility(double rho) {
    require_nonnegative(rho, "compressibility");
    if (rho == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (kPi * kPi * rho * rho * rho);
}

double sound_velocity_closed(double rho) { return fermi_momentum(rho); }

FermiSeaConfig FermiSeaConfig::ground(int n_particles, double box_length) {
    if (n_particles < 1) throw std::invalid_argument("FermiSeaConfig: N must be >= 1");
    FermiSeaConfig config{n_particles, box_length, {}};
    const int lowest = (n_particles % 2 == 1) ? -(n_particles - 1) / 2 : -n_particles / 2 + 1;
    for (int j = 0; j < n_particles; ++j) config.occupied_modes.push_back(lowest + j);
    return config;
}

bool FermiSeaConfig::is_ground() const {
    if (n_particles < 1) return false;
    auto sorted = occupied_modes;
    std::sort(sorted.begin(), sorted.end());
    return sorted == ground(n_particles, box_length).occupied_modes;
}

void FermiSeaConfig::validate() const {
    if (n_particles < 1) throw std::invalid_argument("FermiSeaConfig: N must be >= 1");
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw std::invalid_argument("FermiSeaConfig: box length must be positive and finite");
    if (occupied_modes.size() != static_cast<std::size_t>(n_particles))
        throw std::invalid_argument("FermiSeaConfig: need exactly N occupied modes");
    std::set<int> distinct(occupied_modes.begin(), occupied_modes.end());
    if (distinct.size() != occupied_modes.size())
        throw std::invalid_argument("FermiSeaConfig: occupied modes must be pairwise distinct");
}

std::complex<double> fermi_wavefunction(const FermiSeaConfig& config, std::span<const double> positions) {
    config.validate();
    const int n = config.n_particles;
    if (positions.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("fermi_wavefunction: need exactly N positions");

    const double L = config.box_length;
    Eigen::MatrixXcd slater(n, n);
    for (int j = 0; j < n; ++j)
        for (int m = 0; m < n; ++m)
            slater(j, m) = std::polar(1.0, 2.0 * kPi * config.occupied_modes[m] * positions[j] / L);

    // orbitals carry 1/sqrt(L); the antisymmetrised product carries 1/sqrt(N!)
    const double norm = std::exp(-0.5 * (n * std::log(L) + std::lgamma(n + 1.0)));
    return norm * slater.partialPivLu().determinant();
}

std::complex<double> bose_wavefunction(const FermiSeaConfig& config, std::span<const double> positions) {
    config.validate();
    if (positions.size() != static_cast<std::size_t>(config.n_particles))
        throw std::invalid_argument("bose_wavefunction: need exactly N positions");
    for (double x : positions)
        if (!(x >= 0.0 && x < config.box_length))
            throw std::invalid_argument("bose_wavefunction: positions must lie in [0, L)");

    double sign = 1.0;
    for (std::size_t j = 0; j < positions.size(); ++j)
        for (std::size_t l = j + 1; l < positions.size(); ++l) {
            if (positions[j] == positions[l]) return {0.0, 0.0};
            if (positions[j] < positions[l]) sign = -sign;
        }

    const std::complex<double> fermi = fermi_wavefunction(config, positions);
    if (config.is_ground()) return {std::abs(fermi), 0.0};
    return sign * fermi;
}

}  // namespace superfluid::girardeau
