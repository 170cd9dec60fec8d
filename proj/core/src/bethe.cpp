#include "superfluid/bethe.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "superfluid/errors.hpp"

namespace superfluid::bethe {

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const Eigen::VectorXd& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Bethe defect F_j for coupling cp (= c' = 2c).
Eigen::VectorXd defect(const Eigen::VectorXd& k, std::span<const int> twice_i, double L, double cp) {
    const Eigen::Index n = k.size();
    Eigen::VectorXd f(n);
    for (Eigen::Index j = 0; j < n; ++j) {
        double s = k[j] * L - kPi * twice_i[j];
        for (Eigen::Index l = 0; l < n; ++l)
            if (l != j) s += 2.0 * std::atan((k[j] - k[l]) / cp);
        f[j] = s;
    }
    return f;
}

// Gaudin matrix: Jacobian of the defect. Symmetric positive definite for cp > 0.
Eigen::MatrixXd gaudin(const Eigen::VectorXd& k, double L, double cp) {
    const Eigen::Index n = k.size();
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        jac(j, j) = L;
        for (Eigen::Index l = 0; l < n; ++l) {
            if (l == j) continue;
            const double d = k[j] - k[l];
            const double kern = 2.0 * cp / (cp * cp + d * d);
            jac(j, j) += kern;
            jac(j, l) = -kern;
        }
    }
    return jac;
}

struct RungOutcome {
    double residual;
    int steps;
};

RungOutcome newton_rung(Eigen::VectorXd& k, std::span<const int> twice_i, double L, double cp,
                        const SolverOptions& options, std::vector<double>& history) {
    Eigen::VectorXd f = defect(k, twice_i, L, cp);
    double res = max_abs(f);
    history.push_back(res);
    int steps = 0;
    while (res > options.target_residual && steps < options.max_newton_steps) {
        const Eigen::MatrixXd jac = gaudin(k, L, cp);
        Eigen::LLT<Eigen::MatrixXd> llt(jac);
        const Eigen::VectorXd dk = llt.info() == Eigen::Success ? Eigen::VectorXd(llt.solve(-f))
                                                               : Eigen::VectorXd(jac.partialPivLu().solve(-f));
        double lambda = 1.0;
        Eigen::VectorXd trial;
        Eigen::VectorXd ftrial;
        double rtrial = res;
        for (; lambda >= 1.0 / 1024.0; lambda *= 0.5) {
            trial = k + lambda * dk;
            ftrial = defect(trial, twice_i, L, cp);
            rtrial = max_abs(ftrial);
            if (rtrial < (1.0 - 1e-4 * lambda) * res) break;
        }
        ++steps;
        if (!(rtrial < res)) break;  // stalled at rounding level
        k = trial;
        f = ftrial;
        res = rtrial;
        history.push_back(res);
    }
    return {res, steps};
}

void check_quantum_numbers(int n, std::span<const int> twice_i) {
    if (twice_i.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("bethe: need exactly N quantum numbers");
    const int parity = (n + 1) % 2;  // half-odd for even N
    for (std::size_t j = 0; j < twice_i.size(); ++j) {
        if (std::abs(twice_i[j]) % 2 != parity)
            throw std::invalid_argument("bethe: quantum numbers must be integers for odd N, half-odd for even N");
        if (j > 0 && twice_i[j] <= twice_i[j - 1])
            throw std::invalid_argument("bethe: quantum numbers must be strictly increasing");
    }
}

}  // namespace

void LiebLinigerParams::validate() const {
    if (n_particles < 1) throw std::invalid_argument("LiebLinigerParams: N must be >= 1");
    if (!(box_length > 0.0) || !std::isfinite(box_length))
        throw std::invalid_argument("LiebLinigerParams: L must be positive and finite");
    if (!(coupling_c >= 0.0))
        throw std::invalid_argument("LiebLinigerParams: coupling must be >= 0 (repulsive)");
}

double BetheState::quantized_momentum() const {
    const long long sum = std::accumulate(twice_quantum_numbers.begin(), twice_quantum_numbers.end(), 0LL);
    return kPi * static_cast<double>(sum) / params.box_length;
}

std::vector<int> ground_quantum_numbers(int n_particles) {
    if (n_particles < 1) throw std::invalid_argument("ground_quantum_numbers: N must be >= 1");
    std::vector<int> twice(n_particles);
    for (int j = 1; j <= n_particles; ++j) twice[j - 1] = 2 * j - (n_particles + 1);
    return twice;
}

std::vector<int> excited_quantum_numbers(int n_particles, BranchKind branch, int steps) {
    if (steps < 0) throw std::invalid_argument("excited_quantum_numbers: steps must be >= 0");
    auto twice = ground_quantum_numbers(n_particles);
    if (steps == 0) return twice;
    switch (branch) {
        case BranchKind::ParticleTypeI:
            twice.back() += 2 * steps;
            break;
        case BranchKind::HoleTypeII: {
            if (steps > n_particles)
                throw std::invalid_argument("excited_quantum_numbers: hole branch needs steps <= N");
            const int top = twice.back();
            twice.erase(twice.end() - steps);
            twice.push_back(top + 2);
            break;
        }
    }
    return twice;
}

double bethe_residual(const LiebLinigerParams& params, std::span<const int> twice_quantum_numbers,
                      std::span<const double> roots) {
    const double cp = params.effective_coupling();
    const double L = params.box_length;
    double worst = 0.0;
    for (std::size_t j = 0; j < roots.size(); ++j) {
        double s = roots[j] * L - kPi * twice_quantum_numbers[j];
        if (std::isfinite(cp))
            for (std::size_t l = 0; l < roots.size(); ++l)
                if (l != j) s += 2.0 * std::atan((roots[j] - roots[l]) / cp);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

BetheState solve(const LiebLinigerParams& params, std::vector<int> twice_quantum_numbers,
                 const SolverOptions& options) {
    params.validate();
    const int n = params.n_particles;
    check_quantum_numbers(n, twice_quantum_numbers);
    const double L = params.box_length;

    BetheState state;
    state.params = params;
    state.twice_quantum_numbers = std::move(twice_quantum_numbers);
    const auto& twice_i = state.twice_quantum_numbers;
    state.roots.assign(n, 0.0);

    if (params.coupling_c == 0.0) {
        // c -> 0+: each atan term tends to (pi/2) sgn(k_j - k_l).
        for (int j = 0; j < n; ++j)
            state.roots[j] = kPi * (twice_i[j] - (2 * (j + 1) - n - 1)) / L;
    } else if (std::isinf(params.coupling_c)) {
        for (int j = 0; j < n; ++j) state.roots[j] = kPi * twice_i[j] / L;
    } else {
        const double cp = params.effective_coupling();
        const int top = std::max(std::abs(twice_i.front()), std::abs(twice_i.back()));
        const double k_scale = kPi * (top + 2) / L;
        double rung = std::max(cp, 10.0 * k_scale);

        Eigen::VectorXd k(n);
        for (int j = 0; j < n; ++j) k[j] = kPi * twice_i[j] / (L + 2.0 * n / rung);

        std::vector<double> history;
        for (;;) {
            const RungOutcome out = newton_rung(k, twice_i, L, rung, options, history);
            state.newton_steps += out.steps;
            if (!(out.residual <= options.accept_residual)) {
                std::ostringstream msg;
                msg << "bethe: Newton failed at coupling c' = " << rung << " (residual " << out.residual
                    << " after " << out.steps << " steps)";
                throw ConvergenceError(msg.str(), history);
            }
            if (rung == cp) break;
            rung = std::max(cp, rung / options.ladder_ratio);
        }
        for (int j = 0; j < n; ++j) state.roots[j] = k[j];
    }

    state.residual = bethe_residual(params, state.twice_quantum_numbers, state.roots);
    double e = 0.0, p = 0.0;
    for (double kj : state.roots) {
        e += 0.5 * kj * kj;
        p += kj;
    }
    state.energy = e;
    state.momentum = p;
    return state;
}

BetheState solve_ground(const LiebLinigerParams& params, const SolverOptions& options) {
    params.validate();
    return solve(params, ground_quantum_numbers(params.n_particles), options);
}

BetheState solve_excited(const LiebLinigerParams& params, BranchKind branch, int steps,
                         const SolverOptions& options) {
    params.validate();
    return solve(params, excited_quantum_numbers(params.n_particles, branch, steps), options);
}

DispersionBranch dispersion_curve(const LiebLinigerParams& params, BranchKind branch, int max_steps,
                                  const SolverOptions& options) {
    if (max_steps < 0) throw std::invalid_argument("dispersion_curve: max_steps must be >= 0");
    if (branch == BranchKind::HoleTypeII && max_steps > params.n_particles)
        throw std::invalid_argument("dispersion_curve: hole branch needs max_steps <= N");
    const BetheState ground = solve_ground(params, options);
    DispersionBranch curve{branch, params.density(), {{0.0, 0.0}}};
    for (int m = 1; m <= max_steps; ++m) {
        const BetheState excited = solve_excited(params, branch, m, options);
        curve.samples.push_back({excited.quantized_momentum(), excited.energy - ground.energy});
    }
    return curve;
}

}  // namespace superfluid::bethe
