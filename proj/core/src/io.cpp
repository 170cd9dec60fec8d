#include "superfluid/io.hpp"

#include <charconv>
#include <cmath>
#include <ostream>

#include "json.hpp"

namespace superfluid::io {

namespace {

using nlohmann::json;

json number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    return json::parse(format_number(value));
}

}  // namespace

std::string format_number(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    if (value == 0.0) value = 0.0;  // drop the sign of -0
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

void write_eos_csv(std::ostream& out, std::span<const thermo::EosPoint> points) {
    out << "rho,c,gamma,e,P,kappa0,method\n";
    for (const auto& p : points)
        out << format_number(p.rho) << ',' << format_number(p.coupling_c) << ',' << format_number(p.gamma()) << ','
            << format_number(p.energy_density) << ',' << format_number(p.pressure) << ','
            << format_number(p.kappa0) << ',' << thermo::to_string(p.method) << '\n';
}

void write_dispersion_csv(std::ostream& out, const DispersionBranch& curve) {
    out << "branch,rho,k,epsilon\n";
    for (const auto& s : curve.samples)
        out << to_string(curve.branch) << ',' << format_number(curve.density) << ',' << format_number(s.k) << ','
            << format_number(s.epsilon) << '\n';
}

void write_increment_csv(std::ostream& out, std::span<const instability::EnergyIncrement> rows) {
    out << "R,T1,T2,T3,dE\n";
    for (const auto& r : rows)
        out << format_number(r.radius) << ',' << format_number(r.t1) << ',' << format_number(r.t2) << ','
            << format_number(r.t3) << ',' << format_number(r.total()) << '\n';
}

void write_field_csv(std::ostream& out, const condensate::CondensateField& field,
                     const condensate::CondensateObservables& observables) {
    const auto& g = field.grid;
    out << "r,theta,z,re,im,j_r,j_theta,j_z\n";
    for (std::size_t i = 0; i < g.r.size(); ++i)
        for (std::size_t j = 0; j < g.n_theta; ++j)
            for (std::size_t k = 0; k < g.z.size(); ++k) {
                const std::size_t idx = g.index(i, j, k);
                const auto& psi = field.amplitude[idx];
                out << format_number(g.r[i]) << ',' << format_number(g.theta(j)) << ',' << format_number(g.z[k])
                    << ',' << format_number(psi.real()) << ',' << format_number(psi.imag()) << ','
                    << format_number(observables.j_r[idx]) << ',' << format_number(observables.j_theta[idx])
                    << ',' << format_number(observables.j_z[idx]) << '\n';
            }
}

std::string consistency_json(const landau::ConsistencyReport& report) {
    json checks = json::array();
    for (const auto& c : report.checks)
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"value", number(c.value)}, {"bound", number(c.bound)}});
    json doc = {{"rho", number(report.rho)},
                {"c", number(report.coupling_c)},
                {"branch", std::string(to_string(report.branch))},
                {"v_c", number(report.v_c)},
                {"v_s_slope", number(report.v_s_slope)},
                {"v_s_kappa", number(report.v_s_kappa)},
                {"kappa0", number(report.kappa0)},
                {"all_passed", report.all_passed()},
                {"checks", checks}};
    return doc.dump(2);
}

std::string scaling_json(const instability::ScalingFit& fit, int dimension, double drift_v) {
    json rows = json::array();
    for (const auto& r : fit.table)
        rows.push_back({{"R", number(r.radius)},
                        {"T1", number(r.t1)},
                        {"T2", number(r.t2)},
                        {"T3", number(r.t3)},
                        {"dE", number(r.total())}});
    json doc = {{"dimension", dimension},
                {"drift_v", number(drift_v)},
                {"p1", number(fit.p1)},
                {"p2", number(fit.p2)},
                {"expected_p1", dimension},
                {"expected_p2", dimension - 1},
                {"rows", rows}};
    return doc.dump(2);
}

std::string bethe_state_json(const bethe::BetheState& state) {
    json roots = json::array();
    for (double k : state.roots) roots.push_back(number(k));
    json doc = {{"n", state.params.n_particles},
                {"L", number(state.params.box_length)},
                {"c", number(state.params.coupling_c)},
                {"twice_quantum_numbers", state.twice_quantum_numbers},
                {"roots", roots},
                {"energy", number(state.energy)},
                {"energy_per_length", number(state.energy / state.params.box_length)},
                {"momentum", number(state.quantized_momentum())},
                {"residual", number(state.residual)},
                {"newton_steps", state.newton_steps}};
    return doc.dump(2);
}

}  // namespace superfluid::io
