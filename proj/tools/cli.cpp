#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "superfluid/acceptance.hpp"
#include "superfluid/bethe.hpp"
#include "superfluid/condensate.hpp"
#include "superfluid/dispersion.hpp"
#include "superfluid/errors.hpp"
#include "superfluid/girardeau.hpp"
#include "superfluid/instability.hpp"
#include "superfluid/io.hpp"
#include "superfluid/landau.hpp"
#include "superfluid/quadrature.hpp"
#include "superfluid/sweep.hpp"
#include "superfluid/thermo.hpp"

namespace superfluid::cli {

namespace {

using nlohmann::json;
constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

json number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    return json::parse(io::format_number(x));
}

double parse_number(const std::string& token) {
    std::string t = token;
    t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char ch) { return std::isspace(ch); }), t.end());
    if (t == "inf" || t == "+inf" || t == "infinity") return kInf;
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(t, &used);
    } catch (const std::exception&) {
        throw UsageError("not a number: '" + token + "'");
    }
    if (used != t.size() || std::isnan(value)) throw UsageError("not a number: '" + token + "'");
    return value;
}

// Options shared by the subcommands; each subcommand registers the subset it uses.
struct Options {
    std::string rho = "1";
    std::string coupling = "inf";
    int n = 0;
    double box_length = 0.0;
    std::string branch = "particle";
    std::optional<double> v;
    int d = 1;
    std::string radii = "20,40,80,160";
    double omega = 0.0;
    int winding = 0;
    std::string out_path;
    std::string format = "csv";
    std::size_t jobs = 1;

    // girardeau / bethe
    std::size_t samples = 201;
    // instability
    double t_bar = 0.5;
    std::string shell = "1,2,3";
    double interaction_strength = 0.0;
    double interaction_range = 0.5;
    // vortex
    std::string profile = "gaussian";
    double r_max = 3.0;
    std::size_t n_r = 31;
    std::size_t n_theta = 64;
    double z_extent = 1.0;
    std::size_t n_z = 5;
    // acceptance
    int only = 0;
    bool quiet = false;
    bool dispersion = false;
};

BranchKind branch_of(const Options& o) {
    const auto kind = parse_branch(o.branch);
    if (!kind) throw UsageError("--branch must be 'particle' or 'hole'");
    return *kind;
}

double single(const std::string& text, const char* flag) {
    const auto grid = parse_grid(text);
    if (grid.size() != 1) throw UsageError(std::string(flag) + " takes a single value here");
    return grid.front();
}

json eos_record(const thermo::EosPoint& p) {
    return {{"rho", number(p.rho)},         {"c", number(p.coupling_c)},
            {"gamma", number(p.gamma())},   {"e", number(p.energy_density)},
            {"P", number(p.pressure)},      {"kappa0", number(p.kappa0)},
            {"method", std::string(thermo::to_string(p.method))}};
}

json dispersion_record(const DispersionBranch& curve) {
    json k = json::array(), eps = json::array();
    for (const auto& s : curve.samples) {
        k.push_back(number(s.k));
        eps.push_back(number(s.epsilon));
    }
    return {{"branch", std::string(to_string(curve.branch))}, {"rho", number(curve.density)}, {"k", k}, {"epsilon", eps}};
}

void emit_eos(std::ostream& out, const Options& o, const std::vector<thermo::EosPoint>& points) {
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& p : points) rows.push_back(eos_record(p));
        out << rows.dump(2) << '\n';
    } else {
        io::write_eos_csv(out, points);
    }
}

void emit_dispersion(std::ostream& out, const Options& o, const std::vector<DispersionBranch>& curves) {
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& c : curves) rows.push_back(dispersion_record(c));
        out << rows.dump(2) << '\n';
    } else {
        out << "branch,rho,k,epsilon\n";
        for (const auto& c : curves) {
            std::ostringstream body;
            io::write_dispersion_csv(body, c);
            const std::string text = body.str();
            out << text.substr(text.find('\n') + 1);
        }
    }
}

int cmd_girardeau(const Options& o, std::ostream& out) {
    const auto rho = parse_grid(o.rho);
    for (double r : rho)
        if (!(r >= 0.0) || !std::isfinite(r)) throw UsageError("--rho values must be finite and >= 0");
    if (o.dispersion) {
        std::vector<DispersionBranch> curves;
        for (double r : rho) curves.push_back(girardeau_branch(r, branch_of(o), 4.0 * kPi * r, o.samples));
        emit_dispersion(out, o, curves);
        return kSuccess;
    }
    std::vector<thermo::EosPoint> points;
    for (double r : rho) points.push_back(thermo::eos_closed_form(r));
    emit_eos(out, o, points);
    return kSuccess;
}

int cmd_bethe(const Options& o, std::ostream& out) {
    if (o.n < 1) throw UsageError("--n must be >= 1");
    const double length = o.box_length > 0.0 ? o.box_length : static_cast<double>(o.n);
    const auto couplings = parse_grid(o.coupling);
    for (double c : couplings)
        if (!(c >= 0.0)) throw UsageError("--coupling values must be >= 0");

    if (o.dispersion) {
        const BranchKind kind = branch_of(o);
        const int steps = static_cast<int>(std::min<std::size_t>(o.samples, static_cast<std::size_t>(o.n)));
        auto curves = parallel_map(couplings.size(), o.jobs, [&](std::size_t i) {
            return bethe::dispersion_curve({o.n, length, couplings[i]}, kind, steps);
        });
        emit_dispersion(out, o, curves);
        return kSuccess;
    }

    auto states = parallel_map(couplings.size(), o.jobs,
                               [&](std::size_t i) { return bethe::solve_ground({o.n, length, couplings[i]}); });
    if (o.format == "json") {
        json rows = json::array();
        for (const auto& s : states) rows.push_back(json::parse(io::bethe_state_json(s)));
        out << rows.dump(2) << '\n';
    } else {
        out << "N,L,c,E,E_per_L,P,residual,newton_steps\n";
        for (const auto& s : states)
            out << s.params.n_particles << ',' << io::format_number(length) << ',' << io::format_number(s.params.coupling_c)
                << ',' << io::format_number(s.energy) << ',' << io::format_number(s.energy / length) << ','
                << io::format_number(s.quantized_momentum()) << ',' << io::format_number(s.residual) << ','
                << s.newton_steps << '\n';
    }
    return kSuccess;
}

thermo::EosPoint eos_for(double rho, double c) {
    if (std::isinf(c)) return thermo::eos_closed_form(rho);
    if (c == 0.0) return thermo::eos_ideal_bose(rho);
    return thermo::eos_integral_equation(rho, c);
}

int cmd_thermo(const Options& o, std::ostream& out) {
    const auto rho = parse_grid(o.rho);
    const auto couplings = parse_grid(o.coupling);
    for (double r : rho)
        if (!(r > 0.0) || !std::isfinite(r)) throw UsageError("--rho values must be finite and > 0");
    for (double c : couplings)
        if (!(c >= 0.0)) throw UsageError("--coupling values must be >= 0");
    const std::size_t total = rho.size() * couplings.size();
    auto points = parallel_map(total, o.jobs, [&](std::size_t i) {
        return eos_for(rho[i / couplings.size()], couplings[i % couplings.size()]);
    });
    emit_eos(out, o, points);
    return kSuccess;
}

int cmd_landau(const Options& o, std::ostream& out) {
    const double rho = single(o.rho, "--rho");
    const double c = single(o.coupling, "--coupling");
    if (!(rho > 0.0) || !std::isfinite(rho)) throw UsageError("--rho must be finite and > 0");
    if (!(c >= 0.0)) throw UsageError("--coupling must be >= 0");
    const BranchKind kind = branch_of(o);

    DispersionBranch curve;
    if (std::isinf(c)) {
        curve = girardeau_branch(rho, kind, (kind == BranchKind::HoleTypeII ? 2.0 : 4.0) * kPi * rho, 4001);
    } else {
        const int n = o.n > 0 ? o.n : 201;
        const int steps = kind == BranchKind::HoleTypeII ? n : 8;
        curve = bethe::dispersion_curve({n, n / rho, c}, kind, steps);
    }
    const auto report = landau::consistency_report(curve, eos_for(rho, c));
    json doc = json::parse(io::consistency_json(report));
    if (o.v) {
        const auto st = landau::is_stable(curve, {*o.v});
        doc["boost"] = {{"v", number(*o.v)}, {"stable", st.stable}, {"margin", number(st.margin)},
                        {"worst_k", number(st.worst_k)}};
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
}

int cmd_instability(const Options& o, std::ostream& out) {
    using namespace instability;
    if (o.d != 1 && o.d != 3) throw UsageError("--d must be 1 or 3");
    if (!o.v) throw UsageError("--v is required");
    const auto radii = parse_grid(o.radii);
    const auto shell = parse_grid(o.shell);
    if (shell.size() != 3) throw UsageError("--shell takes three offsets a,b,c");
    const double n_bar = single(o.rho, "--rho");

    const UniformCurrentState state{n_bar, o.t_bar, *o.v, {}};
    const ShellConfig shells{o.d, radii.front(), shell[0], shell[1], shell[2]};
    const auto profiles = ProfilePair::cosine_ramps(shell[0], shell[1], shell[2]);
    const auto interaction = o.interaction_strength == 0.0
                                 ? PairInteraction::none()
                                 : PairInteraction::smooth_bump(o.interaction_strength, o.interaction_range);
    for (double r : radii) shells.with_radius(r).validate();
    validate_profiles(profiles, shells, state.drift_v);

    ScalingFit fit;
    fit.table = parallel_map(radii.size(), o.jobs, [&](std::size_t i) {
        return energy_increment(state, shells.with_radius(radii[i]), profiles, interaction);
    });
    const bool fitted = radii.size() >= 2;
    if (fitted) {
        std::vector<double> t1, t2;
        for (const auto& row : fit.table) {
            t1.push_back(std::abs(row.t1));
            t2.push_back(std::abs(row.t2));
        }
        fit.p1 = log_log_slope(radii, t1);
        fit.p2 = log_log_slope(radii, t2);
    }

    if (o.format == "json") {
        json doc = json::parse(io::scaling_json(fit, o.d, *o.v));
        if (!fitted) doc["p1"] = doc["p2"] = nullptr;
        out << doc.dump(2) << '\n';
    } else {
        io::write_increment_csv(out, fit.table);
        if (fitted) out << "# p1=" << io::format_number(fit.p1) << " p2=" << io::format_number(fit.p2) << '\n';
    }
    return kSuccess;
}

int cmd_vortex(const Options& o, std::ostream& out) {
    using namespace condensate;
    const auto grid = CylindricalGrid::uniform(0.0, o.r_max, o.n_r, o.n_theta, -o.z_extent, o.z_extent, o.n_z);
    const int n = o.winding;
    RadialProfile profile;
    if (o.profile == "gaussian")
        profile = [n](double r, double z) { return Complex(std::pow(r, std::abs(n)) * std::exp(-r * r - z * z), 0.0); };
    else if (o.profile == "tanh")
        profile = [n](double r, double) { return Complex(std::pow(std::tanh(r), std::abs(n)), 0.0); };
    else if (o.profile == "uniform")
        profile = [](double, double) { return Complex(1.0, 0.0); };
    else
        throw UsageError("--profile must be gaussian, tanh or uniform");

    const auto field = build_field(grid, profile, n, o.omega);
    const auto obs = condensate_current(field);
    if (o.format == "csv") {
        io::write_field_csv(out, field, obs);
        return kSuccess;
    }
    const std::size_t i = grid.r.size() / 2, k = grid.z.size() / 2;
    const auto w = winding_number(field, i, k);
    const auto wc = winding_number(conjugate(field), i, k);
    json doc = {{"declared_n", n},
                {"omega", number(o.omega)},
                {"loop_radius", number(grid.r[i])},
                {"winding", w.winding},
                {"winding_residual", number(w.residual)},
                {"conjugate_winding", wc.winding}};
    if (n == 0) {
        const auto check = rotational_superfluidity_check(field);
        doc["rotation_check"] = {{"passed", check.passed},
                                 {"max_residual", number(check.max_residual)},
                                 {"tolerance", number(check.tolerance)},
                                 {"grid_spacing", number(check.grid_spacing)}};
    }
    out << doc.dump(2) << '\n';
    return kSuccess;
}

int cmd_acceptance(const Options& o, std::ostream& out) {
    const auto results = acceptance::run_all(out, !o.quiet, o.only);
    if (results.empty()) throw UsageError("--only does not name a criterion");
    const bool ok = acceptance::all_passed(results);
    out << (ok ? "ALL CRITERIA PASSED" : "SOME CRITERIA FAILED") << '\n';
    return ok ? kSuccess : kFailure;
}

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.find_first_not_of(" \t") == std::string::npos) throw UsageError("empty entry in list '" + text + "'");
        out.push_back(parse_number(token));
    }
    if (out.empty()) throw UsageError("empty parameter grid");
    return out;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Superfluidity of the one-dimensional Bose gas: equation of state, excitations, Landau "
                 "criterion, current-state instability and condensate winding"};
    app.require_subcommand(1, 1);
    app.option_defaults()->always_capture_default();

    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out_path, "Output file (default: stdout)");
        sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--jobs", o.jobs, "Worker threads for sweeps")->check(CLI::Range(1, 256));
    };

    auto* girardeau = app.add_subcommand("girardeau", "Closed-form impenetrable-gas quantities");
    girardeau->add_option("--rho", o.rho, "Density grid (comma separated)");
    girardeau->add_flag("--dispersion", o.dispersion, "Emit an excitation branch instead of the EoS");
    girardeau->add_option("--branch", o.branch, "Excitation branch (particle|hole)");
    girardeau->add_option("--samples", o.samples, "Samples per branch")->check(CLI::Range(2, 1000000));
    common(girardeau);

    auto* bethe_cmd = app.add_subcommand("bethe", "Finite-N Bethe-ansatz ground states or dispersion");
    bethe_cmd->add_option("--n", o.n, "Particle number")->required();
    bethe_cmd->add_option("--L", o.box_length, "Ring length (default N)");
    bethe_cmd->add_option("--coupling", o.coupling, "Coupling grid; 'inf' allowed");
    bethe_cmd->add_flag("--dispersion", o.dispersion, "Emit an excitation branch instead of ground states");
    bethe_cmd->add_option("--branch", o.branch, "Excitation branch (particle|hole)");
    bethe_cmd->add_option("--samples", o.samples, "Momentum steps along the branch")->check(CLI::Range(1, 1000000));
    common(bethe_cmd);

    auto* thermo_cmd = app.add_subcommand("thermo", "Thermodynamic-limit equation of state");
    thermo_cmd->add_option("--rho", o.rho, "Density grid");
    thermo_cmd->add_option("--coupling", o.coupling, "Coupling grid; 'inf' uses the closed form, 0 the ideal gas");
    common(thermo_cmd);

    auto* landau_cmd = app.add_subcommand("landau", "Landau criterion and consistency report (JSON)");
    landau_cmd->add_option("--rho", o.rho, "Density");
    landau_cmd->add_option("--coupling", o.coupling, "Coupling; 'inf' uses the closed forms");
    landau_cmd->add_option("--branch", o.branch, "Excitation branch (particle|hole)");
    landau_cmd->add_option("--n", o.n, "Bethe system size for finite coupling (default 201)");
    landau_cmd->add_option("--v", o.v, "Also test stability of a state boosted by v");
    common(landau_cmd);

    auto* inst = app.add_subcommand("instability", "Energy increment of a current-carrying state");
    inst->add_option("--d", o.d, "Dimension (1 or 3)");
    inst->add_option("--v", o.v, "Drift speed");
    inst->add_option("--R", o.radii, "Inner radii (comma separated)");
    inst->add_option("--rho", o.rho, "Mean density n");
    inst->add_option("--t-bar", o.t_bar, "Mean kinetic-energy density");
    inst->add_option("--shell", o.shell, "Shell offsets a,b,c");
    inst->add_option("--interaction", o.interaction_strength, "Peak of a smooth bump potential (0: none)");
    inst->add_option("--interaction-range", o.interaction_range, "Range of the bump potential");
    common(inst);

    auto* vortex = app.add_subcommand("vortex", "Condensate field, current and winding");
    vortex->add_option("--winding", o.winding, "Winding number n");
    vortex->add_option("--omega", o.omega, "Rotation rate");
    vortex->add_option("--profile", o.profile, "Radial profile: gaussian, tanh or uniform");
    vortex->add_option("--r-max", o.r_max, "Outer radius")->check(CLI::PositiveNumber);
    vortex->add_option("--nr", o.n_r, "Radial points")->check(CLI::Range(1, 100000));
    vortex->add_option("--ntheta", o.n_theta, "Angular points")->check(CLI::Range(3, 100000));
    vortex->add_option("--z-extent", o.z_extent, "Half height of the z range")->check(CLI::PositiveNumber);
    vortex->add_option("--nz", o.n_z, "Axial points")->check(CLI::Range(1, 100000));
    common(vortex);

    auto* accept = app.add_subcommand("acceptance", "Run the acceptance criteria");
    accept->add_option("--only", o.only, "Run a single criterion by number");
    accept->add_flag("--quiet", o.quiet, "Only the PASS/FAIL lines");
    common(accept);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n' << "run with --help for usage\n";
        return kUsage;
    }

    std::ofstream file;
    std::ostream* sink = &out;
    if (!o.out_path.empty()) {
        file.open(o.out_path);
        if (!file) {
            err << "usage error: cannot open " << o.out_path << '\n';
            return kUsage;
        }
        sink = &file;
    }

    try {
        if (girardeau->parsed()) return cmd_girardeau(o, *sink);
        if (bethe_cmd->parsed()) return cmd_bethe(o, *sink);
        if (thermo_cmd->parsed()) return cmd_thermo(o, *sink);
        if (landau_cmd->parsed()) return cmd_landau(o, *sink);
        if (inst->parsed()) return cmd_instability(o, *sink);
        if (vortex->parsed()) return cmd_vortex(o, *sink);
        return cmd_acceptance(o, *sink);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const PreconditionError& e) {
        err << "usage error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        // numerical failure: diagnostic record in the artifact stream as well
        json diag = {{"error", "numerical_failure"}, {"message", e.what()}};
        if (const auto* ce = dynamic_cast<const ConvergenceError*>(&e)) {
            json hist = json::array();
            for (double r : ce->residual_history()) hist.push_back(number(r));
            diag["residual_history"] = hist;
        }
        *sink << diag.dump() << '\n';
        err << "numerical failure: " << e.what() << '\n';
        return kFailure;
    }
}

}  // namespace superfluid::cli
