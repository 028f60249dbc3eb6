// orm: solve, table, sweep, oracle.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "orm/domain.hpp"
#include "orm/error.hpp"
#include "orm/oracle.hpp"
#include "orm/report.hpp"
#include "plot.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitTolerance = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Globals {
    std::string config_path;
    std::string format = "text";
    unsigned jobs = 1;
};

struct PotentialArgs {
    std::string kind;
    double g = 0.0, nu = 1.0, B = 0.0, c = 0.0;
    int l = 0, n_r = 0;

    orm::PotentialSpec spec() const {
        const auto k = orm::parse_kind(kind);
        return k == orm::PotentialKind::CoulombPower ? orm::PotentialSpec::coulomb_power(g, nu)
                                                      : orm::PotentialSpec::escp(B, c);
    }
};

void add_potential_options(CLI::App* cmd, PotentialArgs& a) {
    cmd->add_option("kind", a.kind, "coulomb-power or escp")
        ->required()
        ->check(CLI::IsMember({"coulomb-power", "escp"}));
    cmd->add_option("--g", a.g, "coupling of the g r^nu term");
    cmd->add_option("--nu", a.nu, "power exponent");
    cmd->add_option("--B", a.B, "screening strength");
    cmd->add_option("--c", a.c, "inverse screening length");
    cmd->add_option("--l", a.l, "orbital quantum number");
    cmd->add_option("--nr", a.n_r, "radial quantum number");
}

orm::SolverConfig load_config(const Globals& g) {
    orm::SolverConfig cfg;
    if (g.config_path.empty()) return cfg;
    std::ifstream in(g.config_path);
    if (!in) throw orm::ValidationError("readable config file: " + g.config_path);
    std::stringstream ss;
    ss << in.rdbuf();
    return orm::apply_config_overrides(cfg, ss.str());
}

std::string convention_label(orm::PotentialKind k) {
    return k == orm::PotentialKind::Escp ? "E/2 radial convention (pure Coulomb: -1/(l+1)^2)"
                                         : "hbar = m = 1 (pure Coulomb: -1/2)";
}

void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw orm::ValidationError("writable output path: " + path);
    out << text;
}

int cmd_solve(const Globals& g, const PotentialArgs& a) {
    const orm::SolverConfig cfg = load_config(g);
    const orm::Problem p = orm::validate(a.spec(), {a.l, a.n_r}, cfg);
    const orm::SolveResult r = orm::report::solve(p.spec, p.state, p.config);
    if (g.format == "json") {
        nlohmann::json j = orm::to_json(p);
        j["result"] = orm::to_json(r);
        j["convention"] = convention_label(p.spec.kind);
        std::cout << j.dump(2) << '\n';
    } else if (g.format == "csv") {
        std::cout << "kind,l,n_r,energy,rho_opt,Z,orc_residual,edge_pinned,no_reliable_bound_state\n"
                  << orm::kind_name(p.spec.kind) << ',' << p.state.l << ',' << p.state.n_r << ','
                  << orm::format_report(r.energy) << ',' << orm::format_report(r.rho_opt) << ','
                  << orm::format_report(r.Z) << ',' << orm::format_report(r.orc_residual) << ','
                  << r.edge_pinned << ',' << r.no_reliable_bound_state << '\n';
    } else {
        std::cout << "# " << convention_label(p.spec.kind) << '\n' << orm::to_key_value(p) << orm::to_key_value(r);
    }
    if (r.no_reliable_bound_state) std::cerr << "warning: no reliably bound state at this order\n";
    if (r.edge_pinned) std::cerr << "warning: rho minimum pinned at the bracket edge\n";
    return kExitOk;
}

int cmd_table(const Globals& g, int table, bool with_oracle, const std::string& out_path) {
    orm::report::TableOptions opts;
    opts.with_oracle = with_oracle;
    opts.config = load_config(g);
    opts.jobs = g.jobs;
    const auto rows = orm::report::run_table(table, opts);
    if (g.format == "json")
        write_output(orm::report::render_json(rows).dump(2) + "\n", out_path);
    else
        write_output(orm::report::render_csv(rows), out_path);
    std::cerr << orm::report::summary_line(rows) << '\n';
    for (const auto& r : rows)
        if (!r.ref.excluded && !r.pass) return kExitTolerance;
    return kExitOk;
}

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            out.push_back(std::stod(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw orm::ValidationError("numeric sweep value: " + item);
        }
    }
    if (out.empty()) throw orm::ValidationError("at least one sweep value");
    return out;
}

int cmd_sweep(const Globals& g, const PotentialArgs& a, const std::string& axis,
              const std::string& values, const std::string& out_path, const std::string& plot_path) {
    if (axis != "g" && axis != "nu" && axis != "B" && axis != "c" && axis != "l")
        throw orm::ValidationError("axis in {g, nu, B, c, l}");
    const orm::SolverConfig cfg = load_config(g);
    const std::vector<double> grid = parse_values(values);

    struct Point {
        orm::PotentialSpec spec;
        orm::QuantumState state;
        orm::SolveResult result;
    };
    std::vector<Point> pts;
    for (double v : grid) {
        PotentialArgs b = a;
        if (axis == "g") b.g = v;
        else if (axis == "nu") b.nu = v;
        else if (axis == "B") b.B = v;
        else if (axis == "c") b.c = v;
        else {
            if (v != std::floor(v)) throw orm::ValidationError("integer l values");
            b.l = static_cast<int>(v);
        }
        const auto p = orm::validate(b.spec(), {b.l, b.n_r}, cfg);
        pts.push_back({p.spec, p.state, {}});
    }
    orm::report::parallel_for(pts.size(), g.jobs, [&](std::size_t i) {
        pts[i].result = orm::report::solve(pts[i].spec, pts[i].state, cfg);
    });

    std::ostringstream os;
    os << axis << ",E,rho_opt,Z,E_scaled\n";
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto& p = pts[i];
        std::string scaled;
        if (p.spec.kind == orm::PotentialKind::CoulombPower && p.spec.g > 0.0)
            scaled = orm::format_report(p.result.energy / std::pow(p.spec.g, 2 / (2 + p.spec.nu)));
        os << orm::format_report(grid[i]) << ',' << orm::format_report(p.result.energy) << ','
           << orm::format_report(p.result.rho_opt) << ',' << orm::format_report(p.result.Z) << ','
           << scaled << '\n';
        xs.push_back(grid[i]);
        ys.push_back(scaled.empty() ? p.result.energy : std::stod(scaled));
    }
    write_output(os.str(), out_path);
    if (!plot_path.empty()) {
        const bool scaled = a.kind == "coulomb-power" && axis == "g";
        std::ofstream svg(plot_path);
        if (!svg) throw orm::ValidationError("writable plot path: " + plot_path);
        svg << orm::tools::line_chart_svg(xs, ys, axis, scaled ? "E / g^(2/(2+nu))" : "E");
    }
    return kExitOk;
}

int cmd_oracle(const Globals& g, const PotentialArgs& a) {
    const orm::SolverConfig cfg = load_config(g);
    const orm::Problem p = orm::validate(a.spec(), {a.l, a.n_r}, cfg);
    const auto ref = orm::oracle::reference_energy(p.spec, p.state);
    const auto r = orm::report::solve(p.spec, p.state, p.config);
    const double delta = r.energy - ref.energy;
    if (g.format == "json") {
        nlohmann::json j = orm::to_json(p);
        j["E_orm"] = r.energy;
        j["E_oracle"] = ref.energy;
        j["delta"] = delta;
        j["grid"] = {{"r_min", ref.grid.r_min}, {"r_max", ref.grid.r_max}, {"h", ref.grid.h}};
        std::cout << j.dump(2) << '\n';
    } else if (g.format == "csv") {
        std::cout << "kind,l,n_r,E_orm,E_oracle,delta\n"
                  << orm::kind_name(p.spec.kind) << ',' << p.state.l << ',' << p.state.n_r << ','
                  << orm::format_report(r.energy) << ',' << orm::format_report(ref.energy) << ','
                  << orm::format_report(delta) << '\n';
    } else {
        std::cout << "# " << convention_label(p.spec.kind) << '\n'
                  << "E_orm=" << orm::format_report(r.energy) << '\n'
                  << "E_oracle=" << orm::format_report(ref.energy) << '\n'
                  << "delta=" << orm::format_report(delta) << '\n'
                  << "grid_r_max=" << orm::format_report(ref.grid.r_max) << '\n'
                  << "grid_h=" << orm::format_report(ref.grid.h) << '\n';
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Oscillator representation method: bound-state energies for Coulomb-plus-power "
                 "and screened Coulomb potentials"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--config", g.config_path, "key=value file overriding solver settings");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json", "text"}));
    app.add_option("--jobs", g.jobs, "worker threads")->check(CLI::PositiveNumber);

    PotentialArgs solve_args, sweep_args, oracle_args;
    auto* solve = app.add_subcommand("solve", "single solve");
    add_potential_options(solve, solve_args);

    int table = 1;
    bool with_oracle = false;
    std::string table_out;
    auto* tab = app.add_subcommand("table", "reproduce a reference table");
    tab->add_option("id", table, "table 1-4")->required()->check(CLI::Range(1, 4));
    tab->add_flag("--oracle", with_oracle, "add Numerov reference energies");
    tab->add_option("--out", table_out, "report path (default stdout)");

    std::string axis, values, sweep_out, plot_out;
    auto* sweep = app.add_subcommand("sweep", "parameter sweep");
    add_potential_options(sweep, sweep_args);
    sweep->add_option("--axis", axis, "g, nu, B, c or l")->required();
    sweep->add_option("--values", values, "comma-separated grid")->required();
    sweep->add_option("--out", sweep_out, "CSV path (default stdout)");
    sweep->add_option("--plot", plot_out, "SVG line chart path");

    auto* orc = app.add_subcommand("oracle", "compare with the Numerov reference");
    add_potential_options(orc, oracle_args);

    for (auto* sub : {solve, tab, sweep, orc}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*solve) return cmd_solve(g, solve_args);
        if (*tab) {
            if (g.format == "text") g.format = "csv";
            return cmd_table(g, table, with_oracle, table_out);
        }
        if (*sweep) return cmd_sweep(g, sweep_args, axis, values, sweep_out, plot_out);
        if (*orc) return cmd_oracle(g, oracle_args);
    } catch (const orm::ValidationError& e) {
        std::cerr << "error: invalid input: " << e.what() << '\n';
        return kExitUsage;
    } catch (const orm::NumericalError& e) {
        std::cerr << "error: numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitUsage;
}
