#include "orm/domain.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "orm/error.hpp"

namespace orm {
namespace {

void require(bool ok, const char* invariant) {
    if (!ok) throw ValidationError(invariant);
}

double parse_double(std::string_view key, std::string_view v) {
    double x = 0.0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("numeric value for " + std::string(key));
    return x;
}

long parse_integer(std::string_view key, std::string_view v) {
    long x = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc() || ptr != end)
        throw ValidationError("integer value for " + std::string(key));
    return x;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

// Calls fn(key, value) for each non-blank, non-comment line.
void for_each_pair(std::string_view text,
                   const std::function<void(std::string_view, std::string_view)>& fn) {
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = trim(text.substr(0, nl));
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ValidationError("key=value line: " + std::string(line));
        fn(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

bool set_config_field(SolverConfig& c, std::string_view k, std::string_view v) {
    if (k == "rho_lo") c.rho_lo = parse_double(k, v);
    else if (k == "rho_hi") c.rho_hi = parse_double(k, v);
    else if (k == "root_tol") c.root_tol = parse_double(k, v);
    else if (k == "min_tol") c.min_tol = parse_double(k, v);
    else if (k == "quad_order") c.quad_order = static_cast<std::size_t>(parse_integer(k, v));
    else if (k == "series_cap") c.series_cap = static_cast<std::size_t>(parse_integer(k, v));
    else if (k == "series_tol") c.series_tol = parse_double(k, v);
    else return false;
    return true;
}

}  // namespace

std::string_view kind_name(PotentialKind kind) noexcept {
    return kind == PotentialKind::Escp ? "escp" : "coulomb-power";
}

PotentialKind parse_kind(std::string_view name) {
    if (name == "coulomb-power") return PotentialKind::CoulombPower;
    if (name == "escp") return PotentialKind::Escp;
    throw ValidationError("kind in {coulomb-power, escp}");
}

OrmParams OrmParams::make(int l, double rho, double Z) {
    require(rho > 0.0, "rho > 0");
    require(Z > 0.0, "Z > 0");
    return {rho, 2.0 + 2.0 * rho * (2.0 * l + 1.0), Z};
}

double OrmParams::omega() const { return std::pow(Z, 1.0 / rho); }

Problem validate(const PotentialSpec& spec, const QuantumState& state, const SolverConfig& config) {
    if (spec.kind == PotentialKind::CoulombPower) {
        require(spec.g >= 0.0 && std::isfinite(spec.g), "g ≥ 0");
        require(spec.nu > 0.0 && std::isfinite(spec.nu), "ν > 0");
    } else {
        require(spec.B >= 0.0 && std::isfinite(spec.B), "B ≥ 0");
        require(spec.c >= 0.0 && !std::isnan(spec.c), "c ≥ 0");
    }
    require(state.l >= 0, "l ≥ 0");
    require(state.n_r >= 0, "n_r ≥ 0");
    require(config.rho_lo > 0.0, "rho bracket lower bound > 0");
    require(config.rho_hi > config.rho_lo, "rho bracket upper bound > lower bound");
    require(config.root_tol > 0.0, "root_tol > 0");
    require(config.min_tol > 0.0, "min_tol > 0");
    require(config.series_tol > 0.0, "series_tol > 0");
    require(config.quad_order >= 3, "quad_order ≥ 3");
    require(config.series_cap >= 1, "series_cap ≥ 1");
    return {spec, state, config};
}

std::string format_roundtrip(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_report(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string to_key_value(const Problem& p) {
    std::ostringstream os;
    os << "kind=" << kind_name(p.spec.kind) << '\n';
    if (p.spec.kind == PotentialKind::CoulombPower) {
        os << "g=" << format_roundtrip(p.spec.g) << '\n' << "nu=" << format_roundtrip(p.spec.nu) << '\n';
    } else {
        os << "B=" << format_roundtrip(p.spec.B) << '\n' << "c=" << format_roundtrip(p.spec.c) << '\n';
    }
    const auto& c = p.config;
    os << "l=" << p.state.l << '\n'
       << "n_r=" << p.state.n_r << '\n'
       << "rho_lo=" << format_roundtrip(c.rho_lo) << '\n'
       << "rho_hi=" << format_roundtrip(c.rho_hi) << '\n'
       << "root_tol=" << format_roundtrip(c.root_tol) << '\n'
       << "min_tol=" << format_roundtrip(c.min_tol) << '\n'
       << "quad_order=" << c.quad_order << '\n'
       << "series_cap=" << c.series_cap << '\n'
       << "series_tol=" << format_roundtrip(c.series_tol) << '\n';
    return os.str();
}

std::string to_key_value(const SolveResult& r) {
    std::ostringstream os;
    os << "energy=" << format_report(r.energy) << '\n'
       << "rho_opt=" << format_report(r.rho_opt) << '\n'
       << "Z=" << format_report(r.Z) << '\n'
       << "orc_residual=" << format_report(r.orc_residual) << '\n'
       << "evaluations=" << r.evaluations << '\n'
       << "edge_pinned=" << (r.edge_pinned ? 1 : 0) << '\n'
       << "accuracy_warning=" << (r.accuracy_warning ? 1 : 0) << '\n'
       << "no_reliable_bound_state=" << (r.no_reliable_bound_state ? 1 : 0) << '\n';
    return os.str();
}

Problem parse_problem(std::string_view text) {
    Problem p;
    bool have_kind = false;
    for_each_pair(text, [&](std::string_view k, std::string_view v) {
        if (k == "kind") {
            p.spec.kind = parse_kind(v);
            have_kind = true;
        } else if (k == "g") p.spec.g = parse_double(k, v);
        else if (k == "nu") p.spec.nu = parse_double(k, v);
        else if (k == "B") p.spec.B = parse_double(k, v);
        else if (k == "c") p.spec.c = parse_double(k, v);
        else if (k == "l") p.state.l = static_cast<int>(parse_integer(k, v));
        else if (k == "n_r") p.state.n_r = static_cast<int>(parse_integer(k, v));
        else if (!set_config_field(p.config, k, v))
            throw ValidationError("known key: " + std::string(k));
    });
    require(have_kind, "kind present");
    return validate(p.spec, p.state, p.config);
}

SolverConfig apply_config_overrides(SolverConfig base, std::string_view text) {
    for_each_pair(text, [&](std::string_view k, std::string_view v) {
        if (!set_config_field(base, k, v)) throw ValidationError("known config key: " + std::string(k));
    });
    return base;
}

nlohmann::json to_json(const Problem& p) {
    nlohmann::json spec = {{"kind", kind_name(p.spec.kind)}};
    if (p.spec.kind == PotentialKind::CoulombPower) {
        spec["g"] = p.spec.g;
        spec["nu"] = p.spec.nu;
    } else {
        spec["B"] = p.spec.B;
        spec["c"] = p.spec.c;
    }
    const auto& c = p.config;
    return {{"spec", spec},
            {"state", {{"l", p.state.l}, {"n_r", p.state.n_r}}},
            {"config",
             {{"rho_lo", c.rho_lo},
              {"rho_hi", c.rho_hi},
              {"root_tol", c.root_tol},
              {"min_tol", c.min_tol},
              {"quad_order", c.quad_order},
              {"series_cap", c.series_cap},
              {"series_tol", c.series_tol}}}};
}

nlohmann::json to_json(const SolveResult& r) {
    return {{"energy", r.energy},
            {"rho_opt", r.rho_opt},
            {"Z", r.Z},
            {"orc_residual", r.orc_residual},
            {"evaluations", r.evaluations},
            {"edge_pinned", r.edge_pinned},
            {"accuracy_warning", r.accuracy_warning},
            {"no_reliable_bound_state", r.no_reliable_bound_state}};
}

Problem problem_from_json(const nlohmann::json& j) {
    try {
        Problem p;
        const auto& s = j.at("spec");
        p.spec.kind = parse_kind(s.at("kind").get<std::string>());
        if (p.spec.kind == PotentialKind::CoulombPower) {
            p.spec.g = s.at("g").get<double>();
            p.spec.nu = s.at("nu").get<double>();
        } else {
            p.spec.B = s.at("B").get<double>();
            p.spec.c = s.at("c").get<double>();
        }
        p.state.l = j.at("state").at("l").get<int>();
        p.state.n_r = j.at("state").at("n_r").get<int>();
        if (j.contains("config")) {
            const auto& c = j.at("config");
            p.config.rho_lo = c.value("rho_lo", p.config.rho_lo);
            p.config.rho_hi = c.value("rho_hi", p.config.rho_hi);
            p.config.root_tol = c.value("root_tol", p.config.root_tol);
            p.config.min_tol = c.value("min_tol", p.config.min_tol);
            p.config.quad_order = c.value("quad_order", p.config.quad_order);
            p.config.series_cap = c.value("series_cap", p.config.series_cap);
            p.config.series_tol = c.value("series_tol", p.config.series_tol);
        }
        return validate(p.spec, p.state, p.config);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("well-formed problem JSON: ") + e.what());
    }
}

}  // namespace orm
