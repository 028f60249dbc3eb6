#include "orm/report.hpp"

#include <atomic>
#include <charconv>
#include <cmath>
#include <mutex>
#include <sstream>
#include <thread>

#include "orm/coulomb_power.hpp"
#include "orm/error.hpp"
#include "orm/escp.hpp"
#include "orm/excitations.hpp"
#include "orm/oracle.hpp"

namespace orm::report {
namespace {

#include "reference_data.inc"

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

double to_double(std::string_view s) {
    double x = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("numeric reference field: " + std::string(s));
    return x;
}

int to_int(std::string_view s) {
    int x = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("integer reference field: " + std::string(s));
    return x;
}

std::optional<double> to_optional(std::string_view s) {
    if (s.empty()) return std::nullopt;
    return to_double(s);
}

std::string opt_str(const std::optional<double>& v, std::string (*fmt)(double)) {
    return v ? fmt(*v) : std::string();
}

// Numbers at the fixed report precision; non-finite values become strings.
nlohmann::json report_number(double x) {
    if (!std::isfinite(x)) return format_report(x);
    return nlohmann::json::parse(format_report(x));
}

}  // namespace

std::optional<double> ReferenceRow::energy_ref() const {
    if (!value_ref) return std::nullopt;
    return quantity == "minus_E" ? -*value_ref : *value_ref;
}

PotentialSpec ReferenceRow::spec() const {
    if (table == 1) return PotentialSpec::coulomb_power(param1, param2);
    return PotentialSpec::escp(param1, param2);
}

std::vector<ReferenceRow> parse_reference_csv(std::string_view text) {
    std::vector<ReferenceRow> rows;
    bool header = true;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty() || line.front() == '#') continue;
        if (header) {
            header = false;
            continue;
        }
        const auto f = split(line, ',');
        if (f.size() != 10) throw ValidationError("reference row has 10 fields: " + std::string(line));
        ReferenceRow r;
        r.table = to_int(f[0]);
        r.row = to_int(f[1]);
        r.param1 = to_double(f[2]);
        r.param2 = to_double(f[3]);
        r.l = to_int(f[4]);
        r.rho_printed = to_optional(f[5]);
        r.value = to_double(f[6]);
        r.value_ref = to_optional(f[7]);
        r.quantity = std::string(f[8]);
        if (f[9] != "included" && f[9] != "excluded") throw ValidationError("status in {included, excluded}");
        r.excluded = f[9] == "excluded";
        rows.push_back(std::move(r));
    }
    return rows;
}

const std::vector<ReferenceRow>& reference_rows() {
    static const std::vector<ReferenceRow> rows = parse_reference_csv(kReferenceCsv);
    return rows;
}

std::string export_reference_csv(const std::vector<ReferenceRow>& rows) {
    std::ostringstream os;
    os << "table,row,param1,param2,l,rho_printed,E_printed,E_ref,quantity,status\n";
    for (const auto& r : rows) {
        os << r.table << ',' << r.row << ',' << format_roundtrip(r.param1) << ','
           << format_roundtrip(r.param2) << ',' << r.l << ',' << opt_str(r.rho_printed, format_roundtrip)
           << ',' << format_roundtrip(r.value) << ',' << opt_str(r.value_ref, format_roundtrip) << ','
           << r.quantity << ',' << (r.excluded ? "excluded" : "included") << '\n';
    }
    return os.str();
}

bool within_tolerance(const ReferenceRow& ref, double computed) {
    if (ref.quantity == "C") return std::abs(computed - ref.value) <= 1e-3;
    if (ref.quantity == "E") return std::abs(computed - ref.value) <= 5e-4 * std::abs(ref.value);
    return std::abs(computed - ref.energy()) <= 5e-4;
}

SolveResult solve(const PotentialSpec& spec, const QuantumState& state, const SolverConfig& config) {
    if (state.n_r > 0) return excitations::solve_excited(spec, state, config);
    if (spec.kind == PotentialKind::CoulombPower) return coulomb::solve_ground(spec, state.l, config);
    return escp::solve_escp(spec, state.l, config);
}

ReportRow evaluate_row(const ReferenceRow& ref, const TableOptions& opts) {
    ReportRow out;
    out.ref = ref;
    if (ref.quantity == "C") {
        const auto sc = coulomb::strong_coupling_constant(ref.param2, ref.l, opts.config);
        out.E_orm = sc.C;
        out.rho_opt = sc.rho_opt;
    } else {
        const SolveResult r = solve(ref.spec(), {ref.l, 0}, opts.config);
        out.E_orm = r.energy;
        out.rho_opt = r.rho_opt;
        out.Z = r.Z;
        out.orc_residual = r.orc_residual;
        out.edge_pinned = r.edge_pinned;
        if (opts.with_oracle) {
            out.E_oracle = oracle::reference_energy(ref.spec(), {ref.l, 0}).energy;
            out.delta_oracle = out.E_orm - *out.E_oracle;
        }
    }
    out.delta = out.E_orm - ref.energy();
    out.pass = within_tolerance(ref, out.E_orm);
    out.verdict = ref.excluded ? "excluded" : (out.pass ? "pass" : "fail");
    return out;
}

std::vector<ReportRow> run_table(int table, const TableOptions& opts) {
    if (table < 1 || table > 4) throw ValidationError("table in {1, 2, 3, 4}");
    std::vector<ReferenceRow> refs;
    for (const auto& r : reference_rows())
        if (r.table == table) refs.push_back(r);
    std::vector<ReportRow> out(refs.size());
    parallel_for(refs.size(), opts.jobs, [&](std::size_t i) { out[i] = evaluate_row(refs[i], opts); });
    return out;
}

std::string render_csv(const std::vector<ReportRow>& rows) {
    std::ostringstream os;
    os << "table,row,param_g_or_B,param_nu_or_c,l,rho_opt,E_orm,E_paper,delta,E_oracle,delta_oracle,"
          "verdict\n";
    for (const auto& r : rows) {
        os << r.ref.table << ',' << r.ref.row << ',' << format_report(r.ref.param1) << ','
           << format_report(r.ref.param2) << ',' << r.ref.l << ',' << format_report(r.rho_opt) << ','
           << format_report(r.E_orm) << ',' << format_report(r.ref.energy()) << ','
           << format_report(r.delta) << ',' << opt_str(r.E_oracle, format_report) << ','
           << opt_str(r.delta_oracle, format_report) << ',' << r.verdict << '\n';
    }
    return os.str();
}

nlohmann::json render_json(const std::vector<ReportRow>& rows) {
    const auto num = report_number;
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
        arr.push_back({{"table", r.ref.table},
                       {"row", r.ref.row},
                       {"param_g_or_B", num(r.ref.param1)},
                       {"param_nu_or_c", num(r.ref.param2)},
                       {"l", r.ref.l},
                       {"quantity", r.ref.quantity},
                       {"rho_opt", num(r.rho_opt)},
                       {"E_orm", num(r.E_orm)},
                       {"E_paper", num(r.ref.energy())},
                       {"delta", num(r.delta)},
                       {"E_oracle", r.E_oracle ? num(*r.E_oracle) : nlohmann::json(nullptr)},
                       {"delta_oracle", r.delta_oracle ? num(*r.delta_oracle) : nlohmann::json(nullptr)},
                       {"verdict", r.verdict}});
    }
    return {{"rows", arr}, {"summary", summary_line(rows)}};
}

std::string summary_line(const std::vector<ReportRow>& rows) {
    std::size_t ok = 0, counted = 0;
    for (const auto& r : rows) {
        if (r.ref.excluded) continue;
        ++counted;
        if (r.pass) ++ok;
    }
    return std::to_string(ok) + "/" + std::to_string(counted) + " rows within tolerance";
}

void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
    if (jobs <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::atomic<bool> failed{false};
    std::mutex mu;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!first_error) first_error = std::current_exception();
                failed = true;
            }
        }
    };
    std::vector<std::thread> pool;
    const unsigned count = std::min<std::size_t>(jobs, n);
    for (unsigned t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace orm::report
