#pragma once

// Reference dataset, table reproduction and report rendering shared by the CLI
// and the acceptance suite.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "orm/domain.hpp"

namespace orm::report {

/// One printed entry of reference tables 1-4.
struct ReferenceRow {
    int table = 0;
    int row = 0;
    double param1 = 0.0;  // g (table 1) or B
    double param2 = 0.0;  // nu (table 1) or c
    int l = 0;
    std::optional<double> rho_printed;
    double value = 0.0;   // as printed: E, C, or -E
    std::optional<double> value_ref;
    std::string quantity; // "E", "C" or "minus_E"
    bool excluded = false;

    bool operator==(const ReferenceRow&) const = default;

    /// Printed value in the solver's sign convention.
    double energy() const { return quantity == "minus_E" ? -value : value; }
    std::optional<double> energy_ref() const;
    PotentialSpec spec() const;
};

/// The dataset compiled into the library from data/reference_tables.csv.
const std::vector<ReferenceRow>& reference_rows();
std::vector<ReferenceRow> parse_reference_csv(std::string_view text);
std::string export_reference_csv(const std::vector<ReferenceRow>& rows);

struct ReportRow {
    ReferenceRow ref;
    double E_orm = 0.0;
    double rho_opt = 0.0;
    double Z = 0.0;
    double orc_residual = 0.0;
    bool edge_pinned = false;
    double delta = 0.0;  // E_orm - printed (solver convention)
    std::optional<double> E_oracle;
    std::optional<double> delta_oracle;  // E_orm - E_oracle
    bool pass = false;
    std::string verdict;  // pass, fail, excluded
};

struct TableOptions {
    bool with_oracle = false;
    SolverConfig config;
    unsigned jobs = 1;
};

/// Row tolerance: 5e-4 relative for table 1 energies, 1e-3 absolute for C,
/// 5e-4 absolute on -E for tables 2-4.
bool within_tolerance(const ReferenceRow& ref, double computed);

ReportRow evaluate_row(const ReferenceRow& ref, const TableOptions& opts);
std::vector<ReportRow> run_table(int table, const TableOptions& opts);

std::string render_csv(const std::vector<ReportRow>& rows);
nlohmann::json render_json(const std::vector<ReportRow>& rows);
std::string summary_line(const std::vector<ReportRow>& rows);

/// Runs fn(i) for i in [0, n) on up to `jobs` threads; fn writes its own slot.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn);

/// Dispatches on state.n_r and spec.kind.
SolveResult solve(const PotentialSpec& spec, const QuantumState& state, const SolverConfig& config);

}  // namespace orm::report
