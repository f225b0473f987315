#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpsel/choice.hpp"
#include "gpsel/oracle.hpp"
#include "gpsel/solver.hpp"

namespace gpsel {

using NamedValues = std::vector<std::pair<std::string, double>>;

struct ChosenValue {
    std::string set;
    std::string bits;
    double value{0.0};

    bool operator==(const ChosenValue&) const = default;
};

struct AssignmentRow {
    std::string bits;  // concatenated over sets
    std::vector<double> values;
    std::string status;  // solve status, or "rejected"
    std::optional<double> z;

    bool operator==(const AssignmentRow&) const = default;
};

struct DualRow {
    std::string label;  // "normality" or the variable name
    NamedValues coefficients;  // nonzero entries only
    double rhs{0.0};

    bool operator==(const DualRow&) const = default;
};

struct OracleCheck {
    bool feasible{false};
    std::optional<double> z;
    NamedValues x;
    std::optional<double> relative_difference;
    std::size_t evaluations{0};

    bool operator==(const OracleCheck&) const = default;
};

/// Everything the CLI reports. Optional members are omitted from (or null in)
/// the machine form; the machine form round-trips through `report_from_json`.
struct ReportDocument {
    std::string status;
    std::optional<double> z;
    NamedValues x;
    NamedValues w;
    std::vector<double> lambda;
    std::optional<double> gap;
    std::optional<double> dual_value;
    std::vector<ChosenValue> chosen;
    KktResiduals residuals;
    int iterations{0};
    std::string message;
    std::optional<std::vector<DualRow>> dual_system;
    std::optional<std::vector<AssignmentRow>> assignments;
    std::optional<OracleCheck> oracle;
    std::optional<double> timing_ms;

    bool operator==(const ReportDocument&) const = default;
};

/// Report for a finished choice solve; `include_assignments` copies the table.
ReportDocument make_report(const ChoiceGp& cg, const ChoiceReport& r, bool include_assignments);

/// Adds the equality rows of the dual of `s` (normality first).
void attach_dual_system(ReportDocument& doc, const StandardGp& s);

/// Adds a grid-search cross-check of `s` against the reported Z.
void attach_oracle(ReportDocument& doc, const StandardGp& s, const OracleResult& o);

std::string to_machine(const ReportDocument& doc);
ReportDocument report_from_machine(const std::string& text);
std::string to_text(const ReportDocument& doc);

}  // namespace gpsel
