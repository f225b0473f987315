#include <chrono>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gpsel/choice.hpp"
#include "gpsel/dual.hpp"
#include "gpsel/oracle.hpp"
#include "gpsel/problem_file.hpp"
#include "gpsel/report.hpp"
#include "gpsel/solver.hpp"

namespace {

using namespace gpsel;

constexpr int kExitOk = 0;
constexpr int kExitSyntax = 2;
constexpr int kExitSemantic = 3;
constexpr int kExitNoOptimum = 4;
constexpr int kExitNumerical = 5;

struct Options {
    std::string file;
    std::string format{"text"};
    double tolerance{SolverSettings{}.stationarity_tol};
    bool no_timing{false};
    unsigned threads{1};
    bool all_assignments{false};
    bool oracle{false};
    long long seed{0};
    std::vector<std::string> assign;
};

int exit_code_for(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return kExitOk;
        case SolveStatus::Infeasible:
        case SolveStatus::Unbounded: return kExitNoOptimum;
        case SolveStatus::IterationLimit:
        case SolveStatus::NumericalError: break;
    }
    return kExitNumerical;
}

std::optional<ProblemFile> load(const std::string& path, int& rc) {
    try {
        return parse_problem(path);
    } catch (const ProblemFileError& e) {
        std::cerr << "error: " << path << ": " << e.what() << "\n";
        rc = e.exit_code();
    }
    return std::nullopt;
}

SolverSettings settings(const Options& o) {
    SolverSettings cfg;
    cfg.stationarity_tol = o.tolerance;
    return cfg;
}

int emit(const Options& o, const ReportDocument& doc, SolveStatus status) {
    std::cout << (o.format == "machine" ? to_machine(doc) : to_text(doc));
    const int rc = exit_code_for(status);
    if (rc == kExitNumerical) {
        std::cerr << "error: solver did not converge (" << doc.status << "): " << doc.message << "\n"
                  << "residuals: equality " << doc.residuals.equality << ", stationarity "
                  << doc.residuals.stationarity << ", primal infeasibility " << doc.residuals.primal_infeasibility
                  << ", recovery " << doc.residuals.recovery << "\n";
    }
    return rc;
}

void run_oracle(ReportDocument& doc, const GpProblem& g) {
    const StandardGp s = standardize(g);
    const std::size_t n = s.num_variables();
    if (n > kOracleMaxVariables) {
        std::cerr << "note: --oracle skipped, the grid check supports at most " << kOracleMaxVariables << " variables\n";
        return;
    }
    double reach = 0.0;
    for (const auto& [_, v] : doc.x) {
        if (v > 0.0 && std::isfinite(v)) reach = std::max(reach, std::abs(std::log(v)));
    }
    const double halfwidth = std::max(4.0, 2.0 * reach);
    static constexpr int kPoints[] = {2001, 2001, 401, 81, 31};
    doc.oracle.reset();
    attach_oracle(doc, s, brute_force_oracle(s, halfwidth, kPoints[n], 4));
}

int cmd_solve(const Options& o) {
    int rc = kExitOk;
    const auto file = load(o.file, rc);
    if (!file) return rc;
    ChoiceSettings cfg;
    cfg.solver = settings(o);
    cfg.threads = o.threads;
    cfg.keep_assignments = o.all_assignments;

    const auto start = std::chrono::steady_clock::now();
    ChoiceReport result;
    try {
        result = solve_choice(file->model, cfg);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;

    ReportDocument doc = make_report(file->model, result, o.all_assignments);
    if (o.oracle && result.status == SolveStatus::Optimal) run_oracle(doc, result.chosen_problem);
    if (!o.no_timing) doc.timing_ms = elapsed.count();
    return emit(o, doc, result.status);
}

int cmd_dual(const Options& o) {
    int rc = kExitOk;
    const auto file = load(o.file, rc);
    if (!file) return rc;
    const ChoiceGp& cg = file->model;

    Choice choice(cg.sets.size());
    std::vector<bool> given(cg.sets.size(), false);
    try {
        for (const auto& spec : o.assign) {
            const auto eq = spec.find('=');
            if (eq == std::string::npos) throw DomainError("--assign expects name=bits, got '" + spec + "'");
            const std::string name = spec.substr(0, eq);
            const CandidateSet* set = cg.find_set(name);
            if (set == nullptr) throw DomainError("--assign names unknown candidate set '" + name + "'");
            const auto idx = static_cast<std::size_t>(set - cg.sets.data());
            choice[idx] = BinaryAssignment::parse(spec.substr(eq + 1));
            selector_polynomial(*set, choice[idx]);  // validates the pattern
            given[idx] = true;
        }
        for (std::size_t s = 0; s < cg.sets.size(); ++s) {
            if (given[s]) continue;
            if (cg.sets[s].size() != 1) {
                throw DomainError("candidate set '" + cg.sets[s].name + "' has " + std::to_string(cg.sets[s].size()) +
                                  " values; pick one with --assign " + cg.sets[s].name + "=bits");
            }
            choice[s] = valid_assignments(cg.sets[s]).front();
        }
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }

    const auto start = std::chrono::steady_clock::now();
    ChoiceReport result;
    try {
        result.chosen_problem = expand(cg, choice);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSemantic;
    }
    const StandardGp s = standardize(result.chosen_problem);
    result.best = solve(s, settings(o));
    const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
    result.status = result.best.status;
    result.message = result.best.message;
    result.combinations = 1;
    result.chosen = choice;
    for (std::size_t i = 0; i < cg.sets.size(); ++i) result.chosen_values.push_back(selector_polynomial(cg.sets[i], choice[i]));

    ReportDocument doc = make_report(cg, result, false);
    attach_dual_system(doc, s);
    if (!o.no_timing) doc.timing_ms = elapsed.count();
    return emit(o, doc, result.status);
}

int cmd_validate(const Options& o) {
    int rc = kExitOk;
    const auto file = load(o.file, rc);
    if (!file) return rc;
    const auto& m = file->model;
    std::cout << "valid: " << m.variables.size() << " variables, " << m.objective.size() << " objective terms, "
              << m.constraints.size() << " constraints, " << m.sets.size() << " candidate sets, "
              << combination_count(m) << " combinations\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Geometric programming solver with discrete candidate selection"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("file", o.file, "Problem file (JSON)")->required();
        sub->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
        sub->add_option("--tolerance", o.tolerance, "Stationarity tolerance")->check(CLI::PositiveNumber);
        sub->add_flag("--no-timing", o.no_timing, "Omit wall-clock timing (report timing_ms as null)");
    };

    auto* solve_cmd = app.add_subcommand("solve", "Solve a fixed or choice model");
    add_common(solve_cmd);
    solve_cmd->add_flag("--all-assignments", o.all_assignments, "Include the per-assignment table");
    solve_cmd->add_flag("--oracle", o.oracle, "Cross-check with a grid search (at most 4 variables)");
    solve_cmd->add_option("--seed", o.seed, "Accepted for script compatibility; unused");
    solve_cmd->add_option("--threads", o.threads, "Worker threads for the enumeration (0 = all cores)");

    auto* dual_cmd = app.add_subcommand("dual", "Print the dual system and its solution");
    add_common(dual_cmd);
    dual_cmd->add_option("--assign", o.assign, "Fix a candidate set: name=bits (repeatable)");

    auto* validate_cmd = app.add_subcommand("validate", "Check a problem file");
    validate_cmd->add_option("file", o.file, "Problem file (JSON)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitSyntax;
    }

    try {
        if (*solve_cmd) return cmd_solve(o);
        if (*dual_cmd) return cmd_dual(o);
        return cmd_validate(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNumerical;
    }
}
