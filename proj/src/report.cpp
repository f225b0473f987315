#include "gpsel/report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "gpsel/dual.hpp"
#include "json.hpp"

namespace gpsel {

namespace {

using nlohmann::ordered_json;

ordered_json num(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

ordered_json opt(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

double read_num(const ordered_json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

std::optional<double> read_opt(const ordered_json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

ordered_json named(const NamedValues& v) {
    ordered_json o = ordered_json::object();
    for (const auto& [k, x] : v) o[k] = num(x);
    return o;
}

NamedValues read_named(const ordered_json& j) {
    NamedValues v;
    for (const auto& [k, x] : j.items()) v.emplace_back(k, read_num(x));
    return v;
}

std::string sig7(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.7g", v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

ReportDocument make_report(const ChoiceGp& cg, const ChoiceReport& r, bool include_assignments) {
    ReportDocument doc;
    doc.status = std::string(to_string(r.status));
    doc.message = r.message;
    const bool solved = !r.chosen_problem.variables.empty();
    if (solved) {
        const SolveReport& b = r.best;
        const StandardGp s = standardize(r.chosen_problem);
        const DualProgram d = build_dual(s);
        if (!b.primal_x.empty()) {
            doc.z = b.objective_value;
            for (std::size_t j = 0; j < b.primal_x.size(); ++j) doc.x.emplace_back(cg.variables[j].name, b.primal_x[j]);
        }
        if (b.dual.weights.size() == static_cast<Eigen::Index>(d.num_terms())) {
            for (std::size_t k = 0; k < d.num_terms(); ++k) doc.w.emplace_back(d.weight_name(k), b.dual.weights(static_cast<Eigen::Index>(k)));
            for (Eigen::Index i = 0; i < b.dual.lambdas.size(); ++i) doc.lambda.push_back(b.dual.lambdas(i));
            doc.dual_value = b.dual.objective_value;
        }
        if (b.status == SolveStatus::Optimal) doc.gap = b.duality_gap;
        doc.residuals = b.residuals;
        doc.iterations = b.iterations;
        for (std::size_t i = 0; i < cg.sets.size() && i < r.chosen.size(); ++i) {
            doc.chosen.push_back({cg.sets[i].name, r.chosen[i].to_string(), r.chosen_values[i]});
        }
    }
    if (include_assignments) {
        std::vector<AssignmentRow> rows;
        for (const auto& a : r.assignments) {
            AssignmentRow row{bit_string(a.choice), a.values, a.rejected ? "rejected" : std::string(to_string(a.status)),
                              std::nullopt};
            if (!a.rejected && a.status == SolveStatus::Optimal) row.z = a.objective_value;
            rows.push_back(std::move(row));
        }
        doc.assignments = std::move(rows);
    }
    return doc;
}

void attach_dual_system(ReportDocument& doc, const StandardGp& s) {
    const DualProgram d = build_dual(s);
    const Eigen::MatrixXd a = d.equality_matrix();
    const Eigen::VectorXd rhs = d.equality_rhs();
    std::vector<DualRow> rows;
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        DualRow row;
        row.label = r == 0 ? "normality" : s.variables[static_cast<std::size_t>(r - 1)].name;
        for (Eigen::Index k = 0; k < a.cols(); ++k) {
            if (a(r, k) != 0.0) row.coefficients.emplace_back(d.weight_name(static_cast<std::size_t>(k)), a(r, k));
        }
        row.rhs = rhs(r);
        rows.push_back(std::move(row));
    }
    doc.dual_system = std::move(rows);
}

void attach_oracle(ReportDocument& doc, const StandardGp& s, const OracleResult& o) {
    OracleCheck c;
    c.feasible = o.feasible;
    c.evaluations = o.evaluations;
    if (o.feasible) {
        c.z = o.value;
        for (std::size_t j = 0; j < o.x.size(); ++j) c.x.emplace_back(s.variables[j].name, o.x[j]);
        if (doc.z) c.relative_difference = std::abs(o.value - *doc.z) / std::max(std::abs(*doc.z), 1e-300);
    }
    doc.oracle = std::move(c);
}

std::string to_machine(const ReportDocument& doc) {
    ordered_json j;
    j["status"] = doc.status;
    j["z"] = opt(doc.z);
    j["x"] = named(doc.x);
    j["w"] = named(doc.w);
    ordered_json lam = ordered_json::array();
    for (double l : doc.lambda) lam.push_back(num(l));
    j["lambda"] = std::move(lam);
    j["gap"] = opt(doc.gap);
    j["dual_value"] = opt(doc.dual_value);
    ordered_json chosen = ordered_json::array();
    for (const auto& c : doc.chosen) chosen.push_back({{"set", c.set}, {"bits", c.bits}, {"value", num(c.value)}});
    j["chosen"] = std::move(chosen);
    j["residuals"] = {{"equality", num(doc.residuals.equality)},
                      {"stationarity", num(doc.residuals.stationarity)},
                      {"primal_infeasibility", num(doc.residuals.primal_infeasibility)},
                      {"recovery", num(doc.residuals.recovery)}};
    j["iterations"] = doc.iterations;
    j["message"] = doc.message;
    if (doc.dual_system) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : *doc.dual_system) {
            rows.push_back({{"row", r.label}, {"coefficients", named(r.coefficients)}, {"rhs", num(r.rhs)}});
        }
        j["dual_system"] = std::move(rows);
    }
    if (doc.assignments) {
        ordered_json rows = ordered_json::array();
        for (const auto& a : *doc.assignments) {
            ordered_json vals = ordered_json::array();
            for (double v : a.values) vals.push_back(num(v));
            rows.push_back({{"bits", a.bits}, {"values", std::move(vals)}, {"status", a.status}, {"z", opt(a.z)}});
        }
        j["assignments"] = std::move(rows);
    }
    if (doc.oracle) {
        const auto& o = *doc.oracle;
        j["oracle"] = {{"feasible", o.feasible},
                       {"z", opt(o.z)},
                       {"x", named(o.x)},
                       {"relative_difference", opt(o.relative_difference)},
                       {"evaluations", o.evaluations}};
    }
    j["timing_ms"] = opt(doc.timing_ms);
    return j.dump(2) + "\n";
}

ReportDocument report_from_machine(const std::string& text) {
    const auto j = ordered_json::parse(text);
    ReportDocument doc;
    doc.status = j.at("status").get<std::string>();
    doc.z = read_opt(j.at("z"));
    doc.x = read_named(j.at("x"));
    doc.w = read_named(j.at("w"));
    for (const auto& l : j.at("lambda")) doc.lambda.push_back(read_num(l));
    doc.gap = read_opt(j.at("gap"));
    doc.dual_value = read_opt(j.at("dual_value"));
    for (const auto& c : j.at("chosen")) {
        doc.chosen.push_back({c.at("set").get<std::string>(), c.at("bits").get<std::string>(), read_num(c.at("value"))});
    }
    const auto& r = j.at("residuals");
    doc.residuals = {read_num(r.at("equality")), read_num(r.at("stationarity")), read_num(r.at("primal_infeasibility")),
                     read_num(r.at("recovery"))};
    doc.iterations = j.at("iterations").get<int>();
    doc.message = j.at("message").get<std::string>();
    if (j.contains("dual_system")) {
        std::vector<DualRow> rows;
        for (const auto& row : j.at("dual_system")) {
            rows.push_back({row.at("row").get<std::string>(), read_named(row.at("coefficients")), read_num(row.at("rhs"))});
        }
        doc.dual_system = std::move(rows);
    }
    if (j.contains("assignments")) {
        std::vector<AssignmentRow> rows;
        for (const auto& a : j.at("assignments")) {
            AssignmentRow row{a.at("bits").get<std::string>(), {}, a.at("status").get<std::string>(), read_opt(a.at("z"))};
            for (const auto& v : a.at("values")) row.values.push_back(read_num(v));
            rows.push_back(std::move(row));
        }
        doc.assignments = std::move(rows);
    }
    if (j.contains("oracle")) {
        const auto& o = j.at("oracle");
        doc.oracle = OracleCheck{o.at("feasible").get<bool>(), read_opt(o.at("z")), read_named(o.at("x")),
                                 read_opt(o.at("relative_difference")), o.at("evaluations").get<std::size_t>()};
    }
    doc.timing_ms = read_opt(j.at("timing_ms"));
    return doc;
}

std::string to_text(const ReportDocument& doc) {
    std::ostringstream out;
    out << "status: " << doc.status << "\n";
    if (!doc.message.empty() && doc.status != "optimal") out << "message: " << doc.message << "\n";
    if (doc.z) out << "Z = " << sig7(*doc.z) << "\n";
    if (!doc.chosen.empty()) {
        out << "chosen:\n";
        for (const auto& c : doc.chosen) out << "  " << c.set << " = " << sig7(c.value) << "  (z = " << c.bits << ")\n";
    }
    if (!doc.x.empty()) {
        out << "primal:\n";
        for (const auto& [k, v] : doc.x) out << "  " << k << " = " << sig7(v) << "\n";
    }
    if (doc.dual_system) {
        out << "dual system:\n";
        for (const auto& r : *doc.dual_system) {
            out << "  " << r.label << ": ";
            bool first = true;
            for (const auto& [name, c] : r.coefficients) {
                const double mag = std::abs(c);
                if (first) {
                    out << (c < 0 ? "-" : "");
                } else {
                    out << (c < 0 ? " - " : " + ");
                }
                if (mag != 1.0) out << sig7(mag) << " ";
                out << name;
                first = false;
            }
            out << " = " << sig7(r.rhs) << "\n";
        }
    }
    if (!doc.w.empty()) {
        out << "dual:\n";
        for (const auto& [k, v] : doc.w) out << "  " << k << " = " << sig7(v) << "\n";
        for (std::size_t i = 0; i < doc.lambda.size(); ++i) out << "  lambda" << i + 1 << " = " << sig7(doc.lambda[i]) << "\n";
        if (doc.dual_value) out << "  value = " << sig7(*doc.dual_value) << "\n";
    }
    if (doc.gap) out << "gap = " << sci(*doc.gap) << "\n";
    out << "residuals: equality " << sci(doc.residuals.equality) << ", stationarity " << sci(doc.residuals.stationarity)
        << ", primal " << sci(doc.residuals.primal_infeasibility) << ", recovery " << sci(doc.residuals.recovery) << "\n";
    out << "iterations: " << doc.iterations << "\n";
    if (doc.assignments) {
        out << "assignments (" << doc.assignments->size() << "):\n";
        for (const auto& a : *doc.assignments) {
            out << "  " << a.bits << "  [";
            for (std::size_t i = 0; i < a.values.size(); ++i) out << (i ? ", " : "") << sig7(a.values[i]);
            out << "]  " << a.status;
            if (a.z) out << "  Z = " << sig7(*a.z);
            out << "\n";
        }
    }
    if (doc.oracle) {
        const auto& o = *doc.oracle;
        out << "oracle: ";
        if (!o.feasible) {
            out << "no feasible grid point";
        } else {
            out << "Z = " << sig7(*o.z);
            if (o.relative_difference) out << "  relative difference " << sci(*o.relative_difference);
        }
        out << "  (" << o.evaluations << " evaluations)\n";
    }
    if (doc.timing_ms) out << "time: " << sig7(*doc.timing_ms) << " ms\n";
    return out.str();
}

}  // namespace gpsel
