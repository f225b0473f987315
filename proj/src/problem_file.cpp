#include "gpsel/problem_file.hpp"

#include <algorithm>
#include <fstream>
#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace gpsel {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void syntax(const std::string& path, const std::string& msg) {
    throw ProblemFileError(ProblemErrorKind::Syntax, path + ": " + msg);
}

[[noreturn]] void semantic(const std::string& path, const std::string& msg) {
    throw ProblemFileError(ProblemErrorKind::Semantic, path + ": " + msg);
}

std::string type_name(const json& j) { return j.type_name(); }

void expect_object(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional) {
    if (!j.is_object()) syntax(path, std::string("expected an object, found ") + type_name(j));
    for (auto key : required) {
        if (!j.contains(std::string(key))) syntax(path, "missing field '" + std::string(key) + "'");
    }
    for (const auto& [key, _] : j.items()) {
        const bool known = std::find(required.begin(), required.end(), key) != required.end() ||
                           std::find(optional.begin(), optional.end(), key) != optional.end();
        if (!known) syntax(path, "unknown field '" + key + "'");
    }
}

const json& expect_array(const json& j, const std::string& path) {
    if (!j.is_array()) syntax(path, std::string("expected an array, found ") + type_name(j));
    return j;
}

double expect_number(const json& j, const std::string& path) {
    if (!j.is_number()) syntax(path, std::string("expected a number, found ") + type_name(j));
    return j.get<double>();
}

const std::string& expect_string(const json& j, const std::string& path) {
    if (!j.is_string()) syntax(path, std::string("expected a string, found ") + type_name(j));
    return j.get_ref<const std::string&>();
}

Slot parse_slot(const json& j, const std::string& path) {
    if (j.is_number()) return Slot::literal(j.get<double>());
    if (j.is_string()) return Slot::ref(j.get<std::string>());
    syntax(path, std::string("expected a number or a candidate set name, found ") + type_name(j));
}

struct Reader {
    std::vector<Variable> variables;

    TemplateTerm term(const json& j, const std::string& path) const {
        expect_object(j, path, {"coefficient"}, {"exponents"});
        TemplateTerm t{parse_slot(j.at("coefficient"), path + ".coefficient"),
                       std::vector<Slot>(variables.size(), Slot::literal(0.0))};
        if (!j.contains("exponents")) return t;
        const auto& ex = j.at("exponents");
        const std::string ep = path + ".exponents";
        if (!ex.is_object()) syntax(ep, std::string("expected an object, found ") + type_name(ex));
        for (const auto& [name, value] : ex.items()) {
            const auto it = std::find_if(variables.begin(), variables.end(), [&](const Variable& v) { return v.name == name; });
            if (it == variables.end()) semantic(ep, "unknown variable '" + name + "'");
            t.exponents[it->index] = parse_slot(value, ep + "." + name);
        }
        return t;
    }

    std::vector<TemplateTerm> terms(const json& j, const std::string& path) const {
        std::vector<TemplateTerm> out;
        const auto& arr = expect_array(j, path);
        for (std::size_t t = 0; t < arr.size(); ++t) out.push_back(term(arr[t], path + "[" + std::to_string(t) + "]"));
        return out;
    }
};

CandidateSet parse_set(const json& j, const std::string& path) {
    expect_object(j, path, {"name", "role", "values"}, {"exclude"});
    CandidateSet s;
    s.name = expect_string(j.at("name"), path + ".name");
    const auto& role = expect_string(j.at("role"), path + ".role");
    const auto r = parse_role(role);
    if (!r) semantic(path + ".role", "unknown role '" + role + "'");
    s.role = *r;
    const auto& values = expect_array(j.at("values"), path + ".values");
    for (std::size_t v = 0; v < values.size(); ++v) {
        s.candidates.push_back(expect_number(values[v], path + ".values[" + std::to_string(v) + "]"));
    }
    if (j.contains("exclude")) {
        const auto& ex = expect_array(j.at("exclude"), path + ".exclude");
        for (std::size_t e = 0; e < ex.size(); ++e) {
            const std::string ep = path + ".exclude[" + std::to_string(e) + "]";
            try {
                s.excluded.push_back(BinaryAssignment::parse(expect_string(ex[e], ep)));
            } catch (const DomainError& err) {
                semantic(ep, err.what());
            }
        }
    }
    return s;
}

ProblemFile parse_document(const json& root) {
    expect_object(root, "$", {"format", "version", "variables", "objective"}, {"description", "constraints", "candidate_sets"});
    if (expect_string(root.at("format"), "$.format") != kProblemFormat) {
        syntax("$.format", "expected \"" + std::string(kProblemFormat) + "\"");
    }
    const auto& version = root.at("version");
    if (!version.is_number_integer() || version.get<long long>() != kProblemVersion) {
        syntax("$.version", "unsupported version " + version.dump() + ", expected " + std::to_string(kProblemVersion));
    }

    ProblemFile f;
    if (root.contains("description")) f.description = expect_string(root.at("description"), "$.description");

    const auto& vars = expect_array(root.at("variables"), "$.variables");
    std::vector<std::string> names;
    for (std::size_t j = 0; j < vars.size(); ++j) {
        names.push_back(expect_string(vars[j], "$.variables[" + std::to_string(j) + "]"));
    }
    for (std::size_t j = 0; j < names.size(); ++j) {
        if (names[j].empty()) semantic("$.variables[" + std::to_string(j) + "]", "variable name is empty");
        for (std::size_t k = 0; k < j; ++k) {
            if (names[k] == names[j]) semantic("$.variables[" + std::to_string(j) + "]", "duplicate variable '" + names[j] + "'");
        }
    }
    if (names.empty()) semantic("$.variables", "at least one variable is required");

    Reader reader{make_variables(names)};
    f.model.variables = reader.variables;
    f.model.objective = reader.terms(root.at("objective"), "$.objective");

    if (root.contains("constraints")) {
        const auto& cs = expect_array(root.at("constraints"), "$.constraints");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string path = "$.constraints[" + std::to_string(i) + "]";
            expect_object(cs[i], path, {"terms"}, {"bound"});
            TemplateConstraint c;
            c.terms = reader.terms(cs[i].at("terms"), path + ".terms");
            if (cs[i].contains("bound")) c.bound = expect_number(cs[i].at("bound"), path + ".bound");
            f.model.constraints.push_back(std::move(c));
        }
    }
    if (root.contains("candidate_sets")) {
        const auto& ss = expect_array(root.at("candidate_sets"), "$.candidate_sets");
        for (std::size_t s = 0; s < ss.size(); ++s) {
            f.model.sets.push_back(parse_set(ss[s], "$.candidate_sets[" + std::to_string(s) + "]"));
        }
    }

    if (const auto v = validate(f.model); !v.empty()) {
        throw ProblemFileError(ProblemErrorKind::Semantic, describe(v));
    }
    return f;
}

ordered_json slot_json(const Slot& s) {
    if (s.is_ref()) return s.set_name();
    return s.literal_value();
}

ordered_json terms_json(const std::vector<TemplateTerm>& ts, const std::vector<Variable>& vars) {
    ordered_json arr = ordered_json::array();
    for (const auto& t : ts) {
        ordered_json term;
        term["coefficient"] = slot_json(t.coefficient);
        ordered_json ex = ordered_json::object();
        for (std::size_t j = 0; j < t.exponents.size(); ++j) {
            const auto& e = t.exponents[j];
            if (!e.is_ref() && e.literal_value() == 0.0) continue;
            ex[vars[j].name] = slot_json(e);
        }
        term["exponents"] = std::move(ex);
        arr.push_back(std::move(term));
    }
    return arr;
}

}  // namespace

ProblemFile parse_problem_text(std::string_view text) {
    json root;
    try {
        root = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ProblemFileError(ProblemErrorKind::Syntax, std::string("malformed JSON: ") + e.what());
    }
    return parse_document(root);
}

ProblemFile parse_problem(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ProblemFileError(ProblemErrorKind::Syntax, "cannot read problem file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem_text(buf.str());
}

std::string serialize_problem(const ProblemFile& file) {
    const auto& m = file.model;
    ordered_json root;
    root["format"] = std::string(kProblemFormat);
    root["version"] = kProblemVersion;
    if (!file.description.empty()) root["description"] = file.description;
    ordered_json vars = ordered_json::array();
    for (const auto& v : m.variables) vars.push_back(v.name);
    root["variables"] = std::move(vars);
    root["objective"] = terms_json(m.objective, m.variables);
    ordered_json cons = ordered_json::array();
    for (const auto& c : m.constraints) {
        ordered_json jc;
        jc["terms"] = terms_json(c.terms, m.variables);
        jc["bound"] = c.bound;
        cons.push_back(std::move(jc));
    }
    root["constraints"] = std::move(cons);
    ordered_json sets = ordered_json::array();
    for (const auto& s : m.sets) {
        ordered_json js;
        js["name"] = s.name;
        js["role"] = std::string(to_string(s.role));
        js["values"] = s.candidates;
        if (!s.excluded.empty()) {
            ordered_json ex = ordered_json::array();
            for (const auto& p : s.excluded) ex.push_back(p.to_string());
            js["exclude"] = std::move(ex);
        }
        sets.push_back(std::move(js));
    }
    root["candidate_sets"] = std::move(sets);
    return root.dump(2) + "\n";
}

}  // namespace gpsel
