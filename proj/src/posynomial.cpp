#include "gpsel/posynomial.hpp"

#include <cmath>
#include <sstream>

namespace gpsel {

std::vector<Variable> make_variables(std::size_t n) {
    std::vector<Variable> vars;
    vars.reserve(n);
    for (std::size_t j = 0; j < n; ++j) vars.push_back({j, "x" + std::to_string(j + 1)});
    return vars;
}

std::vector<Variable> make_variables(const std::vector<std::string>& names) {
    std::vector<Variable> vars;
    vars.reserve(names.size());
    for (std::size_t j = 0; j < names.size(); ++j) vars.push_back({j, names[j]});
    return vars;
}

std::size_t StandardGp::num_terms() const noexcept {
    std::size_t total = objective.terms.size();
    for (const auto& c : constraints) total += c.terms.size();
    return total;
}

double evaluate(const Monomial& m, std::span<const double> x) {
    if (m.exponents.size() != x.size()) {
        throw DomainError("monomial has " + std::to_string(m.exponents.size()) +
                          " exponents but point has " + std::to_string(x.size()) + " coordinates");
    }
    double value = m.coefficient;
    for (std::size_t j = 0; j < x.size(); ++j) {
        if (!(x[j] > 0.0) || !std::isfinite(x[j])) {
            throw DomainError("variable " + std::to_string(j) + " must be positive and finite");
        }
        if (m.exponents[j] != 0.0) value *= std::pow(x[j], m.exponents[j]);
    }
    return value;
}

double evaluate(const Posynomial& p, std::span<const double> x) {
    double sum = 0.0;
    for (const auto& term : p.terms) sum += evaluate(term, x);
    return sum;
}

StandardGp standardize(const GpProblem& g) {
    StandardGp s;
    s.variables = g.variables;
    s.objective = g.objective;
    s.constraints.reserve(g.constraints.size());
    for (std::size_t i = 0; i < g.constraints.size(); ++i) {
        const auto& c = g.constraints[i];
        if (!(c.bound > 0.0) || !std::isfinite(c.bound)) {
            throw DomainError("constraint " + std::to_string(i + 1) + " has non-positive bound");
        }
        Posynomial scaled = c.body;
        if (c.bound != 1.0) {
            for (auto& t : scaled.terms) t.coefficient /= c.bound;
        }
        s.constraints.push_back(std::move(scaled));
    }
    return s;
}

namespace {

void check_posynomial(const Posynomial& p, std::size_t n, const std::string& where,
                      std::vector<Violation>& out) {
    if (p.terms.empty()) out.push_back({where, "posynomial has no terms"});
    for (std::size_t t = 0; t < p.terms.size(); ++t) {
        const auto& m = p.terms[t];
        const std::string loc = where + ".term[" + std::to_string(t) + "]";
        if (!(m.coefficient > 0.0) || !std::isfinite(m.coefficient)) {
            std::ostringstream os;
            os << "coefficient " << m.coefficient << " is not strictly positive and finite";
            out.push_back({loc, os.str()});
        }
        if (m.exponents.size() != n) {
            out.push_back({loc, "has " + std::to_string(m.exponents.size()) + " exponents, expected " +
                                    std::to_string(n)});
        }
        for (std::size_t j = 0; j < m.exponents.size(); ++j) {
            if (!std::isfinite(m.exponents[j])) {
                out.push_back({loc, "exponent of variable " + std::to_string(j) + " is not finite"});
            }
        }
    }
}

void check_variables(const std::vector<Variable>& vars, std::vector<Violation>& out) {
    if (vars.empty()) out.push_back({"variables", "problem has no variables"});
    for (std::size_t j = 0; j < vars.size(); ++j) {
        if (vars[j].index != j) {
            out.push_back({"variables[" + std::to_string(j) + "]", "index is not dense"});
        }
        for (std::size_t k = 0; k < j; ++k) {
            if (!vars[j].name.empty() && vars[j].name == vars[k].name) {
                out.push_back({"variables[" + std::to_string(j) + "]", "duplicate name " + vars[j].name});
            }
        }
    }
}

}  // namespace

std::vector<Violation> validate(const GpProblem& g) {
    std::vector<Violation> out;
    check_variables(g.variables, out);
    const std::size_t n = g.num_variables();
    check_posynomial(g.objective, n, "objective", out);
    for (std::size_t i = 0; i < g.constraints.size(); ++i) {
        const std::string where = "constraint[" + std::to_string(i + 1) + "]";
        check_posynomial(g.constraints[i].body, n, where, out);
        const double b = g.constraints[i].bound;
        if (!(b > 0.0) || !std::isfinite(b)) {
            std::ostringstream os;
            os << "bound " << b << " is not strictly positive and finite";
            out.push_back({where, os.str()});
        }
    }
    return out;
}

std::vector<Violation> validate(const StandardGp& s) {
    std::vector<Violation> out;
    check_variables(s.variables, out);
    const std::size_t n = s.num_variables();
    check_posynomial(s.objective, n, "objective", out);
    for (std::size_t i = 0; i < s.constraints.size(); ++i) {
        check_posynomial(s.constraints[i], n, "constraint[" + std::to_string(i + 1) + "]", out);
    }
    return out;
}

void require_valid(const StandardGp& s) {
    const auto v = validate(s);
    if (!v.empty()) throw DomainError("invalid geometric program: " + describe(v));
}

std::string describe(const std::vector<Violation>& violations) {
    std::string out;
    for (const auto& v : violations) {
        if (!out.empty()) out += "; ";
        out += v.location + ": " + v.message;
    }
    return out;
}

}  // namespace gpsel
