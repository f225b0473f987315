#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpsel {

/// Thrown when an argument lies outside the mathematical domain of an operation
/// (non-positive variable values, non-positive bounds, invalid bit patterns, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

struct Variable {
    std::size_t index{0};
    std::string name;

    bool operator==(const Variable&) const = default;
};

/// Dense labels x1..xn (or the given names) with indices 0..n-1.
std::vector<Variable> make_variables(std::size_t n);
std::vector<Variable> make_variables(const std::vector<std::string>& names);

/// c * prod_j x_j^{a_j}. Exponents are dense: one entry per problem variable.
struct Monomial {
    double coefficient{1.0};
    std::vector<double> exponents;

    bool operator==(const Monomial&) const = default;
};

struct Posynomial {
    std::vector<Monomial> terms;

    bool operator==(const Posynomial&) const = default;
};

/// f_i(x) <= bound.
struct Constraint {
    Posynomial body;
    double bound{1.0};

    bool operator==(const Constraint&) const = default;
};

/// minimize objective(x) subject to constraint_i(x) <= b_i, x > 0.
struct GpProblem {
    std::vector<Variable> variables;
    Posynomial objective;
    std::vector<Constraint> constraints;

    std::size_t num_variables() const noexcept { return variables.size(); }
    bool operator==(const GpProblem&) const = default;
};

/// Same as GpProblem with every bound equal to one.
struct StandardGp {
    std::vector<Variable> variables;
    Posynomial objective;
    std::vector<Posynomial> constraints;

    std::size_t num_variables() const noexcept { return variables.size(); }
    std::size_t num_terms() const noexcept;
    bool operator==(const StandardGp&) const = default;
};

double evaluate(const Monomial& m, std::span<const double> x);
double evaluate(const Posynomial& p, std::span<const double> x);

/// Divides every constraint coefficient by its bound. Throws DomainError for b_i <= 0.
StandardGp standardize(const GpProblem& g);

/// One broken invariant, located by a short path such as "constraint[1].term[0]".
struct Violation {
    std::string location;
    std::string message;

    bool operator==(const Violation&) const = default;
};

// Empty result iff the problem invariants hold. Never throws.
std::vector<Violation> validate(const GpProblem& g);
std::vector<Violation> validate(const StandardGp& s);

/// Throws DomainError listing every violation when `validate` is non-empty.
void require_valid(const StandardGp& s);

std::string describe(const std::vector<Violation>& violations);

}  // namespace gpsel
