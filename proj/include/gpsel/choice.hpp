#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "gpsel/posynomial.hpp"
#include "gpsel/solver.hpp"

namespace gpsel {

/// Which kind of scalar a candidate set may stand in for.
enum class SlotRole { ObjectiveCoefficient, ConstraintCoefficient, Exponent };

std::string_view to_string(SlotRole r);
std::optional<SlotRole> parse_role(std::string_view text);

/// Values of the binary selector variables z1, z2 (and z3) of one candidate set.
struct BinaryAssignment {
    std::vector<std::uint8_t> bits;

    std::string to_string() const;
    /// Parses "01", "110", ... Throws DomainError for other characters or lengths.
    static BinaryAssignment parse(std::string_view text);

    bool operator==(const BinaryAssignment&) const = default;
    auto operator<=>(const BinaryAssignment&) const = default;
};

/// A named slot with 1..8 candidate values, selected through binary variables.
///
/// Candidate i binds to the i-th product term of the selector polynomial for
/// its size (see `encoding_patterns`). `excluded` lists extra bit patterns that
/// a model rules out on top of the default encoding, e.g. a printed side
/// constraint z1 + z2 <= 1 on a four-candidate set excludes "11".
struct CandidateSet {
    std::string name;
    SlotRole role{SlotRole::ObjectiveCoefficient};
    std::vector<double> candidates;
    std::vector<BinaryAssignment> excluded;

    std::size_t size() const noexcept { return candidates.size(); }
    /// 2 bits up to four candidates, 3 bits for five to eight.
    std::size_t bit_count() const noexcept { return candidates.size() <= 4 ? 2 : 3; }

    bool operator==(const CandidateSet&) const = default;
};

inline constexpr std::size_t kMaxCandidates = 8;

/// Bit patterns of the default encoding for k candidates, in candidate order:
///   k=1: 00                 k=2: 10 00
///   k=3: 10 01 00           k=4: 10 01 00 11
///   k=5: 100 010 001 000 111
///   k=6: 100 010 001 110 101 011
///   k=7: k=6 patterns, 000  k=8: k=7 patterns, 111
/// Throws DomainError for k outside [1, 8].
std::vector<BinaryAssignment> encoding_patterns(std::size_t k);

/// Patterns admitted for the set: the default encoding minus `excluded`.
std::vector<BinaryAssignment> valid_assignments(const CandidateSet& set);

/// Evaluates the multilinear selector polynomial of the set at the bit pattern.
/// Throws DomainError when the pattern is not a valid assignment of the set.
double selector_polynomial(const CandidateSet& set, const BinaryAssignment& a);

/// Candidate position selected by a valid pattern.
std::size_t selected_index(const CandidateSet& set, const BinaryAssignment& a);

/// A coefficient or exponent that is either a literal or a reference to a set.
struct Slot {
    std::variant<double, std::string> value{0.0};

    static Slot literal(double v) { return Slot{v}; }
    static Slot ref(std::string name) { return Slot{std::move(name)}; }
    bool is_ref() const noexcept { return std::holds_alternative<std::string>(value); }
    double literal_value() const { return std::get<double>(value); }
    const std::string& set_name() const { return std::get<std::string>(value); }

    bool operator==(const Slot&) const = default;
};

struct TemplateTerm {
    Slot coefficient;
    std::vector<Slot> exponents;  // one per variable

    bool operator==(const TemplateTerm&) const = default;
};

struct TemplateConstraint {
    std::vector<TemplateTerm> terms;
    double bound{1.0};

    bool operator==(const TemplateConstraint&) const = default;
};

/// A GP whose coefficient and exponent slots may reference candidate sets.
struct ChoiceGp {
    std::vector<Variable> variables;
    std::vector<TemplateTerm> objective;
    std::vector<TemplateConstraint> constraints;
    std::vector<CandidateSet> sets;

    const CandidateSet* find_set(std::string_view name) const;
    /// True when every set has a single candidate (or there are no sets).
    bool is_fixed() const;

    bool operator==(const ChoiceGp&) const = default;
};

/// Template with every slot literal.
ChoiceGp from_problem(const GpProblem& g);

/// Structural checks: references resolve, roles match slot kinds, every set is
/// used, sizes in [1, 8], exclusions are well-formed, bounds positive, arity.
std::vector<Violation> validate_structure(const ChoiceGp& cg);

/// validate_structure plus value checks: literal and candidate coefficients
/// strictly positive, all values finite.
std::vector<Violation> validate(const ChoiceGp& cg);

/// One assignment per set, in the order of ChoiceGp::sets.
using Choice = std::vector<BinaryAssignment>;

/// Concatenated bit string of a choice, used for tie-breaking.
std::string bit_string(const Choice& choice);

/// A coefficient slot resolved to a non-positive value.
class RejectedExpansion : public DomainError {
public:
    using DomainError::DomainError;
};

/// Replaces every slot by its selected value. Throws DomainError for an invalid
/// pattern and RejectedExpansion when a coefficient resolves to <= 0.
GpProblem expand(const ChoiceGp& cg, const Choice& choice);

/// Product of the valid-assignment counts of all sets.
std::size_t combination_count(const ChoiceGp& cg);

struct ChoiceSettings {
    SolverSettings solver;
    std::size_t max_combinations{1'000'000};
    unsigned threads{1};
    bool keep_assignments{false};  // fill ChoiceReport::assignments
};

struct AssignmentOutcome {
    Choice choice;
    std::vector<double> values;  // selected value per set
    bool rejected{false};
    SolveStatus status{SolveStatus::NumericalError};
    double objective_value{0.0};
};

struct ChoiceReport {
    SolveStatus status{SolveStatus::Infeasible};
    SolveReport best;             // full report of the winning expansion
    Choice chosen;
    std::vector<double> chosen_values;
    GpProblem chosen_problem;
    std::size_t combinations{0};
    std::size_t rejected{0};
    std::size_t optimal{0};
    std::vector<AssignmentOutcome> assignments;  // enumeration order, when requested
    std::string message;
};

/// Solves every non-rejected expansion and returns the minimum-objective Optimal
/// one. Objective values within 1e-9 relative of the minimum tie and are broken
/// by the lexicographically smallest concatenated bit string.
ChoiceReport solve_choice(const ChoiceGp& cg, const ChoiceSettings& cfg = {});

}  // namespace gpsel
