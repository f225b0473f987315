#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "gpsel/choice.hpp"

namespace gpsel {

/// Syntax: unreadable file, malformed JSON, wrong types, missing or unknown fields.
/// Semantic: the document is well-formed but the model is not valid.
enum class ProblemErrorKind { Syntax, Semantic };

class ProblemFileError : public std::runtime_error {
public:
    ProblemFileError(ProblemErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ProblemErrorKind kind() const noexcept { return kind_; }
    /// 2 for syntax errors, 3 for semantic ones.
    int exit_code() const noexcept { return kind_ == ProblemErrorKind::Syntax ? 2 : 3; }

private:
    ProblemErrorKind kind_;
};

inline constexpr std::string_view kProblemFormat = "gpsel-problem";
inline constexpr int kProblemVersion = 1;

struct ProblemFile {
    std::string description;
    ChoiceGp model;  // a fixed GpProblem is a model without candidate sets

    bool operator==(const ProblemFile&) const = default;
};

ProblemFile parse_problem_text(std::string_view text);
ProblemFile parse_problem(const std::filesystem::path& path);

/// Pretty-printed document that parses back to an identical model.
std::string serialize_problem(const ProblemFile& file);

}  // namespace gpsel
