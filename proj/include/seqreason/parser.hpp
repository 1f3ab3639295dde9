#pragma once

// Question -> logical form. An ordered trigger-pattern classifier picks the
// template; attributes are then found by searching the question for the
// first KB organism name, that organism's stage names, and ordinal words.

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqreason/errors.hpp"
#include "seqreason/question.hpp"

namespace seqreason {

class LifecycleKB;

/// Trigger patterns are matched against the normalized question. A pattern is
/// one or more fragments separated by "..."; fragments must occur in order.
/// Plain fragments match as substrings ("indicat"); a fragment containing
/// the token <ordinal> matches whole words with any ordinal-lexicon entry
/// substituted ("<ordinal> stage").
struct ParserConfig {
    std::vector<std::pair<Category, std::vector<std::string>>> type_patterns;
    std::map<std::string, Position> ordinal_lexicon;

    /// Every category needs at least one pattern.
    void validate() const;
};

ParserConfig default_parser_config();
ParserConfig parse_parser_config(std::string_view json_text);
ParserConfig load_parser_config(const std::filesystem::path& path);
std::string parser_config_to_json(const ParserConfig& cfg);

/// First category whose pattern fires, in listed order; Lookup when none do.
Category classify_type(std::string_view question, const ParserConfig& cfg);

struct PartialForm {
    Category category = Category::Lookup;
    std::optional<std::string> organism;
    std::vector<std::string> stages;
    std::optional<Position> position;
};

class ParseFailure : public Error {
public:
    ParseFailure(const std::string& message, PartialForm partial)
        : Error(ErrorKind::Parse, message), partial_(std::move(partial)) {}

    const PartialForm& partial() const noexcept { return partial_; }

private:
    PartialForm partial_;
};

/// Throws ParseFailure when a required attribute cannot be found.
LogicalForm extract_attributes(std::string_view question, Category category,
                               const LifecycleKB& kb, const ParserConfig& cfg);

LogicalForm parse_question(std::string_view question, const LifecycleKB& kb,
                           const ParserConfig& cfg);

}  // namespace seqreason
