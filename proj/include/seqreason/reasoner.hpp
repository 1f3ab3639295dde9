#pragma once

// Per-option confidence for every question category, and argmax answer
// selection. Sequence categories are decided crisply from the stage order;
// lookup, difference and indicator questions go through generate -> validate.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "seqreason/question.hpp"

namespace seqreason {

class LifecycleKB;
class EntailmentScorer;

struct OptionScore {
    std::string label;
    double confidence = 0.0;

    bool operator==(const OptionScore&) const = default;
};

struct ConfidenceAssignment {
    std::vector<OptionScore> per_option;  // in option order
    std::string answer;                   // earliest label attaining the maximum
    bool tied = false;                    // maximum attained by >= 2 labels

    double confidence(std::string_view label) const;
};

/// Argmax with ties broken toward the earliest entry.
ConfidenceAssignment select_answer(std::vector<OptionScore> scores);

/// Truth scores p_1..p_n of one answer choice across the stages, plus the
/// 1-based index j of the queried stage.
class IndicatorProfile {
public:
    IndicatorProfile(std::size_t queried, std::vector<double> truth);

    std::size_t n() const noexcept { return truth_.size(); }
    std::size_t queried() const noexcept { return queried_; }
    const std::vector<double>& truth() const noexcept { return truth_; }

private:
    std::size_t queried_;
    std::vector<double> truth_;
};

/// p_j * prod_{k != j} (1 - p_k), folded left to right over the stages.
double indicator_confidence(const IndicatorProfile& profile);

/// Crisp uniqueness: p_j >= theta and exactly one stage reaches theta.
bool indicator_crisp(const IndicatorProfile& profile, double theta);

// -- option matching --------------------------------------------------------

/// Index of the stage an option names: normalized whole-word containment,
/// longest stage name first (a plural "s"/"es" is tolerated).
std::optional<std::size_t> match_stage(std::string_view option,
                                       const std::vector<std::string>& stages);

/// First number in the option: digits or a number word one..twenty.
std::optional<std::size_t> parse_count(std::string_view option);

/// Option read as a stage list separated by "->", "→", "," or " then ".
/// nullopt when any part names no stage.
std::optional<std::vector<std::size_t>> parse_stage_list(std::string_view option,
                                                         const std::vector<std::string>& stages);

// -- category scorers -------------------------------------------------------

/// 1 or 0 for the eight sequence categories.
double score_sequence_question(const LogicalForm& form, std::string_view option,
                               const LifecycleKB& kb);

double score_lookup(const form::Lookup& form, std::string_view question, std::string_view option,
                    const LifecycleKB& kb, const EntailmentScorer& scorer);

double score_difference(const form::Difference& form, std::string_view question,
                        std::string_view option, const LifecycleKB& kb,
                        const EntailmentScorer& scorer);

IndicatorProfile indicator_profile(const form::Indicator& form, std::string_view option,
                                   const LifecycleKB& kb, const EntailmentScorer& scorer);

double score_indicator(const form::Indicator& form, std::string_view option,
                       const LifecycleKB& kb, const EntailmentScorer& scorer);

bool indicator_crisp(const form::Indicator& form, std::string_view option, const LifecycleKB& kb,
                     const EntailmentScorer& scorer, double theta);

double score_option(const LogicalForm& form, std::string_view question, std::string_view option,
                    const LifecycleKB& kb, const EntailmentScorer& scorer);

ConfidenceAssignment answer(const QuestionRecord& record, const LogicalForm& form,
                            const LifecycleKB& kb, const EntailmentScorer& scorer);

}  // namespace seqreason
