#pragma once

// Generate functions: turn a question (or template attributes) plus an answer
// choice into a declarative sentence that validate() can check against text.

#include <string>
#include <string_view>
#include <utility>

#include "seqreason/question.hpp"

namespace seqreason {

struct Hypothesis {
    std::string text;        // lowercased, single sentence, no trailing '?'
    std::string provenance;  // generator and rule that produced it

    bool operator==(const Hypothesis&) const = default;
};

/// Rewrites the question into a statement: a blank ("___") takes the choice;
/// otherwise the first wh-phrase is replaced by it ("how do X breathe" ->
/// "X breathe <choice>"); otherwise the choice is appended.
Hypothesis generate_lookup(std::string_view question, std::string_view choice);

/// (H1, H2): the choice holds for the affirmed stage (stage2) and does not
/// hold for the denied stage (stage1). Frames are cut from the question when
/// it names both stages around a negation cue; otherwise a fixed template
/// with auxiliary negation ("can" -> "cannot", "has" -> "does not have").
std::pair<Hypothesis, Hypothesis> generate_difference(std::string_view question,
                                                      std::string_view choice,
                                                      const form::Difference& form);

/// "in the <stage> stage, <choice>"; a leading "when" on the choice is dropped.
Hypothesis generate_indicator(std::string_view stage, std::string_view choice);

}  // namespace seqreason
