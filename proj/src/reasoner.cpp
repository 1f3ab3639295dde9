#include "seqreason/reasoner.hpp"

#include <algorithm>
#include <array>
#include <charconv>

#include "seqreason/entailment.hpp"
#include "seqreason/errors.hpp"
#include "seqreason/hypothesis.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

double ConfidenceAssignment::confidence(std::string_view label) const {
    for (const auto& o : per_option) {
        if (o.label == label) return o.confidence;
    }
    throw Error(ErrorKind::Lookup, "no option labelled '" + std::string(label) + "'");
}

ConfidenceAssignment select_answer(std::vector<OptionScore> scores) {
    ConfidenceAssignment out;
    out.per_option = std::move(scores);
    if (out.per_option.empty()) return out;
    std::size_t best = 0;
    std::size_t count = 1;
    for (std::size_t i = 1; i < out.per_option.size(); ++i) {
        const double v = out.per_option[i].confidence;
        if (v > out.per_option[best].confidence) {
            best = i;
            count = 1;
        } else if (v == out.per_option[best].confidence) {
            ++count;
        }
    }
    out.answer = out.per_option[best].label;
    out.tied = count > 1;
    return out;
}

IndicatorProfile::IndicatorProfile(std::size_t queried, std::vector<double> truth)
    : queried_(queried), truth_(std::move(truth)) {
    if (queried_ < 1 || queried_ > truth_.size()) {
        throw Error(ErrorKind::Form, "indicator profile: queried stage index " +
                                         std::to_string(queried_) + " outside 1.." +
                                         std::to_string(truth_.size()));
    }
    for (double p : truth_) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw Error(ErrorKind::Form, "indicator profile: truth score outside [0, 1]");
        }
    }
}

double indicator_confidence(const IndicatorProfile& profile) {
    double result = 1.0;
    for (std::size_t i = 1; i <= profile.n(); ++i) {
        const double p = profile.truth()[i - 1];
        result *= i == profile.queried() ? p : 1.0 - p;
    }
    return result;
}

bool indicator_crisp(const IndicatorProfile& profile, double theta) {
    const auto& p = profile.truth();
    const auto holding = std::count_if(p.begin(), p.end(), [&](double v) { return v >= theta; });
    return p[profile.queried() - 1] >= theta && holding == 1;
}

std::optional<std::size_t> match_stage(std::string_view option,
                                       const std::vector<std::string>& stages) {
    const std::string o = text::normalize(option);
    std::optional<std::size_t> best;
    std::size_t best_at = 0;
    for (std::size_t i = 0; i < stages.size(); ++i) {
        const auto spans = text::find_phrase(o, stages[i], true);
        if (spans.empty()) continue;
        const std::size_t at = spans.front().begin;
        if (!best || stages[i].size() > stages[*best].size() ||
            (stages[i].size() == stages[*best].size() && at < best_at)) {
            best = i;
            best_at = at;
        }
    }
    return best;
}

std::optional<std::size_t> parse_count(std::string_view option) {
    static constexpr std::array<std::string_view, 20> kWords = {
        "one",    "two",     "three",     "four",     "five",    "six",     "seven",
        "eight",  "nine",    "ten",       "eleven",   "twelve",  "thirteen", "fourteen",
        "fifteen", "sixteen", "seventeen", "eighteen", "nineteen", "twenty"};
    const std::string o = text::normalize(option);
    std::size_t i = 0;
    while (i < o.size()) {
        if (!text::is_word_char(o[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < o.size() && text::is_word_char(o[j])) ++j;
        const std::string_view word(o.data() + i, j - i);
        std::size_t n = 0;
        const auto [ptr, ec] = std::from_chars(word.data(), word.data() + word.size(), n);
        if (ec == std::errc{} && ptr == word.data() + word.size()) return n;
        for (std::size_t k = 0; k < kWords.size(); ++k) {
            if (word == kWords[k]) return k + 1;
        }
        i = j;
    }
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> parse_stage_list(std::string_view option,
                                                         const std::vector<std::string>& stages) {
    std::string o = text::normalize(option);
    for (std::string_view sep : {"\xE2\x86\x92", "->", " then "}) {
        for (std::size_t pos = o.find(sep); pos != std::string::npos; pos = o.find(sep, pos)) {
            o.replace(pos, sep.size(), ",");
        }
    }
    std::vector<std::size_t> out;
    for (const auto& part : text::split(o, ',')) {
        if (text::trim(part).empty()) continue;
        const auto idx = match_stage(part, stages);
        if (!idx) return std::nullopt;
        out.push_back(*idx);
    }
    return out;
}

namespace {

std::size_t stage_index(const StageSequence& seq, const std::string& stage) {
    const auto pos = seq.position_of(text::normalize(stage));
    if (!pos) {
        throw Error(ErrorKind::Form,
                    "'" + stage + "' is not a stage of '" + seq.organism + "'");
    }
    return *pos - 1;
}

double crisp(bool b) { return b ? 1.0 : 0.0; }

}  // namespace

double score_sequence_question(const LogicalForm& form, std::string_view option,
                               const LifecycleKB& kb) {
    const StageSequence& seq = kb.entry(organism_of(form)).sequence;
    const auto& stages = seq.stages;
    const std::size_t n = stages.size();
    const auto picked = match_stage(option, stages);

    return std::visit(
        [&](const auto& f) -> double {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, form::NextStage>) {
                const std::size_t s = stage_index(seq, f.stage);
                return crisp(picked && *picked == s + 1);
            } else if constexpr (std::is_same_v<T, form::StageBefore>) {
                const std::size_t s = stage_index(seq, f.stage);
                return crisp(picked && *picked < s);
            } else if constexpr (std::is_same_v<T, form::StageBetween>) {
                const std::size_t a = stage_index(seq, f.stage1);
                const std::size_t b = stage_index(seq, f.stage2);
                const auto [lo, hi] = std::minmax(a, b);
                return crisp(picked && *picked > lo && *picked < hi);
            } else if constexpr (std::is_same_v<T, form::StageAt>) {
                if (!picked) return 0.0;
                const std::size_t k = *picked + 1;  // 1-based
                switch (f.position.kind()) {
                    case Position::Kind::Index: return crisp(k == f.position.value());
                    case Position::Kind::Last: return crisp(k == n);
                    case Position::Kind::Middle:
                        if (n % 2 == 1) return crisp(k == (n + 1) / 2);
                        return crisp(k == n / 2 || k == n / 2 + 1);
                }
                return 0.0;
            } else if constexpr (std::is_same_v<T, form::CountStages>) {
                const auto count = parse_count(option);
                return crisp(count && *count == n);
            } else if constexpr (std::is_same_v<T, form::CorrectlyOrdered>) {
                const auto list = parse_stage_list(option, stages);
                if (!list || list->size() < 2) return 0.0;
                return crisp(std::adjacent_find(list->begin(), list->end(),
                                                std::greater_equal<>()) == list->end());
            } else if constexpr (std::is_same_v<T, form::IsAStageOf>) {
                return crisp(picked.has_value());
            } else if constexpr (std::is_same_v<T, form::IsNotAStageOf>) {
                return crisp(!picked.has_value());
            } else {
                throw Error(ErrorKind::Form, std::string(template_name(category_of(form))) +
                                                 " is not a sequence question");
            }
        },
        form);
}

double score_lookup(const form::Lookup& form, std::string_view question, std::string_view option,
                    const LifecycleKB& kb, const EntailmentScorer& scorer) {
    const std::string& description = kb.description_of(form.organism);
    if (text::trim(option).empty()) return 0.0;
    const Hypothesis h = generate_lookup(question, option);
    return validate(description, h.text, scorer);
}

double score_difference(const form::Difference& form, std::string_view question,
                        std::string_view option, const LifecycleKB& kb,
                        const EntailmentScorer& scorer) {
    const KbEntry& entry = kb.entry(form.organism);
    stage_index(entry.sequence, form.stage1);
    stage_index(entry.sequence, form.stage2);
    if (text::trim(option).empty()) return 0.0;
    const auto [affirmed, denied] = generate_difference(question, option, form);
    const double v1 = validate(entry.description.text, affirmed.text, scorer);
    if (v1 == 0.0) return 0.0;
    return v1 * validate(entry.description.text, denied.text, scorer);
}

IndicatorProfile indicator_profile(const form::Indicator& form, std::string_view option,
                                   const LifecycleKB& kb, const EntailmentScorer& scorer) {
    const KbEntry& entry = kb.entry(form.organism);
    const std::size_t j = stage_index(entry.sequence, form.stage) + 1;
    std::vector<double> truth;
    truth.reserve(entry.sequence.size());
    const bool blank = text::trim(option).empty();
    for (const auto& stage : entry.sequence.stages) {
        truth.push_back(blank ? 0.0
                              : validate(entry.description.text,
                                         generate_indicator(stage, option).text, scorer));
    }
    return IndicatorProfile(j, std::move(truth));
}

double score_indicator(const form::Indicator& form, std::string_view option,
                       const LifecycleKB& kb, const EntailmentScorer& scorer) {
    return indicator_confidence(indicator_profile(form, option, kb, scorer));
}

bool indicator_crisp(const form::Indicator& form, std::string_view option, const LifecycleKB& kb,
                     const EntailmentScorer& scorer, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorKind::Config, "indicator threshold must lie in (0, 1)");
    }
    return indicator_crisp(indicator_profile(form, option, kb, scorer), theta);
}

double score_option(const LogicalForm& form, std::string_view question, std::string_view option,
                    const LifecycleKB& kb, const EntailmentScorer& scorer) {
    if (const auto* f = std::get_if<form::Lookup>(&form)) {
        return score_lookup(*f, question, option, kb, scorer);
    }
    if (const auto* f = std::get_if<form::Difference>(&form)) {
        return score_difference(*f, question, option, kb, scorer);
    }
    if (const auto* f = std::get_if<form::Indicator>(&form)) {
        return score_indicator(*f, option, kb, scorer);
    }
    return score_sequence_question(form, option, kb);
}

ConfidenceAssignment answer(const QuestionRecord& record, const LogicalForm& form,
                            const LifecycleKB& kb, const EntailmentScorer& scorer) {
    std::vector<OptionScore> scores;
    scores.reserve(record.options.size());
    for (const auto& opt : record.options) {
        try {
            scores.push_back({opt.label, score_option(form, record.question, opt.text, kb, scorer)});
        } catch (const Error& e) {
            throw Error(e.kind(), "option " + opt.label + ": " + e.what());
        }
    }
    return select_answer(std::move(scores));
}

}  // namespace seqreason
