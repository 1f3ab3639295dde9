#include "seqreason/hypothesis.hpp"

#include <algorithm>
#include <array>
#include <optional>
#include <span>

#include "seqreason/errors.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

namespace {

constexpr std::array<std::string_view, 9> kWhWords = {"what", "which", "how", "where", "when",
                                                      "who",  "whom",  "whose", "why"};
constexpr std::array<std::string_view, 4> kWhPhrases = {
    "which of these", "which of the following", "what of the following", "which one"};
constexpr std::array<std::string_view, 2> kQuantityPhrases = {"how many", "how much"};
constexpr std::array<std::string_view, 3> kDoAux = {"do", "does", "did"};

bool is_terminal_punct(char c) { return c == '?' || c == '.' || c == '!'; }

std::string strip_terminal(std::string s) {
    while (!s.empty() && (is_terminal_punct(s.back()) || s.back() == ' ')) s.pop_back();
    return s;
}

std::string clean(std::string_view s) { return strip_terminal(text::normalize(s)); }

std::vector<std::string> sentences_of(const std::string& q) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
        if (is_terminal_punct(q[i]) && (i + 1 == q.size() || q[i + 1] == ' ')) {
            out.push_back(text::trim(q.substr(start, i + 1 - start)));
            start = i + 1;
        }
    }
    if (start < q.size()) out.push_back(text::trim(q.substr(start)));
    std::erase_if(out, [](const std::string& s) { return strip_terminal(s).empty(); });
    return out;
}

std::optional<text::Span> find_blank(std::string_view s) {
    const std::size_t pos = s.find("__");
    if (pos == std::string_view::npos) return std::nullopt;
    std::size_t end = pos;
    while (end < s.size() && s[end] == '_') ++end;
    return text::Span{pos, end};
}

std::optional<text::Span> first_wh(std::string_view s) {
    std::optional<text::Span> best;
    for (auto w : kWhWords) {
        const auto spans = text::find_phrase(s, w);
        if (!spans.empty() && (!best || spans.front().begin < best->begin)) best = spans.front();
    }
    return best;
}

// A multi-word phrase starting exactly at `at`, if any.
std::optional<text::Span> phrase_at(std::string_view s, std::size_t at,
                                    std::span<const std::string_view> phrases) {
    std::optional<text::Span> best;
    for (auto p : phrases) {
        for (const auto& span : text::find_phrase(s, p)) {
            if (span.begin == at && (!best || span.size() > best->size())) best = span;
        }
    }
    return best;
}

std::string replace_span(std::string_view s, text::Span span, std::string_view with) {
    std::string out(s.substr(0, span.begin));
    out += with;
    out += s.substr(span.end);
    return out;
}

Hypothesis finish(std::string body, std::string provenance) {
    body = strip_terminal(text::normalize(body));
    return Hypothesis{std::move(body), std::move(provenance)};
}

}  // namespace

Hypothesis generate_lookup(std::string_view question, std::string_view choice) {
    const std::string c = clean(choice);
    const std::string q = text::normalize(question);
    if (c.empty()) throw Error(ErrorKind::Generation, "generate_lookup: empty choice");
    if (strip_terminal(q).empty()) throw Error(ErrorKind::Generation, "generate_lookup: empty question");

    const auto sentences = sentences_of(q);
    std::string sentence = sentences.back();
    for (const auto& s : sentences) {
        if (find_blank(s) || first_wh(s)) {
            sentence = s;
            break;
        }
    }

    if (const auto blank = find_blank(sentence)) {
        return finish(replace_span(sentence, *blank, c), "lookup:blank");
    }

    sentence = strip_terminal(sentence);
    if (const auto wh = first_wh(sentence)) {
        if (const auto phrase = phrase_at(sentence, wh->begin, kWhPhrases)) {
            return finish(replace_span(sentence, *phrase, c), "lookup:wh-phrase");
        }
        if (const auto qty = phrase_at(sentence, wh->begin, kQuantityPhrases)) {
            return finish(replace_span(sentence, *qty, c), "lookup:quantity");
        }
        if (wh->begin == 0) {
            // "how do froglets breathe" -> "froglets breathe <choice>"
            const std::string rest = text::trim(std::string_view(sentence).substr(wh->end));
            const std::size_t sp = rest.find(' ');
            const std::string aux = rest.substr(0, sp);
            if (sp != std::string::npos &&
                std::find(kDoAux.begin(), kDoAux.end(), aux) != kDoAux.end()) {
                return finish(rest.substr(sp + 1) + " " + c, "lookup:wh-do");
            }
        }
        return finish(replace_span(sentence, *wh, c), "lookup:wh");
    }

    if (!text::find_phrase(sentence, c).empty()) return finish(sentence, "lookup:contains");
    return finish(sentence + " " + c, "lookup:append");
}

namespace {

constexpr std::array<std::string_view, 8> kNegations = {
    "cannot", "can't", "can not", "does not", "doesn't", "do not", "don't", "not"};
constexpr std::array<std::string_view, 3> kDeterminers = {"a", "an", "the"};

struct NegationHit {
    text::Span span;
    bool do_support = false;  // "does not" etc., which keeps the following verb
};

std::optional<NegationHit> negation_after(std::string_view q, std::size_t from) {
    std::optional<NegationHit> best;
    for (auto neg : kNegations) {
        for (const auto& span : text::find_phrase(q, neg)) {
            if (span.begin < from) continue;
            if (!best || span.begin < best->span.begin ||
                (span.begin == best->span.begin && span.size() > best->span.size())) {
                best = NegationHit{span, neg.find("do") != std::string_view::npos};
            }
            break;
        }
    }
    return best;
}

std::size_t with_determiner(std::string_view q, std::size_t begin) {
    for (auto det : kDeterminers) {
        const std::size_t len = det.size() + 1;
        if (begin >= len && q.substr(begin - len, len) == std::string(det) + " " &&
            (begin == len || q[begin - len - 1] == ' ')) {
            return begin - len;
        }
    }
    return begin;
}

// Frames cut from the question, e.g. "adult newt able to" / "a tadpole cannot".
std::optional<std::pair<std::string, std::string>> question_frames(std::string_view q,
                                                                   const form::Difference& f) {
    const auto denied = text::find_phrase(q, f.stage1, true);
    const auto affirmed = text::find_phrase(q, f.stage2, true);
    if (denied.empty() || affirmed.empty()) return std::nullopt;

    const text::Span s1 = denied.front();
    const auto neg = negation_after(q, s1.end);
    if (!neg) return std::nullopt;
    std::size_t neg_end = neg->span.end;
    if (neg->do_support) {
        // keep the verb: "does not have"
        std::size_t e = neg_end + 1;
        while (e < q.size() && text::is_word_char(q[e])) ++e;
        if (neg_end < q.size() && e > neg_end + 1) neg_end = e;
    }
    std::string h2(q.substr(with_determiner(q, s1.begin), neg_end - with_determiner(q, s1.begin)));

    const text::Span s2 = affirmed.front();
    if (s2.overlaps(s1)) return std::nullopt;
    std::size_t end = q.size();
    const auto able = text::find_phrase(q.substr(s2.end), "able to");
    if (!able.empty()) {
        end = s2.end + able.front().end;
    } else {
        for (auto stop : {std::string_view("that")}) {
            const auto hits = text::find_phrase(q.substr(s2.end), stop);
            if (!hits.empty()) end = std::min(end, s2.end + hits.front().begin);
        }
        for (auto w : kWhWords) {
            const auto hits = text::find_phrase(q.substr(s2.end), w);
            if (!hits.empty()) end = std::min(end, s2.end + hits.front().begin);
        }
        if (end == q.size() || end > s1.begin) return std::nullopt;
    }
    std::string h1 = text::trim(q.substr(s2.begin, end - s2.begin));
    if (h1.empty() || h2.empty()) return std::nullopt;
    return std::make_pair(std::move(h1), text::trim(h2));
}

std::string negate_predicate(const std::string& c) {
    struct Rule {
        std::string_view prefix, replacement;
    };
    static constexpr std::array<Rule, 6> rules = {{
        {"can ", "cannot "},
        {"has ", "does not have "},
        {"have ", "does not have "},
        {"is ", "is not "},
        {"are ", "are not "},
        {"will ", "will not "},
    }};
    for (const auto& r : rules) {
        if (text::starts_with(c, r.prefix)) {
            return std::string(r.replacement) + c.substr(r.prefix.size());
        }
    }
    return "does not " + c;
}

}  // namespace

std::pair<Hypothesis, Hypothesis> generate_difference(std::string_view question,
                                                      std::string_view choice,
                                                      const form::Difference& form) {
    const std::string c = clean(choice);
    if (c.empty()) throw Error(ErrorKind::Generation, "generate_difference: empty choice");
    const form::Difference f{text::normalize(form.organism), text::normalize(form.stage1),
                             text::normalize(form.stage2)};
    if (f.stage1.empty() || f.stage2.empty()) {
        throw Error(ErrorKind::Generation, "generate_difference: form needs two stages");
    }

    const std::string q = strip_terminal(text::normalize(question));
    if (const auto frames = question_frames(q, f)) {
        return {finish(frames->first + " " + c, "difference:h1:question-frame"),
                finish(frames->second + " " + c, "difference:h2:question-frame")};
    }
    const std::string affirmed = "the " + f.stage2 + " " + f.organism + " ";
    const std::string denied = "the " + f.stage1 + " " + f.organism + " ";
    return {finish(affirmed + c, "difference:h1:template"),
            finish(denied + negate_predicate(c), "difference:h2:template")};
}

Hypothesis generate_indicator(std::string_view stage, std::string_view choice) {
    const std::string s = text::normalize(stage);
    std::string c = clean(choice);
    if (s.empty() || c.empty()) {
        throw Error(ErrorKind::Generation, "generate_indicator: empty stage or choice");
    }
    if (text::starts_with(c, "when ") && c.size() > 5) c = c.substr(5);
    return Hypothesis{"in the " + s + " stage, " + c, "indicator:template"};
}

}  // namespace seqreason
