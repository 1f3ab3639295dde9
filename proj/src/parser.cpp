#include "seqreason/parser.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "seqreason/kb.hpp"
#include "seqreason/resources.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

using json = nlohmann::ordered_json;

namespace {

constexpr std::string_view kOrdinalToken = "<ordinal>";

std::vector<std::string> fragments_of(std::string_view pattern) {
    std::vector<std::string> out;
    std::string p(pattern);
    // Accept the single-character ellipsis too.
    for (std::size_t pos = p.find("\xE2\x80\xA6"); pos != std::string::npos;
         pos = p.find("\xE2\x80\xA6")) {
        p.replace(pos, 3, "...");
    }
    std::size_t start = 0;
    while (true) {
        const std::size_t dots = p.find("...", start);
        std::string frag = text::normalize(p.substr(start, dots == std::string::npos ? dots : dots - start));
        if (!frag.empty()) out.push_back(std::move(frag));
        if (dots == std::string::npos) break;
        start = dots + 3;
    }
    return out;
}

// End offset of the earliest match of `fragment` at or after `from`.
std::optional<std::size_t> match_fragment(std::string_view q, const std::string& fragment,
                                          std::size_t from, const ParserConfig& cfg) {
    const std::size_t tok = fragment.find(kOrdinalToken);
    if (tok == std::string::npos) {
        const std::size_t pos = q.find(fragment, from);
        if (pos == std::string_view::npos) return std::nullopt;
        return pos + fragment.size();
    }
    std::optional<std::size_t> best_begin, best_end;
    for (const auto& [word, pos] : cfg.ordinal_lexicon) {
        std::string concrete = fragment;
        concrete.replace(tok, kOrdinalToken.size(), word);
        for (const auto& span : text::find_phrase(q.substr(from), concrete)) {
            if (!best_begin || span.begin < *best_begin) {
                best_begin = span.begin;
                best_end = from + span.end;
            }
            break;
        }
    }
    return best_end;
}

bool pattern_fires(std::string_view q, std::string_view pattern, const ParserConfig& cfg) {
    const auto frags = fragments_of(pattern);
    if (frags.empty()) return false;
    std::size_t from = 0;
    for (const auto& f : frags) {
        const auto end = match_fragment(q, f, from, cfg);
        if (!end) return false;
        from = *end;
    }
    return true;
}

std::optional<Position> position_from_json(const json& v) {
    if (v.is_number_unsigned() || v.is_number_integer()) {
        const auto n = v.get<long long>();
        if (n >= 1) return Position::index(static_cast<std::size_t>(n));
        return std::nullopt;
    }
    if (v.is_string()) {
        const std::string s = text::normalize(v.get<std::string>());
        if (s == "middle") return Position::middle();
        if (s == "last") return Position::last();
    }
    return std::nullopt;
}

constexpr std::string_view kNegationCues[] = {"cannot", "can't", "can not", "does not",
                                              "doesn't", "do not", "don't", "not"};

std::optional<std::size_t> first_negation(std::string_view q) {
    std::optional<std::size_t> best;
    for (auto cue : kNegationCues) {
        const auto spans = text::find_phrase(q, cue);
        if (!spans.empty() && (!best || spans.front().begin < *best)) best = spans.front().begin;
    }
    return best;
}

}  // namespace

void ParserConfig::validate() const {
    std::set<Category> seen;
    for (const auto& [cat, patterns] : type_patterns) {
        if (!patterns.empty()) seen.insert(cat);
    }
    for (Category c : kAllCategories) {
        if (!seen.count(c)) {
            throw Error(ErrorKind::Config, "parser config has no trigger pattern for " +
                                               std::string(category_name(c)));
        }
    }
}

ParserConfig parse_parser_config(std::string_view json_text) {
    ParserConfig cfg;
    try {
        const json doc = json::parse(json_text);
        for (const auto& entry : doc.at("type_patterns")) {
            const auto name = entry.at("category").get<std::string>();
            const auto cat = category_from_name(name);
            if (!cat) throw Error(ErrorKind::Config, "unknown category '" + name + "'");
            cfg.type_patterns.emplace_back(*cat,
                                           entry.at("patterns").get<std::vector<std::string>>());
        }
        if (doc.contains("ordinal_lexicon")) {
            for (const auto& [word, value] : doc["ordinal_lexicon"].items()) {
                const auto pos = position_from_json(value);
                if (!pos) {
                    throw Error(ErrorKind::Config, "bad ordinal lexicon entry for '" + word + "'");
                }
                cfg.ordinal_lexicon.emplace(text::normalize(word), *pos);
            }
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Config, std::string("parser config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

ParserConfig load_parser_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open parser config '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_parser_config(ss.str());
}

ParserConfig default_parser_config() {
    static const ParserConfig cfg = parse_parser_config(resources::kParserConfig);
    return cfg;
}

std::string parser_config_to_json(const ParserConfig& cfg) {
    json doc;
    doc["type_patterns"] = json::array();
    for (const auto& [cat, patterns] : cfg.type_patterns) {
        doc["type_patterns"].push_back(
            {{"category", std::string(category_name(cat))}, {"patterns", patterns}});
    }
    json lex = json::object();
    for (const auto& [word, pos] : cfg.ordinal_lexicon) {
        if (pos.kind() == Position::Kind::Index) {
            lex[word] = pos.value();
        } else {
            lex[word] = to_string(pos);
        }
    }
    doc["ordinal_lexicon"] = lex;
    return doc.dump(2);
}

Category classify_type(std::string_view question, const ParserConfig& cfg) {
    const std::string q = text::normalize(question);
    for (const auto& [cat, patterns] : cfg.type_patterns) {
        for (const auto& p : patterns) {
            if (pattern_fires(q, p, cfg)) return cat;
        }
    }
    return Category::Lookup;
}

LogicalForm extract_attributes(std::string_view question, Category category,
                               const LifecycleKB& kb, const ParserConfig& cfg) {
    const std::string q = text::normalize(question);
    PartialForm partial;
    partial.category = category;
    auto fail = [&](const std::string& what) -> ParseFailure {
        return ParseFailure(std::string(template_name(category)) + ": " + what + " in '" +
                                std::string(question) + "'",
                            partial);
    };

    const auto org = first_organism_in(q, kb);
    if (!org) throw fail("no organism name found");
    partial.organism = org->organism;
    const std::string& organism = org->organism;

    // Stage mentions in textual order, one per distinct stage.
    const auto& vocab = kb.stages_of(organism);
    std::vector<text::Mention> mentions;
    {
        std::set<std::size_t> seen;
        for (const auto& m : text::find_mentions(q, vocab, true, {org->span})) {
            if (seen.insert(m.index).second) mentions.push_back(m);
        }
    }
    for (const auto& m : mentions) partial.stages.push_back(vocab[m.index]);

    {
        std::optional<text::Span> best;
        for (const auto& [word, pos] : cfg.ordinal_lexicon) {
            const auto spans = text::find_phrase(q, word);
            if (spans.empty()) continue;
            const auto& s = spans.front();
            if (!best || s.begin < best->begin ||
                (s.begin == best->begin && s.size() > best->size())) {
                best = s;
                partial.position = pos;
            }
        }
    }

    auto need_stages = [&](std::size_t n) {
        if (partial.stages.size() < n) {
            throw fail("expected " + std::to_string(n) + " stage name(s) of '" + organism +
                       "', found " + std::to_string(partial.stages.size()));
        }
    };

    switch (category) {
        case Category::Lookup: return form::Lookup{organism};
        case Category::CorrectlyOrdered: return form::CorrectlyOrdered{organism};
        case Category::CountStages: return form::CountStages{organism};
        case Category::IsAStageOf: return form::IsAStageOf{organism};
        case Category::IsNotAStageOf: return form::IsNotAStageOf{organism};
        case Category::Indicator: need_stages(1); return form::Indicator{organism, partial.stages[0]};
        case Category::NextStage: need_stages(1); return form::NextStage{organism, partial.stages[0]};
        case Category::StageBefore:
            need_stages(1);
            return form::StageBefore{organism, partial.stages[0]};
        case Category::StageBetween:
            need_stages(2);
            return form::StageBetween{organism, partial.stages[0], partial.stages[1]};
        case Category::StageAt:
            if (!partial.position) throw fail("no position word found");
            return form::StageAt{organism, *partial.position};
        case Category::Difference: {
            need_stages(2);
            // The stage next to the negation cue is the one lacking the property.
            std::size_t denied = 0;
            if (const auto cue = first_negation(q)) {
                std::optional<std::size_t> before, after;
                for (std::size_t i = 0; i < mentions.size(); ++i) {
                    if (mentions[i].span.begin < *cue) {
                        before = i;
                    } else if (!after) {
                        after = i;
                    }
                }
                denied = before ? *before : after.value_or(0);
            }
            const std::size_t affirmed = denied == 0 ? 1 : 0;
            return form::Difference{organism, partial.stages[denied], partial.stages[affirmed]};
        }
    }
    throw fail("unhandled category");
}

LogicalForm parse_question(std::string_view question, const LifecycleKB& kb,
                           const ParserConfig& cfg) {
    return extract_attributes(question, classify_type(question, cfg), kb, cfg);
}

}  // namespace seqreason
