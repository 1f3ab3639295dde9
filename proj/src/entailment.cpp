#include "seqreason/entailment.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "seqreason/errors.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/resources.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

std::string_view to_string(ScorerKind k) noexcept {
    switch (k) {
        case ScorerKind::LS1: return "ls1";
        case ScorerKind::LS2: return "ls2";
        case ScorerKind::LS3: return "ls3";
        case ScorerKind::Remote: return "remote";
    }
    return "?";
}

std::optional<ScorerKind> scorer_from_string(std::string_view s) noexcept {
    for (auto k : {ScorerKind::LS1, ScorerKind::LS2, ScorerKind::LS3, ScorerKind::Remote}) {
        if (to_string(k) == s) return k;
    }
    return std::nullopt;
}

std::string stem(std::string_view word) {
    std::string w(word);
    if (w.size() > 4 && text::ends_with(w, "ies")) {
        w.replace(w.size() - 3, 3, "y");
    } else if (text::ends_with(w, "sses")) {
        w.resize(w.size() - 2);
    } else if (w.size() > 3 && text::ends_with(w, "s") && !text::ends_with(w, "ss")) {
        w.pop_back();
    }
    if (w.size() > 5 && text::ends_with(w, "ing")) {
        w.resize(w.size() - 3);
    } else if (w.size() > 4 && text::ends_with(w, "ed")) {
        w.resize(w.size() - 2);
    }
    if (w.size() > 4 && w.back() == 'e') w.pop_back();
    return w;
}

namespace {

bool is_terminator(char c) { return c == '.' || c == '!' || c == '?'; }

// "tadpole with legs - In this stage ..." -> length of the header part, or 0.
std::size_t header_length(std::string_view line) {
    const std::size_t dash = line.find(" - ");
    if (dash == std::string_view::npos) return 0;
    const std::string head = text::trim(line.substr(0, dash));
    if (head.empty()) return 0;
    if (std::any_of(head.begin(), head.end(), [](char c) { return is_terminator(c); })) return 0;
    if (std::count(head.begin(), head.end(), ' ') > 5) return 0;
    return dash;
}

std::string collapse(std::string_view s) {
    std::string out;
    bool space = false;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            space = !out.empty();
            continue;
        }
        if (space) out.push_back(' ');
        space = false;
        out.push_back(c);
    }
    return out;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text_in) {
    std::vector<std::string> out;
    std::string buffer;
    auto flush = [&] {
        std::string s = collapse(buffer);
        if (!s.empty()) out.push_back(std::move(s));
        buffer.clear();
    };

    for (const std::string& raw_line : text::split(text_in, '\n')) {
        std::string_view line = raw_line;
        if (text::trim(line).empty()) {
            flush();
            continue;
        }
        if (const std::size_t head = header_length(text::trim(line))) {
            flush();
            const std::string trimmed = text::trim(line);
            buffer = trimmed.substr(0, head);
            flush();
            buffer = trimmed.substr(head + 3);
        } else {
            if (!buffer.empty()) buffer.push_back(' ');
            buffer += line;
        }

        // Cut complete sentences off the front of the buffer.
        std::size_t start = 0;
        for (std::size_t i = 0; i < buffer.size(); ++i) {
            if (is_terminator(buffer[i]) &&
                (i + 1 == buffer.size() || buffer[i + 1] == ' ' || buffer[i + 1] == '\t')) {
                std::string s = collapse(std::string_view(buffer).substr(start, i + 1 - start));
                if (!s.empty() && !std::all_of(s.begin(), s.end(), is_terminator)) {
                    out.push_back(std::move(s));
                }
                start = i + 1;
            }
        }
        buffer.erase(0, start);
    }
    flush();
    return out;
}

namespace {

std::vector<std::string> word_list(std::string_view data) {
    std::vector<std::string> words;
    for (const auto& line : text::split(data, '\n')) {
        const std::string w = text::normalize(line);
        if (!w.empty() && w.front() != '#') words.push_back(w);
    }
    return words;
}

}  // namespace

LexicalResource LexicalResource::build(const std::vector<std::string>& corpus) {
    return build(corpus, resources::kStopwords, resources::kSynonyms);
}

LexicalResource LexicalResource::build(const std::vector<std::string>& corpus,
                                       std::string_view stopwords, std::string_view synonyms) {
    LexicalResource res;
    for (auto& w : word_list(stopwords)) res.stopwords_.insert(std::move(w));

    int set_id = 0;
    for (const auto& line : word_list(synonyms)) {
        for (const auto& raw : text::split(line, ',')) {
            const std::string w = text::normalize(raw);
            if (!w.empty()) res.synsets_[w].push_back(set_id);
        }
        ++set_id;
    }

    res.corpus_size_ = corpus.size();
    for (const auto& sentence : corpus) {
        auto tokens = res.tokenize(sentence);
        std::sort(tokens.begin(), tokens.end());
        tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
        for (auto& t : tokens) ++res.doc_freq_[t];
    }
    return res;
}

LexicalResource LexicalResource::from_kb(const LifecycleKB& kb) {
    std::vector<std::string> corpus;
    for (const auto& org : kb.organisms()) {
        for (auto& s : split_sentences(kb.description_of(org))) corpus.push_back(std::move(s));
    }
    return build(corpus);
}

std::vector<std::string> LexicalResource::tokenize(std::string_view sentence) const {
    std::vector<std::string> tokens;
    std::string current;
    auto push = [&] {
        if (!current.empty() && !stopwords_.count(current)) tokens.push_back(current);
        current.clear();
    };
    for (char c : sentence) {
        if (text::is_word_char(c)) {
            current.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
        } else {
            push();
        }
    }
    push();
    return tokens;
}

double LexicalResource::idf(const std::string& word) const {
    const auto it = doc_freq_.find(word);
    const double df = it == doc_freq_.end() ? 0.0 : static_cast<double>(it->second);
    return std::log((1.0 + static_cast<double>(corpus_size_)) / (1.0 + df)) + 1.0;
}

bool LexicalResource::same_synset(const std::string& a, const std::string& b) const {
    const auto ia = synsets_.find(a);
    const auto ib = synsets_.find(b);
    if (ia == synsets_.end() || ib == synsets_.end()) return false;
    for (int x : ia->second) {
        if (std::find(ib->second.begin(), ib->second.end(), x) != ib->second.end()) return true;
    }
    return false;
}

double LexicalResource::lexical_similarity(const std::string& a, const std::string& b) const {
    if (a == b) return 1.0;
    if (same_synset(a, b)) return 0.9;
    if (stem(a) == stem(b)) return 0.6;
    return 0.0;
}

double LexicalResource::synonym_similarity(const std::string& a, const std::string& b) const {
    return a == b || same_synset(a, b) ? 1.0 : 0.0;
}

double entail(std::string_view premise, std::string_view hypothesis, ScorerKind kind,
              const LexicalResource& res) {
    if (kind == ScorerKind::Remote) {
        throw Error(ErrorKind::Config, "remote scoring needs a RemoteScorer");
    }
    const auto h = res.tokenize(hypothesis);
    if (h.empty()) return 0.0;
    const auto p = res.tokenize(premise);

    const bool weighted = kind != ScorerKind::LS1;
    double num = 0.0;
    double den = 0.0;
    for (const auto& w : h) {
        const double weight = weighted ? res.idf(w) : 1.0;
        double best = 0.0;
        for (const auto& u : p) {
            const double sim = kind == ScorerKind::LS2 ? res.synonym_similarity(w, u)
                                                       : res.lexical_similarity(w, u);
            best = std::max(best, sim);
            if (best == 1.0) break;
        }
        num += weight * best;
        den += weight;
    }
    return std::clamp(num / den, 0.0, 1.0);
}

LexicalScorer::LexicalScorer(ScorerKind kind, std::shared_ptr<const LexicalResource> resource)
    : kind_(kind), resource_(std::move(resource)) {
    if (kind == ScorerKind::Remote) {
        throw Error(ErrorKind::Config, "LexicalScorer cannot be remote");
    }
    if (!resource_) throw Error(ErrorKind::Config, "LexicalScorer needs a lexical resource");
}

double LexicalScorer::entail(std::string_view premise, std::string_view hypothesis) const {
    return seqreason::entail(premise, hypothesis, kind_, *resource_);
}

double validate(std::string_view text, std::string_view hypothesis,
                const EntailmentScorer& scorer) {
    double best = 0.0;
    for (const auto& sentence : split_sentences(text)) {
        best = std::max(best, scorer.entail(sentence, hypothesis));
        if (best >= 1.0) break;
    }
    return best;
}

}  // namespace seqreason
