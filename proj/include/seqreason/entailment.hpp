#pragma once

// Sentence-level textual entailment. The lexical scorers measure how much of
// the hypothesis is covered by the premise:
//
//   score = sum_{w in H} weight(w) * max_{u in P} sim(w, u) / sum_{w in H} weight(w)
//
//   LS1: weight = 1,   sim = lexical similarity (identity / synonym / stem)
//   LS2: weight = idf, sim = 1 for identical or synonymous words, else 0
//   LS3: weight = idf, sim = lexical similarity
//
// validate() scores a hypothesis against a whole text as the best score over
// its sentences.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace seqreason {

class LifecycleKB;

enum class ScorerKind : std::uint8_t { LS1, LS2, LS3, Remote };

std::string_view to_string(ScorerKind k) noexcept;
std::optional<ScorerKind> scorer_from_string(std::string_view s) noexcept;

/// Suffix-stripping stemmer ("breathes", "breathing" -> "breath").
std::string stem(std::string_view word);

std::vector<std::string> split_sentences(std::string_view text);

class LexicalResource {
public:
    /// Shipped stopword and synonym lists; idf over `corpus` sentences.
    static LexicalResource build(const std::vector<std::string>& corpus);
    static LexicalResource build(const std::vector<std::string>& corpus,
                                 std::string_view stopwords, std::string_view synonyms);
    /// idf over every sentence of every description in the KB.
    static LexicalResource from_kb(const LifecycleKB& kb);

    std::vector<std::string> tokenize(std::string_view sentence) const;

    /// ln((1 + N) / (1 + df(w))) + 1 over the N corpus sentences.
    double idf(const std::string& word) const;
    /// 1.0 identical, 0.9 same synonym set, 0.6 same stem, else 0.
    double lexical_similarity(const std::string& a, const std::string& b) const;
    /// 1.0 identical or same synonym set, else 0.
    double synonym_similarity(const std::string& a, const std::string& b) const;

    bool is_stopword(const std::string& w) const { return stopwords_.count(w) != 0; }
    std::size_t corpus_size() const noexcept { return corpus_size_; }

private:
    LexicalResource() = default;

    bool same_synset(const std::string& a, const std::string& b) const;

    std::unordered_set<std::string> stopwords_;
    std::unordered_map<std::string, std::vector<int>> synsets_;
    std::unordered_map<std::string, std::size_t> doc_freq_;
    std::size_t corpus_size_ = 0;
};

class EntailmentScorer {
public:
    virtual ~EntailmentScorer() = default;
    /// Score in [0, 1] that `premise` supports `hypothesis`.
    virtual double entail(std::string_view premise, std::string_view hypothesis) const = 0;
    virtual ScorerKind kind() const noexcept = 0;
};

/// Local scorers (LS1, LS2, LS3). Pure over an immutable resource.
double entail(std::string_view premise, std::string_view hypothesis, ScorerKind kind,
              const LexicalResource& res);

class LexicalScorer final : public EntailmentScorer {
public:
    LexicalScorer(ScorerKind kind, std::shared_ptr<const LexicalResource> resource);

    double entail(std::string_view premise, std::string_view hypothesis) const override;
    ScorerKind kind() const noexcept override { return kind_; }
    const LexicalResource& resource() const noexcept { return *resource_; }

private:
    ScorerKind kind_;
    std::shared_ptr<const LexicalResource> resource_;
};

/// max over split_sentences(text) of scorer.entail(sentence, hypothesis); 0 for empty text.
double validate(std::string_view text, std::string_view hypothesis, const EntailmentScorer& scorer);

}  // namespace seqreason
