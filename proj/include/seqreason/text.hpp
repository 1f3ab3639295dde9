#pragma once

// String helpers shared by the loaders, the parser and the reasoner.
// All matching functions expect text already passed through normalize().

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqreason::text {

std::string to_lower(std::string_view s);

std::string trim(std::string_view s);

// Lowercase, trim and collapse internal whitespace runs to one space.
std::string normalize(std::string_view s);

bool is_word_char(char c) noexcept;

std::vector<std::string> split(std::string_view s, char sep);

struct Span {
    std::size_t begin = 0;
    std::size_t end = 0;  // one past the last byte

    std::size_t size() const noexcept { return end - begin; }
    bool overlaps(const Span& other) const noexcept {
        return begin < other.end && other.begin < end;
    }
};

// Whole-word occurrences of `phrase` in `haystack`. With `allow_plural`,
// a trailing "s" or "es" directly after the phrase still counts as a match.
std::vector<Span> find_phrase(std::string_view haystack, std::string_view phrase,
                              bool allow_plural = false);

// Occurrences that start on a word boundary but may run into a longer word
// ("frog" is found in "froglets").
std::vector<Span> find_prefix(std::string_view haystack, std::string_view phrase);

// Longest-match-first placement of a vocabulary over `haystack`: longer
// entries claim their spans first, shorter ones only fill the gaps. Returns
// (vocabulary index, span) pairs in textual order.
struct Mention {
    std::size_t index = 0;
    Span span;
};
std::vector<Mention> find_mentions(std::string_view haystack,
                                   const std::vector<std::string>& vocabulary,
                                   bool allow_plural = false,
                                   const std::vector<Span>& excluded = {});

bool ends_with(std::string_view s, std::string_view suffix) noexcept;
bool starts_with(std::string_view s, std::string_view prefix) noexcept;

// "%.6f"
std::string fixed6(double value);

}  // namespace seqreason::text
