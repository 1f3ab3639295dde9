#include "seqreason/text.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>

#include "seqreason/errors.hpp"

namespace seqreason {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::Parse: return "parse error";
        case ErrorKind::Integrity: return "integrity error";
        case ErrorKind::Lookup: return "lookup error";
        case ErrorKind::Generation: return "generation error";
        case ErrorKind::Form: return "form error";
        case ErrorKind::Split: return "split error";
        case ErrorKind::Config: return "config error";
        case ErrorKind::Io: return "i/o error";
        case ErrorKind::Transport: return "transport error";
    }
    return "error";
}

}  // namespace seqreason

namespace seqreason::text {

namespace {

bool is_space(char c) noexcept {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::string to_lower(std::string_view s) {
    std::string out(s);
    for (char& c : out) {
        c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && is_space(s[b])) ++b;
    while (e > b && is_space(s[e - 1])) --e;
    return std::string(s.substr(b, e - b));
}

std::string normalize(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    bool pending_space = false;
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        // Typographic quotes (U+2018, U+2019, U+201C, U+201D) fold to ASCII.
        if (c == '\xE2' && i + 2 < s.size() && s[i + 1] == '\x80') {
            const char t = s[i + 2];
            if (t == '\x98' || t == '\x99' || t == '\x9C' || t == '\x9D') {
                c = (t == '\x98' || t == '\x99') ? '\'' : '"';
                i += 2;
            }
        }
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out.push_back(' ');
            pending_space = false;
        }
        out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    }
    return out;
}

bool is_word_char(char c) noexcept {
    const auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || u >= 0x80;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::vector<Span> find_phrase(std::string_view haystack, std::string_view phrase,
                              bool allow_plural) {
    std::vector<Span> found;
    if (phrase.empty()) return found;
    std::size_t pos = haystack.find(phrase);
    while (pos != std::string_view::npos) {
        const bool left_ok = pos == 0 || !is_word_char(haystack[pos - 1]);
        std::size_t end = pos + phrase.size();
        bool right_ok = end == haystack.size() || !is_word_char(haystack[end]);
        if (!right_ok && allow_plural) {
            for (std::string_view suffix : {"es", "s"}) {
                const std::size_t e2 = end + suffix.size();
                if (haystack.substr(end, suffix.size()) == suffix &&
                    (e2 == haystack.size() || !is_word_char(haystack[e2]))) {
                    end = e2;
                    right_ok = true;
                    break;
                }
            }
        }
        if (left_ok && right_ok) found.push_back({pos, end});
        pos = haystack.find(phrase, pos + 1);
    }
    return found;
}

std::vector<Span> find_prefix(std::string_view haystack, std::string_view phrase) {
    std::vector<Span> found;
    if (phrase.empty()) return found;
    std::size_t pos = haystack.find(phrase);
    while (pos != std::string_view::npos) {
        if (pos == 0 || !is_word_char(haystack[pos - 1])) {
            found.push_back({pos, pos + phrase.size()});
        }
        pos = haystack.find(phrase, pos + 1);
    }
    return found;
}

std::vector<Mention> find_mentions(std::string_view haystack,
                                   const std::vector<std::string>& vocabulary,
                                   bool allow_plural, const std::vector<Span>& excluded) {
    std::vector<Mention> candidates;
    for (std::size_t i = 0; i < vocabulary.size(); ++i) {
        for (const Span& span : find_phrase(haystack, vocabulary[i], allow_plural)) {
            candidates.push_back({i, span});
        }
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [&](const Mention& a, const Mention& b) {
                         const auto la = vocabulary[a.index].size();
                         const auto lb = vocabulary[b.index].size();
                         if (la != lb) return la > lb;
                         return a.span.begin < b.span.begin;
                     });
    std::vector<Mention> accepted;
    for (const Mention& m : candidates) {
        const auto clashes = [&](const Span& s) { return s.overlaps(m.span); };
        if (std::any_of(excluded.begin(), excluded.end(), clashes)) continue;
        if (std::any_of(accepted.begin(), accepted.end(),
                        [&](const Mention& a) { return clashes(a.span); })) {
            continue;
        }
        accepted.push_back(m);
    }
    std::sort(accepted.begin(), accepted.end(), [](const Mention& a, const Mention& b) {
        return a.span.begin < b.span.begin;
    });
    return accepted;
}

bool ends_with(std::string_view s, std::string_view suffix) noexcept {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool starts_with(std::string_view s, std::string_view prefix) noexcept {
    return s.substr(0, prefix.size()) == prefix;
}

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", value);
    return buf;
}

}  // namespace seqreason::text
