#include <algorithm>
#include <limits>
#include <map>
#include <random>

#include "seqreason/errors.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/question.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

namespace {

// Shares as integer ratios. Text: 70/10/20 of texts (29/4/8 of 41).
// Question: 4011/579/1221 of 5811.
struct Ratio {
    std::size_t dev, test, total;
};

constexpr Ratio ratio_for(SplitMode mode) noexcept {
    return mode == SplitMode::Text ? Ratio{10, 20, 100} : Ratio{579, 1221, 5811};
}

// Uniform draw in [0, bound) by rejection; mt19937_64 output is fixed by the
// standard, so the permutation is reproducible across standard libraries.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t bound) {
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x = 0;
    do {
        x = rng();
    } while (x >= limit);
    return x % bound;
}

template <class T>
void shuffle(std::vector<T>& items, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        const std::size_t j = bounded(rng, i);
        std::swap(items[i - 1], items[j]);
    }
}

}  // namespace

SplitSizes split_sizes(std::size_t n, SplitMode mode) noexcept {
    const Ratio r = ratio_for(mode);
    SplitSizes s;
    s.dev = n * r.dev / r.total;
    s.test = n * r.test / r.total;
    s.train = n - s.dev - s.test;
    return s;
}

std::optional<std::string> record_organism(const QuestionRecord& r, const LifecycleKB& kb) {
    if (r.gold_form) return organism_of(*r.gold_form);
    if (auto m = first_organism_in(text::normalize(r.question), kb)) return m->organism;
    return std::nullopt;
}

std::array<std::vector<std::string>, 3> split_organisms(const LifecycleKB& kb,
                                                        std::uint64_t seed) {
    std::vector<std::string> orgs = kb.organisms();
    shuffle(orgs, seed);
    const SplitSizes sizes = split_sizes(orgs.size(), SplitMode::Text);
    std::array<std::vector<std::string>, 3> buckets;
    const auto train_end = orgs.begin() + static_cast<std::ptrdiff_t>(sizes.train);
    const auto dev_end = train_end + static_cast<std::ptrdiff_t>(sizes.dev);
    buckets[0].assign(orgs.begin(), train_end);
    buckets[1].assign(train_end, dev_end);
    buckets[2].assign(dev_end, orgs.end());
    return buckets;
}

DatasetSplit split_dataset(const std::vector<QuestionRecord>& records, const LifecycleKB& kb,
                           SplitMode mode, std::uint64_t seed) {
    DatasetSplit out;
    if (mode == SplitMode::Text) {
        const auto buckets = split_organisms(kb, seed);
        std::map<std::string, int> bucket_of;
        for (int b = 0; b < 3; ++b) {
            for (const auto& org : buckets[b]) bucket_of[org] = b;
        }
        for (const auto& r : records) {
            const auto org = record_organism(r, kb);
            const auto it = org ? bucket_of.find(*org) : bucket_of.end();
            if (it == bucket_of.end()) {
                throw Error(ErrorKind::Split,
                            "question '" + r.id + "': organism " +
                                (org ? "'" + *org + "' is not in the knowledge base"
                                     : "could not be resolved"));
            }
            (it->second == 0 ? out.train : it->second == 1 ? out.dev : out.test).push_back(r);
        }
        return out;
    }

    std::vector<std::size_t> order(records.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    shuffle(order, seed);
    const SplitSizes sizes = split_sizes(records.size(), SplitMode::Question);
    for (std::size_t k = 0; k < order.size(); ++k) {
        const QuestionRecord& r = records[order[k]];
        if (k < sizes.train) {
            out.train.push_back(r);
        } else if (k < sizes.train + sizes.dev) {
            out.dev.push_back(r);
        } else {
            out.test.push_back(r);
        }
    }
    return out;
}

}  // namespace seqreason
