#include <doctest.h>

#include <algorithm>
#include <set>

#include "seqreason/errors.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/question.hpp"

using namespace seqreason;

namespace {

LifecycleKB synthetic_kb(std::size_t organisms) {
    KbBuilder b;
    for (std::size_t i = 0; i < organisms; ++i) {
        const std::string o = "organism " + std::to_string(i);
        b.add_stage("src", o, 1, "egg");
        b.add_stage("src", o, 2, "adult");
        b.add_description("src", o, "text.");
    }
    return b.build();
}

std::vector<QuestionRecord> synthetic_questions(std::size_t n, std::size_t organisms) {
    std::vector<QuestionRecord> out;
    for (std::size_t i = 0; i < n; ++i) {
        QuestionRecord r;
        r.id = "q" + std::to_string(i);
        r.question = "question";
        r.options = {{"a", "egg"}, {"b", "adult"}};
        r.gold_form = form::CountStages{"organism " + std::to_string(i % std::max<std::size_t>(organisms, 1))};
        r.gold_answer = "a";
        out.push_back(r);
    }
    return out;
}

std::vector<std::string> ids(const std::vector<QuestionRecord>& v) {
    std::vector<std::string> out;
    for (const auto& r : v) out.push_back(r.id);
    return out;
}

}  // namespace

TEST_CASE("published split sizes") {
    CHECK(split_sizes(5811, SplitMode::Question) == SplitSizes{4011, 579, 1221});
    CHECK(split_sizes(41, SplitMode::Text) == SplitSizes{29, 4, 8});
    CHECK(split_sizes(0, SplitMode::Question) == SplitSizes{0, 0, 0});
}

TEST_CASE("split sizes follow floor arithmetic with train taking the remainder") {
    for (std::size_t n = 0; n <= 3000; ++n) {
        const auto q = split_sizes(n, SplitMode::Question);
        CHECK(q.dev == n * 579 / 5811);
        CHECK(q.test == n * 1221 / 5811);
        CHECK(q.train + q.dev + q.test == n);
        const auto t = split_sizes(n, SplitMode::Text);
        CHECK(t.dev == n / 10);
        CHECK(t.test == n / 5);
        CHECK(t.train + t.dev + t.test == n);
    }
}

TEST_CASE("question split is a seeded partition") {
    const auto kb = synthetic_kb(3);
    const auto records = synthetic_questions(5811, 3);
    const auto s = split_dataset(records, kb, SplitMode::Question, 17);
    CHECK(s.train.size() == 4011);
    CHECK(s.dev.size() == 579);
    CHECK(s.test.size() == 1221);

    std::vector<std::string> all;
    for (const auto* part : {&s.train, &s.dev, &s.test}) {
        for (const auto& id : ids(*part)) all.push_back(id);
    }
    std::sort(all.begin(), all.end());
    auto expected = ids(records);
    std::sort(expected.begin(), expected.end());
    CHECK(all == expected);

    const auto again = split_dataset(records, kb, SplitMode::Question, 17);
    CHECK(ids(again.test) == ids(s.test));
    const auto other = split_dataset(records, kb, SplitMode::Question, 18);
    CHECK(ids(other.test) != ids(s.test));
}

TEST_CASE("text split keeps each organism in one bucket") {
    const auto kb = synthetic_kb(41);
    const auto buckets = split_organisms(kb, 3);
    CHECK(buckets[0].size() == 29);
    CHECK(buckets[1].size() == 4);
    CHECK(buckets[2].size() == 8);

    const auto records = synthetic_questions(400, 41);
    const auto s = split_dataset(records, kb, SplitMode::Text, 3);
    CHECK(s.train.size() + s.dev.size() + s.test.size() == records.size());
    std::array<std::set<std::string>, 3> seen;
    const std::array<const std::vector<QuestionRecord>*, 3> parts{&s.train, &s.dev, &s.test};
    for (std::size_t i = 0; i < 3; ++i) {
        for (const auto& r : *parts[i]) {
            const std::string o = organism_of(*r.gold_form);
            seen[i].insert(o);
            CHECK(std::find(buckets[i].begin(), buckets[i].end(), o) != buckets[i].end());
        }
    }
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            for (const auto& o : seen[i]) CHECK(seen[j].count(o) == 0);
        }
    }
    CHECK(ids(split_dataset(records, kb, SplitMode::Text, 3).dev) == ids(s.dev));
}

TEST_CASE("empty input gives three empty buckets") {
    const auto kb = synthetic_kb(2);
    for (SplitMode m : {SplitMode::Question, SplitMode::Text}) {
        const auto s = split_dataset({}, kb, m, 1);
        CHECK(s.train.empty());
        CHECK(s.dev.empty());
        CHECK(s.test.empty());
    }
}

TEST_CASE("text split needs every organism in the KB") {
    const auto kb = synthetic_kb(2);
    auto records = synthetic_questions(3, 2);
    records[1].gold_form = form::CountStages{"unicorn"};
    try {
        split_dataset(records, kb, SplitMode::Text, 1);
        FAIL("expected a split error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Split);
        CHECK(std::string(e.what()).find("q1") != std::string::npos);
    }
}

TEST_CASE("record organism falls back to the question text") {
    const auto kb = synthetic_kb(2);
    QuestionRecord r;
    r.id = "x";
    r.question = "What eats organism 1 eggs?";
    CHECK(record_organism(r, kb) == "organism 1");
    r.question = "Nothing here";
    CHECK_FALSE(record_organism(r, kb));
}
