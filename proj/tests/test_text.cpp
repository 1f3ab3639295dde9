#include <doctest.h>

#include "seqreason/text.hpp"

using namespace seqreason::text;

TEST_CASE("normalize lowercases, trims and collapses whitespace") {
    CHECK(normalize("  Longleaf \t  PINE ") == "longleaf pine");
    CHECK(normalize("") == "");
    CHECK(normalize("frog\xE2\x80\x99s") == "frog's");
    CHECK(normalize(normalize(" A  b ")) == normalize(" A  b "));
}

TEST_CASE("split keeps empty fields") {
    const auto parts = split("a,,b,", ',');
    REQUIRE(parts.size() == 4);
    CHECK(parts[1].empty());
    CHECK(parts[2] == "b");
}

TEST_CASE("find_phrase respects word boundaries") {
    CHECK(find_phrase("the tadpole with legs", "tadpole").size() == 1);
    CHECK(find_phrase("tadpoles swim", "tadpole").empty());
    CHECK(find_phrase("tadpoles swim", "tadpole", true).size() == 1);
    CHECK(find_phrase("the larvaes", "larva", true).size() == 1);
    CHECK(find_phrase("eggshell", "egg", true).empty());
    CHECK(find_phrase("egg, egg", "egg").size() == 2);
}

TEST_CASE("find_prefix only needs a left boundary") {
    const auto hits = find_prefix("how do froglets breathe", "frog");
    REQUIRE(hits.size() == 1);
    CHECK(hits[0].begin == 7);
    CHECK(find_prefix("bullfrog", "frog").empty());
}

TEST_CASE("find_mentions places longer names first") {
    const std::vector<std::string> vocab{"tadpole", "tadpole with legs", "adult"};
    const auto m = find_mentions("a tadpole with legs becomes an adult", vocab);
    REQUIRE(m.size() == 2);
    CHECK(m[0].index == 1);
    CHECK(m[1].index == 2);
}

TEST_CASE("find_mentions skips excluded spans") {
    const std::vector<std::string> vocab{"frog"};
    const auto m = find_mentions("frog frog", vocab, false, {Span{0, 4}});
    REQUIRE(m.size() == 1);
    CHECK(m[0].span.begin == 5);
}

TEST_CASE("fixed6") {
    CHECK(fixed6(1.0) == "1.000000");
    CHECK(fixed6(0.6480004) == "0.648000");
}
