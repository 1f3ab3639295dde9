#include <doctest.h>

#include <random>

#include "seqreason/errors.hpp"
#include "seqreason/hypothesis.hpp"

using namespace seqreason;

TEST_CASE("lookup hypotheses") {
    CHECK(generate_lookup("How do froglets breathe?", "using gills").text ==
          "froglets breathe using gills");
    CHECK(generate_lookup("Where do female frogs lay their eggs?", "in water").text ==
          "female frogs lay their eggs in water");
    CHECK(generate_lookup("Frogs live ___.", "in water").text == "frogs live in water");
    CHECK(generate_lookup("Tadpoles breathe using", "Gills").text == "tadpoles breathe using gills");
    CHECK(generate_lookup("What does a wolf pup drink?", "milk").text == "a wolf pup drink milk");
    CHECK(generate_lookup("Salmon eggs are buried where?", "in gravel").text ==
          "salmon eggs are buried in gravel");
}

TEST_CASE("lookup hypotheses never end in a question mark and are lowercased") {
    for (const char* q : {"How do froglets breathe?", "Which of these eats leaves?", "Frogs live ___?"}) {
        const auto h = generate_lookup(q, "Using Gills").text;
        CHECK(h.back() != '?');
        CHECK(h.find('G') == std::string::npos);
    }
}

TEST_CASE("lookup generation is idempotent on its own output") {
    std::mt19937_64 rng(3);
    const std::vector<std::string> questions{
        "How do froglets breathe?",        "Where do female frogs lay their eggs?",
        "What does a flea larva eat?",     "Which of these covers a penguin chick?",
        "Frogs live ___.",                 "The adult salmon returns to",
        "When does a tadpole grow legs?",  "Why do efts hide under logs?"};
    const std::vector<std::string> choices{"using gills", "in water", "organic debris",
                                           "soft grey down", "in spring", "to stay damp"};
    for (int i = 0; i < 200; ++i) {
        const auto& q = questions[rng() % questions.size()];
        const auto& c = choices[rng() % choices.size()];
        const auto once = generate_lookup(q, c).text;
        CHECK(generate_lookup(once, c).text == once);
    }
}

TEST_CASE("lookup rejects empty input") {
    CHECK_THROWS_AS(generate_lookup("How do froglets breathe?", "  "), Error);
    CHECK_THROWS_AS(generate_lookup("", "gills"), Error);
}

TEST_CASE("difference hypotheses cut from the question") {
    const form::Difference f{"newt", "tadpole", "adult"};
    const auto [h1, h2] =
        generate_difference("What is an adult newt able to do that a tadpole cannot?", "walk on land", f);
    CHECK(h1.text == "adult newt able to walk on land");
    CHECK(h2.text == "a tadpole cannot walk on land");
}

TEST_CASE("difference hypotheses with does-not-have frames") {
    const form::Difference f{"bean", "sprout", "seedling"};
    const auto [h1, h2] =
        generate_difference("A bean seedling develops what that a sprout does not have?", "leaves", f);
    CHECK(h1.text == "seedling develops leaves");
    CHECK(h2.text == "a sprout does not have leaves");
}

TEST_CASE("difference template fallback") {
    const form::Difference f{"o", "s1", "s2"};
    const auto [h1, h2] = generate_difference("Which is different?", "swim", f);
    CHECK(h1.text == "the s2 o swim");
    CHECK(h2.text == "the s1 o does not swim");

    CHECK(generate_difference("?", "can fly", f).second.text == "the s1 o cannot fly");
    CHECK(generate_difference("?", "has wings", f).second.text == "the s1 o does not have wings");
    CHECK(generate_difference("?", "is green", f).second.text == "the s1 o is not green");
}

TEST_CASE("difference rejects empty input") {
    const form::Difference f{"newt", "tadpole", "adult"};
    CHECK_THROWS_AS(generate_difference("What is an adult newt able to do that a tadpole cannot?", "", f),
                    Error);
    CHECK_THROWS_AS(generate_difference("q", "swim", form::Difference{"newt", "", "adult"}), Error);
}

TEST_CASE("indicator template") {
    CHECK(generate_indicator("froglet", "it has lungs").text == "in the froglet stage, it has lungs");
    CHECK(generate_indicator("adult", "its tail has been absorbed by the body").text ==
          "in the adult stage, its tail has been absorbed by the body");
    CHECK(generate_indicator("egg", "x").text == "in the egg stage, x");
    CHECK(generate_indicator("adult", "When it has lungs").text == "in the adult stage, it has lungs");
    CHECK_THROWS_AS(generate_indicator("", "x"), Error);
    CHECK_THROWS_AS(generate_indicator("egg", ""), Error);
}

TEST_CASE("indicator output always carries the template frame") {
    std::mt19937_64 rng(9);
    const std::vector<std::string> stages{"egg", "tadpole with legs", "grass stage", "adult"};
    const std::vector<std::string> choices{"it has lungs", "when it can fly", "x", "it lays eggs"};
    for (int i = 0; i < 100; ++i) {
        const auto h = generate_indicator(stages[rng() % 4], choices[rng() % 4]).text;
        CHECK(h.find("in the ") == 0);
        CHECK(h.find(" stage, ") != std::string::npos);
    }
}
