#include <doctest.h>

#include <filesystem>
#include <random>
#include <sstream>

#include "seqreason/errors.hpp"
#include "seqreason/kb.hpp"

using namespace seqreason;
namespace fs = std::filesystem;

namespace {

const char* kFrog =
    "stage\tu\tfrog\t1\tegg\n"
    "stage\tu\tfrog\t2\ttadpole\n"
    "stage\tu\tfrog\t3\ttadpole with legs\n"
    "stage\tu\tfrog\t4\tfroglet\n"
    "stage\tu\tfrog\t5\tadult\n"
    "desc\tu\tfrog\tegg - eggs.\\nadult - The adult frog breathes with lungs.\n";

LifecycleKB parse(const std::string& s) {
    std::istringstream in(s);
    return parse_kb(in, "test.kb");
}

ErrorKind kind_of(const std::string& s) {
    try {
        parse(s);
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::Io;
}

fs::path temp_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("seqreason_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("frog stages load in position order") {
    const LifecycleKB kb = parse(kFrog);
    CHECK(kb.organisms() == std::vector<std::string>{"frog"});
    CHECK(stages_of(kb, "frog") ==
          std::vector<std::string>{"egg", "tadpole", "tadpole with legs", "froglet", "adult"});
    CHECK(stages_of(kb, "FROG ") == stages_of(kb, "frog"));
    CHECK(kb.description_of("frog") == "egg - eggs.\nadult - The adult frog breathes with lungs.");
    CHECK(kb.entry("frog").sequence.position_of("froglet") == 4u);
}

TEST_CASE("unknown organism is a lookup error") {
    const LifecycleKB kb = parse(kFrog);
    try {
        stages_of(kb, "newt");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Lookup);
    }
}

TEST_CASE("records out of order still load") {
    const LifecycleKB kb = parse(
        "desc\ts\tnewt\tnewt text.\n"
        "stage\ts\tnewt\t2\tTadpole\n"
        "stage\ts\t Newt \t1\tegg\n");
    CHECK(stages_of(kb, "newt") == std::vector<std::string>{"egg", "tadpole"});
}

TEST_CASE("comments and blank lines are skipped; empty input gives an empty KB") {
    CHECK(parse("# nothing\n\n").empty());
    CHECK(parse("").organisms().empty());
}

TEST_CASE("integrity violations") {
    SUBCASE("position gap") {
        CHECK(kind_of("stage\ts\tx\t1\ta\nstage\ts\tx\t2\tb\nstage\ts\tx\t4\tc\ndesc\ts\tx\tt\n") ==
              ErrorKind::Integrity);
    }
    SUBCASE("duplicate position") {
        CHECK(kind_of("stage\ts\tx\t1\ta\nstage\ts\tx\t1\tb\ndesc\ts\tx\tt\n") ==
              ErrorKind::Integrity);
    }
    SUBCASE("duplicate stage name after normalization") {
        CHECK(kind_of("stage\ts\tx\t1\tEgg\nstage\ts\tx\t2\tegg \ndesc\ts\tx\tt\n") ==
              ErrorKind::Integrity);
    }
    SUBCASE("missing description") {
        CHECK(kind_of("stage\ts\tx\t1\ta\n") == ErrorKind::Integrity);
    }
    SUBCASE("description without stages") {
        CHECK(kind_of("desc\ts\tx\ttext\n") == ErrorKind::Integrity);
    }
    SUBCASE("second source for one organism") {
        CHECK(kind_of("stage\ts\tx\t1\ta\nstage\tt\tx\t2\tb\ndesc\ts\tx\tt\n") ==
              ErrorKind::Integrity);
    }
    SUBCASE("description from another source") {
        CHECK(kind_of("stage\ts\tx\t1\ta\ndesc\tt\tx\ttext\n") == ErrorKind::Integrity);
    }
    SUBCASE("two descriptions") {
        CHECK(kind_of("stage\ts\tx\t1\ta\ndesc\ts\tx\tone\ndesc\ts\tx\ttwo\n") ==
              ErrorKind::Integrity);
    }
    SUBCASE("empty description") {
        CHECK(kind_of("stage\ts\tx\t1\ta\ndesc\ts\tx\t \n") == ErrorKind::Integrity);
    }
}

TEST_CASE("malformed records are parse errors naming the line") {
    for (const char* bad : {"stage\ts\tx\t1\n", "stage\ts\tx\tone\ta\n", "stage\ts\tx\t0\ta\n",
                            "desc\ts\tx\n", "fact\ts\tx\t1\ta\n"}) {
        CAPTURE(bad);
        try {
            parse(std::string("# header\n") + bad);
            FAIL("expected a parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            CHECK(std::string(e.what()).find("test.kb:2") != std::string::npos);
        }
    }
}

TEST_CASE("description escapes round-trip") {
    for (const std::string s : {"a\nb", "back\\slash", "\\n literal", "", "x\\"}) {
        CHECK(unescape_description(escape_description(s)) == s);
    }
}

TEST_CASE("serialize then parse is the identity") {
    const LifecycleKB kb = parse(kFrog);
    CHECK(parse(serialize_kb(kb)) == kb);
}

TEST_CASE("random KBs survive both round trips") {
    std::mt19937_64 rng(11);
    const fs::path dir = temp_dir("kb_roundtrip");
    for (int trial = 0; trial < 50; ++trial) {
        KbBuilder b;
        const int organisms = 1 + static_cast<int>(rng() % 4);
        for (int o = 0; o < organisms; ++o) {
            const std::string org = "org " + std::to_string(o);
            const int n = 1 + static_cast<int>(rng() % 7);
            for (int p = n; p >= 1; --p) {
                b.add_stage("src" + std::to_string(o), org, static_cast<std::size_t>(p),
                            "stage " + std::to_string(p));
            }
            std::string text = "line one.\nline \\two";
            if (rng() % 2) text += "\n\nthird\tpart";
            b.add_description("src" + std::to_string(o), org, text);
        }
        const LifecycleKB kb = b.build();
        CHECK(parse(serialize_kb(kb)) == kb);
        fs::remove_all(dir);
        write_kb_directory(kb, dir);
        CHECK(load_kb(dir) == kb);
    }
    fs::remove_all(dir);
}

TEST_CASE("bundled record file and directory agree") {
    const LifecycleKB file = load_kb(fs::path(SEQREASON_DATA_DIR) / "lifecycles.kb");
    const LifecycleKB dir = load_kb(fs::path(SEQREASON_DATA_DIR) / "lifecycles");
    CHECK(file == dir);
    CHECK(file.size() >= 10);
    CHECK(stages_of(file, "frog") ==
          std::vector<std::string>{"egg", "tadpole", "tadpole with legs", "froglet", "adult"});
}

TEST_CASE("missing file is an i/o error") {
    try {
        load_kb("/nonexistent/seqreason.kb");
        FAIL("expected an error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("first_organism_in finds the earliest name, prefix matches allowed") {
    const LifecycleKB kb = parse(std::string(kFrog) +
                                 "stage\tv\tnewt\t1\tegg\ndesc\tv\tnewt\tnewt text.\n");
    const auto m = first_organism_in("how do froglets breathe? a newt", kb);
    REQUIRE(m);
    CHECK(m->organism == "frog");
    CHECK(first_organism_in("a newt and a frog", kb)->organism == "newt");
    CHECK_FALSE(first_organism_in("how many moons does mars have", kb));
}
