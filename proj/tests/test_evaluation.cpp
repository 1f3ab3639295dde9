#include <doctest.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include <json.hpp>

#include "seqreason/errors.hpp"
#include "seqreason/evaluation.hpp"
#include "seqreason/kb.hpp"

using namespace seqreason;

namespace {

const std::filesystem::path kData = SEQREASON_DATA_DIR;

const LifecycleKB& bundled_kb() {
    static const LifecycleKB kb = load_kb(kData / "lifecycles.kb");
    return kb;
}

std::vector<QuestionRecord> parse(const std::string& jsonl) {
    std::istringstream in(jsonl);
    return parse_questions(in, "inline");
}

std::vector<nlohmann::json> lines_of(const std::string& jsonl) {
    std::vector<nlohmann::json> out;
    std::istringstream in(jsonl);
    for (std::string line; std::getline(in, line);) out.push_back(nlohmann::json::parse(line));
    return out;
}

std::filesystem::path temp_path(const std::string& name) {
    return std::filesystem::temp_directory_path() /
           ("seqreason_eval_" + std::to_string(::getpid()) + "_" + name);
}

RunConfig bundled_config() {
    RunConfig cfg;
    cfg.kb_path = kData / "lifecycles.kb";
    cfg.questions_path = kData / "questions.jsonl";
    return cfg;
}

}  // namespace

TEST_CASE("empty input") {
    const auto scorer = make_scorer(ScorerKind::LS2, bundled_kb());
    const auto report = evaluate_records({}, bundled_kb(), *scorer, {});
    CHECK(report.overall.evaluated == 0);
    CHECK(report.overall.accuracy() == 0.0);
    CHECK(report.empty_input());
    const auto lines = lines_of(report_to_jsonl(report));
    REQUIRE(lines.size() == 1);
    CHECK(lines[0]["empty_input"] == true);
    CHECK(lines[0]["accuracy"] == 0.0);
    CHECK(report_summary(report).find("empty input") != std::string::npos);
}

TEST_CASE("configuration errors surface before scoring") {
    const auto scorer = make_scorer(ScorerKind::LS2, bundled_kb());
    const auto no_form = parse(R"j({"id":"x","question":"q?","options":["egg","adult"],"gold_answer":"a"})j");
    CHECK_THROWS_AS(evaluate_records(no_form, bundled_kb(), *scorer, {}), Error);
    EvaluationOptions baseline;
    baseline.mode = SystemMode::Baseline;
    CHECK_NOTHROW(evaluate_records(no_form, bundled_kb(), *scorer, baseline));
    const auto no_gold = parse(R"j({"id":"x","question":"q?","options":["egg","adult"],"gold_form":"qCountStages(\"frog\")"})j");
    try {
        evaluate_records(no_gold, bundled_kb(), *scorer, {});
        FAIL("expected a config error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Config);
    }
    RunConfig cfg = bundled_config();
    cfg.kb_path = kData / "missing.kb";
    CHECK_THROWS_AS(run_evaluation(cfg), Error);
}

TEST_CASE("tallies agree with the per-question lines") {
    const auto report = run_evaluation(bundled_config());
    const auto lines = lines_of(report_to_jsonl(report));
    REQUIRE(lines.size() == report.questions.size() + 1);
    std::size_t correct = 0;
    std::map<std::string, std::pair<std::size_t, std::size_t>> per;
    for (std::size_t i = 0; i + 1 < lines.size(); ++i) {
        CHECK(lines[i]["type"] == "question");
        if (i) CHECK(lines[i - 1]["id"].get<std::string>() < lines[i]["id"].get<std::string>());
        const bool ok = lines[i]["predicted"] == lines[i]["gold"];
        CHECK(lines[i]["correct"] == ok);
        correct += ok;
        auto& p = per[lines[i]["category"].get<std::string>()];
        ++p.first;
        p.second += ok;
    }
    const auto& agg = lines.back();
    CHECK(agg["type"] == "aggregate");
    CHECK(agg["evaluated"] == lines.size() - 1);
    CHECK(agg["correct"] == correct);
    CHECK(agg["accuracy"].get<double>() == doctest::Approx(double(correct) / double(lines.size() - 1)).epsilon(1e-6));
    std::size_t sum_eval = 0, sum_correct = 0;
    for (const auto& [name, t] : agg["per_category"].items()) {
        CHECK(t["evaluated"] == per[name].first);
        CHECK(t["correct"] == per[name].second);
        sum_eval += t["evaluated"].get<std::size_t>();
        sum_correct += t["correct"].get<std::size_t>();
    }
    CHECK(sum_eval == report.overall.evaluated);
    CHECK(sum_correct == report.overall.correct);
    CHECK(agg["config"]["mode"] == "reasoner");
    CHECK(agg["config"]["scorer"] == "ls2");
}

TEST_CASE("reports are byte-identical across runs and thread counts") {
    RunConfig cfg = bundled_config();
    const std::string one = report_to_jsonl(run_evaluation(cfg));
    CHECK(report_to_jsonl(run_evaluation(cfg)) == one);
    cfg.jobs = 6;
    CHECK(report_to_jsonl(run_evaluation(cfg)) == one);
    cfg.jobs = 1;
    cfg.split = SplitMode::Question;
    cfg.seed = 3;
    const std::string split = report_to_jsonl(run_baseline(cfg));
    cfg.jobs = 4;
    CHECK(report_to_jsonl(run_baseline(cfg)) == split);
}

TEST_CASE("report file") {
    RunConfig cfg = bundled_config();
    cfg.report_path = temp_path("report.jsonl");
    const auto report = run_evaluation(cfg);
    std::ifstream in(cfg.report_path, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    CHECK(buf.str() == report_to_jsonl(report));
    std::filesystem::remove(cfg.report_path);
    cfg.report_path = temp_path("no/such/dir/report.jsonl");
    try {
        run_evaluation(cfg);
        FAIL("expected an io error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("failed and unanswerable questions") {
    const auto records = parse(
        R"j({"id":"f1","question":"Next after egg?","options":["egg","adult"],"gold_form":"qNextStage(\"unicorn\",\"egg\")","gold_answer":"a"}
{"id":"f2","question":"How many stages does a frog have?","options":["5","4"],"gold_form":"qCountStages(\"frog\")","gold_answer":"a"}
{"id":"f3","question":"What do they eat?","options":["leaves","meat"],"gold_answer":"a"})j");
    const auto scorer = make_scorer(ScorerKind::LS1, bundled_kb());
    const auto report = evaluate_records({records[0], records[1]}, bundled_kb(), *scorer, {});
    CHECK(report.failed == 1);
    CHECK(report.overall.evaluated == 2);
    CHECK(report.overall.correct == 1);
    CHECK(report.questions[0].status == QuestionStatus::Failed);
    CHECK_FALSE(report.questions[0].predicted);
    CHECK(lines_of(report_to_jsonl(report))[0]["predicted"].is_null());

    EvaluationOptions pattern;
    pattern.parser = ParserMode::Pattern;
    const auto parsed = evaluate_records({records[1], records[2]}, bundled_kb(), *scorer, pattern);
    CHECK(parsed.questions[0].correct);
    CHECK(parsed.questions[0].form == "qCountStages(\"frog\")");
    CHECK(parsed.questions[1].status == QuestionStatus::Unanswerable);
    CHECK(parsed.unanswerable == 1);

    EvaluationOptions baseline;
    baseline.mode = SystemMode::Baseline;
    const auto base = evaluate_records({records[2]}, bundled_kb(), *scorer, baseline);
    CHECK(base.unanswerable == 1);
    CHECK_FALSE(base.questions[0].correct);
}

TEST_CASE("baseline scores every option by lookup validation") {
    const auto scorer = make_scorer(ScorerKind::LS2, bundled_kb());
    const auto records = parse(
        R"j({"id":"b1","question":"How many stages does a frog have?","options":["5","4"],"gold_form":"qCountStages(\"frog\")","gold_answer":"a"})j");
    const auto ca = baseline_answer(records[0], "frog", bundled_kb(), *scorer);
    REQUIRE(ca.per_option.size() == 2);
    for (const auto& o : ca.per_option) {
        CHECK(o.confidence >= 0.0);
        CHECK(o.confidence <= 1.0);
    }
    EvaluationOptions baseline;
    baseline.mode = SystemMode::Baseline;
    const auto report = evaluate_records(records, bundled_kb(), *scorer, baseline);
    CHECK(report.config.at("mode") == "baseline");
    CHECK(report.config.count("parser") == 0);
    CHECK(report.questions[0].category == Category::CountStages);
}

TEST_CASE("transport failure aborts the run") {
    RemoteConfig rc;
    rc.url = "http://127.0.0.1:1";
    rc.timeout = std::chrono::milliseconds(500);
    const RemoteScorer scorer(rc);
    const auto records = parse(
        R"j({"id":"l1","question":"How do froglets breathe?","options":["using lungs","using gills"],"gold_form":"qLookup(\"frog\")","gold_answer":"a"})j");
    for (unsigned jobs : {1u, 3u}) {
        EvaluationOptions opt;
        opt.jobs = jobs;
        try {
            evaluate_records(records, bundled_kb(), scorer, opt);
            FAIL("expected a transport error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Transport);
        }
    }
}

TEST_CASE("summary table") {
    const auto report = run_evaluation(bundled_config());
    const std::string s = report_summary(report);
    CHECK(s.rfind("category", 0) == 0);
    CHECK(s.find("overall") != std::string::npos);
    CHECK(s.find("StageAt") != std::string::npos);
}
