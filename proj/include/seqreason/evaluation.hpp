#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "seqreason/entailment.hpp"
#include "seqreason/parser.hpp"
#include "seqreason/question.hpp"
#include "seqreason/reasoner.hpp"
#include "seqreason/remote.hpp"

namespace seqreason {

class LifecycleKB;

enum class ParserMode : std::uint8_t { Gold, Pattern };
enum class SystemMode : std::uint8_t { Reasoner, Baseline };

struct RunConfig {
    ParserMode parser = ParserMode::Gold;
    ScorerKind scorer = ScorerKind::LS2;
    std::optional<SplitMode> split;  // evaluate the test bucket; nullopt = all records
    std::uint64_t seed = 0;
    std::filesystem::path kb_path;
    std::filesystem::path questions_path;
    std::filesystem::path report_path;  // empty: no report file
    std::optional<std::filesystem::path> parser_config_path;
    RemoteConfig remote;
    unsigned jobs = 1;
};

enum class QuestionStatus : std::uint8_t { Ok, Unanswerable, Failed };

struct QuestionResult {
    std::string id;
    Category category = Category::Lookup;
    std::string form;  // logical form used, empty when none
    QuestionStatus status = QuestionStatus::Ok;
    std::string error;
    std::optional<std::string> predicted;
    std::string gold;
    bool correct = false;
    bool tied = false;
    std::vector<OptionScore> confidences;
};

struct Tally {
    std::size_t evaluated = 0;
    std::size_t correct = 0;

    double accuracy() const noexcept {
        return evaluated == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(evaluated);
    }
};

struct EvaluationReport {
    SystemMode mode = SystemMode::Reasoner;
    std::map<std::string, std::string> config;  // echo of the run configuration
    std::vector<QuestionResult> questions;       // sorted by id
    Tally overall;
    std::map<Category, Tally> per_category;
    std::size_t unanswerable = 0;
    std::size_t failed = 0;

    bool empty_input() const noexcept { return overall.evaluated == 0; }
};

struct EvaluationOptions {
    SystemMode mode = SystemMode::Reasoner;
    ParserMode parser = ParserMode::Gold;
    ParserConfig parser_config = default_parser_config();
    unsigned jobs = 1;
};

/// Scores every record. Per-question errors mark the question failed; a
/// transport error from a remote scorer aborts the whole run.
EvaluationReport evaluate_records(const std::vector<QuestionRecord>& records,
                                  const LifecycleKB& kb, const EntailmentScorer& scorer,
                                  const EvaluationOptions& options);

/// Entailment-only confidences: validate(description, generate_lookup(question, option)).
ConfidenceAssignment baseline_answer(const QuestionRecord& record, const std::string& organism,
                                     const LifecycleKB& kb, const EntailmentScorer& scorer);

std::unique_ptr<EntailmentScorer> make_scorer(ScorerKind kind, const LifecycleKB& kb,
                                              const RemoteConfig& remote = {});

EvaluationReport run_evaluation(const RunConfig& cfg);
EvaluationReport run_baseline(const RunConfig& cfg);

/// One JSON object per question, then one aggregate object. Deterministic.
std::string report_to_jsonl(const EvaluationReport& report);
/// Aligned-column per-category table.
std::string report_summary(const EvaluationReport& report);

std::string_view to_string(ParserMode m) noexcept;
std::string_view to_string(SystemMode m) noexcept;
std::string_view to_string(QuestionStatus s) noexcept;

}  // namespace seqreason
