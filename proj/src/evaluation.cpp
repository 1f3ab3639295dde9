#include "seqreason/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "seqreason/errors.hpp"
#include "seqreason/hypothesis.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

using json = nlohmann::ordered_json;

std::string_view to_string(ParserMode m) noexcept {
    return m == ParserMode::Gold ? "gold" : "pattern";
}

std::string_view to_string(SystemMode m) noexcept {
    return m == SystemMode::Reasoner ? "reasoner" : "baseline";
}

std::string_view to_string(QuestionStatus s) noexcept {
    switch (s) {
        case QuestionStatus::Ok: return "ok";
        case QuestionStatus::Unanswerable: return "unanswerable";
        case QuestionStatus::Failed: return "failed";
    }
    return "?";
}

std::unique_ptr<EntailmentScorer> make_scorer(ScorerKind kind, const LifecycleKB& kb,
                                              const RemoteConfig& remote) {
    if (kind == ScorerKind::Remote) return std::make_unique<RemoteScorer>(remote);
    return std::make_unique<LexicalScorer>(
        kind, std::make_shared<const LexicalResource>(LexicalResource::from_kb(kb)));
}

ConfidenceAssignment baseline_answer(const QuestionRecord& record, const std::string& organism,
                                     const LifecycleKB& kb, const EntailmentScorer& scorer) {
    const std::string& description = kb.description_of(organism);
    std::vector<OptionScore> scores;
    for (const auto& opt : record.options) {
        double v = 0.0;
        if (!text::trim(opt.text).empty()) {
            v = validate(description, generate_lookup(record.question, opt.text).text, scorer);
        }
        scores.push_back({opt.label, v});
    }
    return select_answer(std::move(scores));
}

namespace {

QuestionResult evaluate_one(const QuestionRecord& r, const LifecycleKB& kb,
                            const EntailmentScorer& scorer, const EvaluationOptions& opt) {
    QuestionResult out;
    out.id = r.id;
    out.gold = r.gold_answer.value_or("");

    try {
        if (opt.mode == SystemMode::Baseline) {
            out.category = r.gold_form ? category_of(*r.gold_form)
                                       : classify_type(r.question, opt.parser_config);
            std::optional<std::string> organism;
            if (auto m = first_organism_in(text::normalize(r.question), kb)) {
                organism = m->organism;
            } else if (r.gold_form) {
                organism = organism_of(*r.gold_form);
            }
            if (!organism || !kb.contains(*organism)) {
                out.status = QuestionStatus::Unanswerable;
                out.error = "no organism in the knowledge base matches the question";
                return out;
            }
            const auto ca = baseline_answer(r, *organism, kb, scorer);
            out.predicted = ca.answer;
            out.tied = ca.tied;
            out.confidences = ca.per_option;
        } else {
            std::optional<LogicalForm> form;
            if (opt.parser == ParserMode::Gold) {
                form = r.gold_form;
            } else {
                try {
                    form = parse_question(r.question, kb, opt.parser_config);
                } catch (const ParseFailure& e) {
                    out.category = e.partial().category;
                    out.status = QuestionStatus::Unanswerable;
                    out.error = e.what();
                    return out;
                }
            }
            out.category = category_of(*form);
            out.form = to_string(*form);
            const auto ca = answer(r, *form, kb, scorer);
            out.predicted = ca.answer;
            out.tied = ca.tied;
            out.confidences = ca.per_option;
        }
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::Transport) throw;
        out.status = QuestionStatus::Failed;
        out.error = e.what();
        return out;
    }
    out.correct = out.predicted && r.gold_answer && *out.predicted == *r.gold_answer;
    return out;
}

}  // namespace

EvaluationReport evaluate_records(const std::vector<QuestionRecord>& records,
                                  const LifecycleKB& kb, const EntailmentScorer& scorer,
                                  const EvaluationOptions& options) {
    for (const auto& r : records) {
        if (!r.gold_answer) {
            throw Error(ErrorKind::Config, "question '" + r.id + "' has no gold answer");
        }
        if (options.mode == SystemMode::Reasoner && options.parser == ParserMode::Gold &&
            !r.gold_form) {
            throw Error(ErrorKind::Config,
                        "gold parser mode needs a gold form on every question; '" + r.id +
                            "' has none");
        }
    }

    std::vector<QuestionResult> results(records.size());
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(records.size())));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        for (std::size_t i = next++; i < records.size(); i = next++) {
            try {
                results[i] = evaluate_one(records[i], kb, scorer, options);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = records.size();
            }
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);

    std::sort(results.begin(), results.end(),
              [](const QuestionResult& a, const QuestionResult& b) { return a.id < b.id; });

    EvaluationReport report;
    report.mode = options.mode;
    report.config["mode"] = std::string(to_string(options.mode));
    if (options.mode == SystemMode::Reasoner) {
        report.config["parser"] = std::string(to_string(options.parser));
    }
    report.config["scorer"] = std::string(to_string(scorer.kind()));
    for (const auto& q : results) {
        ++report.overall.evaluated;
        auto& cat = report.per_category[q.category];
        ++cat.evaluated;
        if (q.correct) {
            ++report.overall.correct;
            ++cat.correct;
        }
        if (q.status == QuestionStatus::Unanswerable) ++report.unanswerable;
        if (q.status == QuestionStatus::Failed) ++report.failed;
    }
    report.questions = std::move(results);
    return report;
}

namespace {

EvaluationReport run(const RunConfig& cfg, SystemMode mode) {
    if (cfg.kb_path.empty()) throw Error(ErrorKind::Config, "no knowledge base path given");
    if (cfg.questions_path.empty()) throw Error(ErrorKind::Config, "no question file given");
    const LifecycleKB kb = load_kb(cfg.kb_path);
    const auto records = load_questions(cfg.questions_path);

    std::vector<QuestionRecord> selected = records;
    if (cfg.split) selected = split_dataset(records, kb, *cfg.split, cfg.seed).test;

    EvaluationOptions opt;
    opt.mode = mode;
    opt.parser = cfg.parser;
    opt.jobs = cfg.jobs;
    if (cfg.parser_config_path) opt.parser_config = load_parser_config(*cfg.parser_config_path);

    const auto scorer = make_scorer(cfg.scorer, kb, cfg.remote);
    EvaluationReport report = evaluate_records(selected, kb, *scorer, opt);
    report.config["split"] = !cfg.split ? "none" : *cfg.split == SplitMode::Text ? "text" : "question";
    report.config["seed"] = std::to_string(cfg.seed);
    report.config["kb"] = cfg.kb_path.string();
    report.config["questions"] = cfg.questions_path.string();
    if (cfg.scorer == ScorerKind::Remote) report.config["remote_url"] = cfg.remote.url;

    if (!cfg.report_path.empty()) {
        std::ofstream out(cfg.report_path, std::ios::binary);
        if (!out) throw Error(ErrorKind::Io, "cannot write report '" + cfg.report_path.string() + "'");
        out << report_to_jsonl(report);
        if (!out) throw Error(ErrorKind::Io, "failed writing report '" + cfg.report_path.string() + "'");
    }
    return report;
}

double round6(double v) { return std::round(v * 1e6) / 1e6; }

json tally_json(const Tally& t) {
    return {{"evaluated", t.evaluated}, {"correct", t.correct}, {"accuracy", round6(t.accuracy())}};
}

}  // namespace

EvaluationReport run_evaluation(const RunConfig& cfg) { return run(cfg, SystemMode::Reasoner); }

EvaluationReport run_baseline(const RunConfig& cfg) { return run(cfg, SystemMode::Baseline); }

std::string report_to_jsonl(const EvaluationReport& report) {
    std::ostringstream out;
    for (const auto& q : report.questions) {
        json j;
        j["type"] = "question";
        j["id"] = q.id;
        j["category"] = std::string(category_name(q.category));
        if (!q.form.empty()) j["form"] = q.form;
        j["status"] = std::string(to_string(q.status));
        j["predicted"] = q.predicted ? json(*q.predicted) : json(nullptr);
        j["gold"] = q.gold;
        j["correct"] = q.correct;
        j["tied"] = q.tied;
        json conf = json::object();
        for (const auto& o : q.confidences) conf[o.label] = round6(o.confidence);
        j["confidences"] = conf;
        if (!q.error.empty()) j["error"] = q.error;
        out << j.dump() << '\n';
    }
    json agg;
    agg["type"] = "aggregate";
    agg["config"] = report.config;
    agg["evaluated"] = report.overall.evaluated;
    agg["correct"] = report.overall.correct;
    agg["accuracy"] = round6(report.overall.accuracy());
    agg["empty_input"] = report.empty_input();
    agg["unanswerable"] = report.unanswerable;
    agg["failed"] = report.failed;
    json cats = json::object();
    for (const auto& [cat, t] : report.per_category) cats[std::string(category_name(cat))] = tally_json(t);
    agg["per_category"] = cats;
    out << agg.dump() << '\n';
    return out.str();
}

std::string report_summary(const EvaluationReport& report) {
    std::ostringstream out;
    char line[128];
    std::snprintf(line, sizeof line, "%-18s %8s %8s %9s\n", "category", "n", "correct", "accuracy");
    out << line;
    auto row = [&](std::string_view name, const Tally& t) {
        std::snprintf(line, sizeof line, "%-18.*s %8zu %8zu %8.2f%%\n",
                      static_cast<int>(name.size()), name.data(), t.evaluated, t.correct,
                      100.0 * t.accuracy());
        out << line;
    };
    for (const auto& [cat, t] : report.per_category) row(category_name(cat), t);
    row("overall", report.overall);
    if (report.empty_input()) out << "(empty input: no questions evaluated)\n";
    if (report.unanswerable) out << "unanswerable: " << report.unanswerable << '\n';
    if (report.failed) out << "failed: " << report.failed << '\n';
    return out.str();
}

}  // namespace seqreason
