#include "seqreason/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqreason/entailment.hpp"
#include "seqreason/errors.hpp"
#include "seqreason/evaluation.hpp"
#include "seqreason/kb.hpp"
#include "seqreason/parser.hpp"
#include "seqreason/reasoner.hpp"
#include "seqreason/text.hpp"

namespace seqreason::cli {

namespace {

struct Options {
    std::string kb;
    std::string questions;
    std::string scorer = "ls2";
    std::string remote_url;
    std::string parser = "gold";
    std::string split = "none";
    std::uint64_t seed = 0;
    std::string report;
    long timeout_ms = 10000;
    int retries = 0;
    unsigned jobs = 1;
    std::string parser_config;

    // subcommand arguments
    std::string question;
    std::string options;
    std::string form;
    std::string premise;
    std::string hypothesis;
};

RemoteConfig remote_config(const Options& o) {
    RemoteConfig rc;
    rc.url = o.remote_url;
    rc.timeout = std::chrono::milliseconds(o.timeout_ms);
    rc.retries = o.retries;
    return rc;
}

ScorerKind scorer_kind(const Options& o) { return *scorer_from_string(o.scorer); }

ParserConfig parser_config(const Options& o) {
    return o.parser_config.empty() ? default_parser_config() : load_parser_config(o.parser_config);
}

LifecycleKB require_kb(const Options& o) {
    if (o.kb.empty()) throw Error(ErrorKind::Config, "--kb is required");
    return load_kb(o.kb);
}

RunConfig run_config(const Options& o) {
    RunConfig cfg;
    cfg.parser = o.parser == "pattern" ? ParserMode::Pattern : ParserMode::Gold;
    cfg.scorer = scorer_kind(o);
    if (o.split == "text") cfg.split = SplitMode::Text;
    if (o.split == "question") cfg.split = SplitMode::Question;
    cfg.seed = o.seed;
    cfg.kb_path = o.kb;
    cfg.questions_path = o.questions;
    cfg.report_path = o.report;
    if (!o.parser_config.empty()) cfg.parser_config_path = o.parser_config;
    cfg.remote = remote_config(o);
    cfg.jobs = o.jobs;
    return cfg;
}

int cmd_answer(const Options& o, std::ostream& out) {
    const LifecycleKB kb = require_kb(o);
    QuestionRecord record;
    record.id = "cli";
    record.question = o.question;
    const auto parts = text::split(o.options, ',');
    for (std::size_t i = 0; i < parts.size(); ++i) {
        record.options.push_back({option_label(i), text::trim(parts[i])});
    }
    const LogicalForm form = o.form.empty() ? parse_question(o.question, kb, parser_config(o))
                                            : parse_logical_form(o.form);
    const auto scorer = make_scorer(scorer_kind(o), kb, remote_config(o));
    const auto ca = answer(record, form, kb, *scorer);
    out << ca.answer << '\n';
    out << "# form " << to_string(form) << '\n';
    for (const auto& s : ca.per_option) out << "# " << s.label << ' ' << text::fixed6(s.confidence) << '\n';
    if (ca.tied) out << "# tied\n";
    return kOk;
}

int cmd_parse(const Options& o, std::ostream& out) {
    const LifecycleKB kb = require_kb(o);
    const ParserConfig cfg = parser_config(o);
    try {
        out << to_string(parse_question(o.question, kb, cfg)) << '\n';
    } catch (const ParseFailure& e) {
        const PartialForm& p = e.partial();
        std::string detail = std::string(e.what()) + " (template " +
                             std::string(template_name(p.category));
        if (p.organism) detail += ", organism '" + *p.organism + "'";
        for (const auto& s : p.stages) detail += ", stage '" + s + "'";
        if (p.position) detail += ", position " + to_string(*p.position);
        throw Error(ErrorKind::Parse, detail + ")");
    }
    return kOk;
}

int cmd_entail(const Options& o, std::ostream& out) {
    const ScorerKind kind = scorer_kind(o);
    std::unique_ptr<EntailmentScorer> scorer;
    if (kind == ScorerKind::Remote) {
        scorer = std::make_unique<RemoteScorer>(remote_config(o));
    } else {
        // idf from the KB when one is given, uniform weights otherwise
        const LexicalResource res = o.kb.empty() ? LexicalResource::build({})
                                                 : LexicalResource::from_kb(load_kb(o.kb));
        scorer = std::make_unique<LexicalScorer>(kind, std::make_shared<const LexicalResource>(res));
    }
    out << text::fixed6(scorer->entail(o.premise, o.hypothesis)) << '\n';
    return kOk;
}

int cmd_validate_kb(const Options& o, std::ostream& out) {
    const LifecycleKB kb = require_kb(o);
    out << "ok " << kb.size() << " organisms\n";
    for (const auto& org : kb.organisms()) {
        out << "# " << org << ": " << kb.stages_of(org).size() << " stages\n";
    }
    return kOk;
}

int cmd_run(const Options& o, SystemMode mode, std::ostream& out) {
    const RunConfig cfg = run_config(o);
    const EvaluationReport report =
        mode == SystemMode::Reasoner ? run_evaluation(cfg) : run_baseline(cfg);
    out << report_summary(report);
    return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple-choice question answering over life-cycle texts", "seqreason"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Read option defaults from a config file (key = value)");

    Options o;
    const std::vector<std::string> scorers{"ls1", "ls2", "ls3", "remote"};
    app.add_option("--kb", o.kb, "Knowledge base file or directory");
    app.add_option("--questions", o.questions, "Question file (JSON lines)");
    app.add_option("--scorer", o.scorer, "Entailment scorer")->check(CLI::IsMember(scorers));
    app.add_option("--remote-url", o.remote_url, "Entailment service URL")
        ->envname("SEQREASON_REMOTE_URL");
    app.add_option("--parser", o.parser, "Logical form source")
        ->check(CLI::IsMember({"gold", "pattern"}));
    app.add_option("--split", o.split, "Evaluate the test bucket of this split")
        ->check(CLI::IsMember({"text", "question", "none"}));
    app.add_option("--seed", o.seed, "Split seed");
    app.add_option("--report", o.report, "Write the JSON-lines report here");
    app.add_option("--timeout-ms", o.timeout_ms, "Remote request timeout")
        ->check(CLI::PositiveNumber);
    app.add_option("--retries", o.retries, "Remote retries")->check(CLI::NonNegativeNumber);
    app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--parser-config", o.parser_config, "Pattern parser configuration (JSON)");

    auto* answer_cmd = app.add_subcommand("answer", "Answer one question");
    answer_cmd->fallthrough();
    answer_cmd->add_option("--question", o.question)->required();
    answer_cmd->add_option("--options", o.options, "Comma-separated choices, labelled a, b, ...")
        ->required();
    answer_cmd->add_option("--form", o.form, "Logical form; parsed from the question when absent");

    auto* evaluate_cmd = app.add_subcommand("evaluate", "Evaluate the reasoner on a question set");
    evaluate_cmd->fallthrough();
    auto* baseline_cmd = app.add_subcommand("baseline", "Evaluate the entailment-only baseline");
    baseline_cmd->fallthrough();

    auto* parse_cmd = app.add_subcommand("parse", "Map a question to its logical form");
    parse_cmd->fallthrough();
    parse_cmd->add_option("--question", o.question)->required();

    auto* entail_cmd = app.add_subcommand("entail", "Score premise against hypothesis");
    entail_cmd->fallthrough();
    entail_cmd->add_option("--premise", o.premise)->required();
    entail_cmd->add_option("--hypothesis", o.hypothesis)->required();

    auto* validate_cmd = app.add_subcommand("validate-kb", "Check knowledge base integrity");
    validate_cmd->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::FileError& e) {
        err << "seqreason: " << e.what() << '\n';
        return kData;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*answer_cmd) return cmd_answer(o, out);
        if (*evaluate_cmd) return cmd_run(o, SystemMode::Reasoner, out);
        if (*baseline_cmd) return cmd_run(o, SystemMode::Baseline, out);
        if (*parse_cmd) return cmd_parse(o, out);
        if (*entail_cmd) return cmd_entail(o, out);
        if (*validate_cmd) return cmd_validate_kb(o, out);
    } catch (const Error& e) {
        err << "seqreason: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return e.kind() == ErrorKind::Transport ? kTransport : kData;
    } catch (const std::exception& e) {
        err << "seqreason: error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}

}  // namespace seqreason::cli
