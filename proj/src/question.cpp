#include "seqreason/question.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>

#include <json.hpp>

#include "seqreason/errors.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

using json = nlohmann::ordered_json;

Position Position::index(std::size_t value) {
    if (value == 0) throw Error(ErrorKind::Parse, "position index must be >= 1");
    return Position(Kind::Index, value);
}

std::string to_string(const Position& p) {
    switch (p.kind()) {
        case Position::Kind::Middle: return "middle";
        case Position::Kind::Last: return "last";
        case Position::Kind::Index: break;
    }
    return std::to_string(p.value());
}

namespace {

struct CategoryInfo {
    Category category;
    std::string_view name;
    std::string_view template_name;
    std::size_t arity;
};

constexpr std::array<CategoryInfo, 11> kCategoryInfo = {{
    {Category::Lookup, "Lookup", "qLookup", 1},
    {Category::Difference, "Difference", "qDifference", 3},
    {Category::Indicator, "Indicator", "qIndicator", 2},
    {Category::NextStage, "NextStage", "qNextStage", 2},
    {Category::StageBefore, "StageBefore", "qStageBefore", 2},
    {Category::StageBetween, "StageBetween", "qStageBetween", 3},
    {Category::StageAt, "StageAt", "qStageAt", 2},
    {Category::CorrectlyOrdered, "CorrectlyOrdered", "qCorrectlyOrdered", 1},
    {Category::CountStages, "CountStages", "qCountStages", 1},
    {Category::IsAStageOf, "IsAStageOf", "qIsAStageOf", 1},
    {Category::IsNotAStageOf, "IsNotAStageOf", "qIsNotAStageOf", 1},
}};

const CategoryInfo& info(Category c) noexcept {
    return kCategoryInfo[static_cast<std::size_t>(c)];
}

struct Arg {
    std::string value;
    bool quoted = false;
};

std::vector<Arg> parse_args(std::string_view s, std::string_view whole) {
    std::vector<Arg> args;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    };
    skip_ws();
    if (i == s.size()) return args;
    while (true) {
        skip_ws();
        Arg arg;
        if (i < s.size() && (s[i] == '"' || s[i] == '\'')) {
            const char quote = s[i++];
            arg.quoted = true;
            while (i < s.size() && s[i] != quote) {
                if (s[i] == '\\' && i + 1 < s.size()) ++i;
                arg.value.push_back(s[i++]);
            }
            if (i == s.size()) {
                throw Error(ErrorKind::Parse,
                            "unterminated string in logical form '" + std::string(whole) + "'");
            }
            ++i;
        } else {
            while (i < s.size() && s[i] != ',') arg.value.push_back(s[i++]);
            arg.value = text::trim(arg.value);
        }
        if (arg.value.empty()) {
            throw Error(ErrorKind::Parse, "empty argument in logical form '" + std::string(whole) + "'");
        }
        // LaTeX non-breaking space as written in some annotations.
        std::replace(arg.value.begin(), arg.value.end(), '~', ' ');
        args.push_back(std::move(arg));
        skip_ws();
        if (i == s.size()) break;
        if (s[i] != ',') {
            throw Error(ErrorKind::Parse,
                        "expected ',' in logical form '" + std::string(whole) + "'");
        }
        ++i;
    }
    return args;
}

Position parse_position(const Arg& arg, std::string_view whole) {
    const std::string v = text::normalize(arg.value);
    if (v == "middle") return Position::middle();
    if (v == "last") return Position::last();
    std::size_t n = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), n);
    if (ec == std::errc{} && ptr == v.data() + v.size() && n >= 1) return Position::index(n);
    throw Error(ErrorKind::Parse, "bad position '" + arg.value + "' in logical form '" +
                                      std::string(whole) + "'");
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

}  // namespace

std::string_view category_name(Category c) noexcept { return info(c).name; }
std::string_view template_name(Category c) noexcept { return info(c).template_name; }

std::optional<Category> category_from_name(std::string_view name) noexcept {
    for (const auto& ci : kCategoryInfo) {
        if (ci.name == name || ci.template_name == name) return ci.category;
    }
    return std::nullopt;
}

bool is_sequence_category(Category c) noexcept {
    return c != Category::Lookup && c != Category::Difference && c != Category::Indicator;
}

Category category_of(const LogicalForm& f) noexcept {
    return static_cast<Category>(f.index());
}

const std::string& organism_of(const LogicalForm& f) noexcept {
    return std::visit([](const auto& v) -> const std::string& { return v.organism; }, f);
}

LogicalForm parse_logical_form(std::string_view raw) {
    std::string s = text::trim(raw);
    if (!s.empty() && s.back() == '.') s.pop_back();
    const std::size_t open = s.find('(');
    if (open == std::string::npos || s.empty() || s.back() != ')') {
        throw Error(ErrorKind::Parse, "malformed logical form '" + std::string(raw) + "'");
    }
    std::string name = text::trim(std::string_view(s).substr(0, open));
    if (name == "qStageIndicator") name = "qIndicator";
    const auto category = category_from_name(name);
    if (!category || !text::starts_with(name, "q")) {
        throw Error(ErrorKind::Parse, "unknown template '" + name + "'");
    }
    const auto args =
        parse_args(std::string_view(s).substr(open + 1, s.size() - open - 2), raw);
    if (args.size() != info(*category).arity) {
        throw Error(ErrorKind::Parse,
                    std::string(template_name(*category)) + " takes " +
                        std::to_string(info(*category).arity) + " argument(s), got " +
                        std::to_string(args.size()) + " in '" + std::string(raw) + "'");
    }
    auto name_at = [&](std::size_t i) { return text::normalize(args[i].value); };

    switch (*category) {
        case Category::Lookup: return form::Lookup{name_at(0)};
        case Category::Difference: return form::Difference{name_at(0), name_at(1), name_at(2)};
        case Category::Indicator: return form::Indicator{name_at(0), name_at(1)};
        case Category::NextStage: return form::NextStage{name_at(0), name_at(1)};
        case Category::StageBefore: return form::StageBefore{name_at(0), name_at(1)};
        case Category::StageBetween: return form::StageBetween{name_at(0), name_at(1), name_at(2)};
        case Category::StageAt: return form::StageAt{name_at(0), parse_position(args[1], raw)};
        case Category::CorrectlyOrdered: return form::CorrectlyOrdered{name_at(0)};
        case Category::CountStages: return form::CountStages{name_at(0)};
        case Category::IsAStageOf: return form::IsAStageOf{name_at(0)};
        case Category::IsNotAStageOf: return form::IsNotAStageOf{name_at(0)};
    }
    throw Error(ErrorKind::Parse, "unhandled template");
}

std::string to_string(const LogicalForm& f) {
    std::string out(template_name(category_of(f)));
    out.push_back('(');
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            out += quoted(v.organism);
            if constexpr (std::is_same_v<T, form::Difference> ||
                          std::is_same_v<T, form::StageBetween>) {
                out += "," + quoted(v.stage1) + "," + quoted(v.stage2);
            } else if constexpr (std::is_same_v<T, form::Indicator> ||
                                 std::is_same_v<T, form::NextStage> ||
                                 std::is_same_v<T, form::StageBefore>) {
                out += "," + quoted(v.stage);
            } else if constexpr (std::is_same_v<T, form::StageAt>) {
                out += "," + to_string(v.position);
            }
        },
        f);
    out.push_back(')');
    return out;
}

std::string option_label(std::size_t index) {
    std::string label;
    ++index;
    while (index > 0) {
        --index;
        label.insert(label.begin(), static_cast<char>('a' + index % 26));
        index /= 26;
    }
    return label;
}

void check_record(const QuestionRecord& r) {
    if (r.options.size() < 2) {
        throw Error(ErrorKind::Parse, "question '" + r.id + "' needs at least 2 options");
    }
    std::set<std::string> labels;
    for (const auto& o : r.options) {
        if (!labels.insert(o.label).second) {
            throw Error(ErrorKind::Parse,
                        "question '" + r.id + "' has duplicate label '" + o.label + "'");
        }
    }
    if (r.gold_answer && !labels.count(*r.gold_answer)) {
        throw Error(ErrorKind::Parse, "question '" + r.id + "' gold answer '" + *r.gold_answer +
                                          "' is not an option label");
    }
}

std::vector<QuestionRecord> parse_questions(std::istream& in, const std::string& source_name) {
    std::vector<QuestionRecord> records;
    std::set<std::string> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (text::trim(line).empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        QuestionRecord r;
        try {
            const json doc = json::parse(line);
            r.id = doc.at("id").get<std::string>();
            r.question = doc.at("question").get<std::string>();
            const auto& opts = doc.at("options");
            for (std::size_t i = 0; i < opts.size(); ++i) {
                r.options.push_back({option_label(i), opts.at(i).get<std::string>()});
            }
            if (doc.contains("gold_form") && !doc["gold_form"].is_null()) {
                r.gold_form = parse_logical_form(doc["gold_form"].get<std::string>());
            }
            if (doc.contains("gold_answer") && !doc["gold_answer"].is_null()) {
                r.gold_answer = text::normalize(doc["gold_answer"].get<std::string>());
            }
            check_record(r);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, where + ": " + e.what());
        } catch (const Error& e) {
            throw Error(e.kind(), where + ": " + e.what());
        }
        if (!ids.insert(r.id).second) {
            throw Error(ErrorKind::Parse, where + ": duplicate question id '" + r.id + "'");
        }
        records.push_back(std::move(r));
    }
    return records;
}

std::vector<QuestionRecord> load_questions(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open question file '" + path.string() + "'");
    return parse_questions(in, path.string());
}

std::string serialize_question(const QuestionRecord& r) {
    json doc;
    doc["id"] = r.id;
    doc["question"] = r.question;
    doc["options"] = json::array();
    for (const auto& o : r.options) doc["options"].push_back(o.text);
    if (r.gold_form) doc["gold_form"] = to_string(*r.gold_form);
    if (r.gold_answer) doc["gold_answer"] = *r.gold_answer;
    return doc.dump();
}

}  // namespace seqreason
