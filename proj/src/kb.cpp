#include "seqreason/kb.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "seqreason/errors.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

std::string located(const std::string& where, const std::string& message) {
    return where.empty() ? message : where + ": " + message;
}

}  // namespace

std::optional<std::size_t> StageSequence::position_of(std::string_view stage) const {
    const auto it = std::find(stages.begin(), stages.end(), stage);
    if (it == stages.end()) return std::nullopt;
    return static_cast<std::size_t>(it - stages.begin()) + 1;
}

bool LifecycleKB::contains(std::string_view organism) const {
    return entries_.find(text::normalize(organism)) != entries_.end();
}

const KbEntry& LifecycleKB::entry(std::string_view organism) const {
    const auto it = entries_.find(text::normalize(organism));
    if (it == entries_.end()) {
        throw Error(ErrorKind::Lookup, "unknown organism '" + std::string(organism) + "'");
    }
    return it->second;
}

const std::vector<std::string>& LifecycleKB::stages_of(std::string_view organism) const {
    return entry(organism).sequence.stages;
}

const std::string& LifecycleKB::description_of(std::string_view organism) const {
    return entry(organism).description.text;
}

const std::vector<std::string>& stages_of(const LifecycleKB& kb, std::string_view organism) {
    return kb.stages_of(organism);
}

std::optional<OrganismMention> first_organism_in(std::string_view normalized_text,
                                                 const LifecycleKB& kb) {
    std::optional<OrganismMention> best;
    for (const auto& org : kb.organisms()) {
        const auto spans = text::find_prefix(normalized_text, org);
        if (spans.empty()) continue;
        const text::Span s = spans.front();
        if (!best || s.begin < best->span.begin ||
            (s.begin == best->span.begin && s.size() > best->span.size())) {
            best = OrganismMention{org, s};
        }
    }
    return best;
}

void KbBuilder::add_stage(std::string_view source_id, std::string_view organism,
                          std::size_t position, std::string_view stage,
                          const std::string& where) {
    const std::string org = text::normalize(organism);
    const std::string name = text::normalize(stage);
    if (org.empty()) throw Error(ErrorKind::Parse, located(where, "field 'organism' is empty"));
    if (name.empty()) throw Error(ErrorKind::Parse, located(where, "field 'stage' is empty"));
    if (position == 0) {
        throw Error(ErrorKind::Parse, located(where, "field 'position' must be >= 1"));
    }
    stages_[org].push_back({text::trim(source_id), position, name, where});
}

void KbBuilder::add_description(std::string_view source_id, std::string_view organism,
                                std::string_view description, const std::string& where) {
    const std::string org = text::normalize(organism);
    if (org.empty()) throw Error(ErrorKind::Parse, located(where, "field 'organism' is empty"));
    descriptions_[org].push_back({text::trim(source_id), std::string(description), where});
}

LifecycleKB KbBuilder::build() const {
    LifecycleKB kb;
    for (const auto& [org, descs] : descriptions_) {
        if (!stages_.count(org)) {
            throw Error(ErrorKind::Integrity,
                        located(descs.front().where,
                                "description for '" + org + "' has no stage records"));
        }
    }
    for (const auto& [org, records] : stages_) {
        const std::string& source = records.front().source_id;
        for (const auto& r : records) {
            if (r.source_id != source) {
                throw Error(ErrorKind::Integrity,
                            located(r.where, "organism '" + org + "' has a second source '" +
                                                 r.source_id + "' (first: '" + source + "')"));
            }
        }

        std::vector<const PendingStage*> ordered;
        for (const auto& r : records) ordered.push_back(&r);
        std::stable_sort(ordered.begin(), ordered.end(),
                         [](const auto* a, const auto* b) { return a->position < b->position; });
        StageSequence seq{org, {}, source};
        std::set<std::string> seen;
        for (std::size_t i = 0; i < ordered.size(); ++i) {
            const PendingStage& r = *ordered[i];
            if (i > 0 && ordered[i - 1]->position == r.position) {
                throw Error(ErrorKind::Integrity,
                            located(r.where, "duplicate position " + std::to_string(r.position) +
                                                 " for '" + org + "'"));
            }
            if (r.position != i + 1) {
                throw Error(ErrorKind::Integrity,
                            located(r.where, "gap in positions for '" + org + "': expected " +
                                                 std::to_string(i + 1) + ", found " +
                                                 std::to_string(r.position)));
            }
            if (!seen.insert(r.stage).second) {
                throw Error(ErrorKind::Integrity,
                            located(r.where, "duplicate stage '" + r.stage + "' for '" + org + "'"));
            }
            seq.stages.push_back(r.stage);
        }

        const auto dit = descriptions_.find(org);
        if (dit == descriptions_.end()) {
            throw Error(ErrorKind::Integrity,
                        located(records.front().where, "missing description for '" + org + "'"));
        }
        const PendingDescription* match = nullptr;
        for (const auto& d : dit->second) {
            if (d.source_id != source) {
                throw Error(ErrorKind::Integrity,
                            located(d.where, "description for '" + org + "' names source '" +
                                                 d.source_id + "' but stages come from '" +
                                                 source + "'"));
            }
            if (match) {
                throw Error(ErrorKind::Integrity,
                            located(d.where, "second description for '" + org + "'"));
            }
            match = &d;
        }
        if (text::trim(match->text).empty()) {
            throw Error(ErrorKind::Integrity,
                        located(match->where, "empty description for '" + org + "'"));
        }

        kb.entries_.emplace(org, KbEntry{std::move(seq), Description{org, match->text, source}});
        kb.organisms_.push_back(org);
    }
    return kb;
}

std::string escape_description(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char c : s) {
        if (c == '\\') {
            out += "\\\\";
        } else if (c == '\n') {
            out += "\\n";
        } else if (c == '\r') {
            continue;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

std::string unescape_description(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '\\' && i + 1 < s.size() && (s[i + 1] == 'n' || s[i + 1] == '\\')) {
            out.push_back(s[i + 1] == 'n' ? '\n' : '\\');
            ++i;
        } else {
            out.push_back(s[i]);
        }
    }
    return out;
}

LifecycleKB parse_kb(std::istream& in, const std::string& source_name) {
    KbBuilder builder;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (text::trim(line).empty() || line.front() == '#') continue;
        const std::string where = source_name + ":" + std::to_string(lineno);

        const std::size_t tab = line.find('\t');
        const std::string kind = line.substr(0, tab);
        if (kind == "stage") {
            const auto fields = text::split(line, '\t');
            if (fields.size() != 5) {
                throw Error(ErrorKind::Parse,
                            where + ": stage record needs 5 tab-separated fields, found " +
                                std::to_string(fields.size()));
            }
            std::size_t position = 0;
            const std::string& pos = fields[3];
            const auto [ptr, ec] = std::from_chars(pos.data(), pos.data() + pos.size(), position);
            if (ec != std::errc{} || ptr != pos.data() + pos.size() || position == 0) {
                throw Error(ErrorKind::Parse,
                            where + ": field 'position': expected a positive integer, got '" +
                                pos + "'");
            }
            builder.add_stage(fields[1], fields[2], position, fields[4], where);
        } else if (kind == "desc") {
            // The text is the remainder of the line and may itself contain tabs.
            std::vector<std::string> fields;
            std::size_t start = 0;
            for (int i = 0; i < 3 && start != std::string::npos; ++i) {
                const std::size_t t = line.find('\t', start);
                fields.push_back(line.substr(start, t == std::string::npos ? t : t - start));
                start = t == std::string::npos ? t : t + 1;
            }
            if (fields.size() != 3 || start == std::string::npos) {
                throw Error(ErrorKind::Parse,
                            where + ": desc record needs 4 tab-separated fields");
            }
            builder.add_description(fields[1], fields[2], unescape_description(line.substr(start)),
                                    where);
        } else {
            throw Error(ErrorKind::Parse,
                        where + ": field 'record type': expected 'stage' or 'desc', got '" +
                            kind + "'");
        }
    }
    return builder.build();
}

LifecycleKB load_kb_directory(const fs::path& dir) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir)) {
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());

    KbBuilder builder;
    for (const auto& file : files) {
        std::ifstream in(file);
        if (!in) throw Error(ErrorKind::Io, "cannot open " + file.string());
        const std::string where = file.string();
        json doc;
        try {
            doc = json::parse(in);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, where + ": " + e.what());
        }
        try {
            const auto source = doc.at("source_id").get<std::string>();
            const auto organism = doc.at("organism").get<std::string>();
            for (const auto& s : doc.at("stages")) {
                const auto position = s.at("position").get<long long>();
                if (position < 1) {
                    throw Error(ErrorKind::Parse, where + ": field 'position' must be >= 1");
                }
                builder.add_stage(source, organism, static_cast<std::size_t>(position),
                                  s.at("stage").get<std::string>(), where);
            }
            builder.add_description(source, organism, doc.at("description").get<std::string>(),
                                    where);
        } catch (const json::exception& e) {
            throw Error(ErrorKind::Parse, where + ": " + e.what());
        }
    }
    return builder.build();
}

LifecycleKB load_kb(const fs::path& path) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) return load_kb_directory(path);
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Io, "cannot open knowledge base '" + path.string() + "'");
    return parse_kb(in, path.string());
}

std::string serialize_kb(const LifecycleKB& kb) {
    std::ostringstream out;
    for (const auto& org : kb.organisms()) {
        const KbEntry& e = kb.entry(org);
        for (std::size_t i = 0; i < e.sequence.stages.size(); ++i) {
            out << "stage\t" << e.sequence.source_id << '\t' << org << '\t' << (i + 1) << '\t'
                << e.sequence.stages[i] << '\n';
        }
        out << "desc\t" << e.description.source_id << '\t' << org << '\t'
            << escape_description(e.description.text) << '\n';
    }
    return out.str();
}

void write_kb_directory(const LifecycleKB& kb, const fs::path& dir) {
    fs::create_directories(dir);
    for (const auto& org : kb.organisms()) {
        const KbEntry& e = kb.entry(org);
        json doc;
        doc["source_id"] = e.sequence.source_id;
        doc["organism"] = org;
        doc["stages"] = json::array();
        for (std::size_t i = 0; i < e.sequence.stages.size(); ++i) {
            doc["stages"].push_back({{"position", i + 1}, {"stage", e.sequence.stages[i]}});
        }
        doc["description"] = e.description.text;

        std::string stem = org;
        std::replace(stem.begin(), stem.end(), ' ', '_');
        std::ofstream out(dir / (stem + ".json"));
        if (!out) throw Error(ErrorKind::Io, "cannot write " + (dir / stem).string());
        out << doc.dump(2) << '\n';
    }
}

}  // namespace seqreason
