#pragma once

// Life-cycle knowledge base: per organism, an ordered stage sequence and the
// natural-language description it was annotated from.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "seqreason/text.hpp"

namespace seqreason {

struct StageSequence {
    std::string organism;
    std::vector<std::string> stages;  // stages[p - 1] is the stage at position p
    std::string source_id;

    std::size_t size() const noexcept { return stages.size(); }
    // 1-based position of an (already normalized) stage name.
    std::optional<std::size_t> position_of(std::string_view stage) const;

    bool operator==(const StageSequence&) const = default;
};

struct Description {
    std::string organism;
    std::string text;
    std::string source_id;

    bool operator==(const Description&) const = default;
};

struct KbEntry {
    StageSequence sequence;
    Description description;

    bool operator==(const KbEntry&) const = default;
};

/// Immutable after construction; build one with KbBuilder or load_kb().
class LifecycleKB {
public:
    LifecycleKB() = default;

    /// Sorted organism names.
    const std::vector<std::string>& organisms() const noexcept { return organisms_; }
    std::size_t size() const noexcept { return organisms_.size(); }
    bool empty() const noexcept { return organisms_.empty(); }

    /// Organism names are normalized before lookup.
    bool contains(std::string_view organism) const;
    const KbEntry& entry(std::string_view organism) const;
    const std::vector<std::string>& stages_of(std::string_view organism) const;
    const std::string& description_of(std::string_view organism) const;

    bool operator==(const LifecycleKB& other) const { return entries_ == other.entries_; }

private:
    friend class KbBuilder;

    std::map<std::string, KbEntry, std::less<>> entries_;
    std::vector<std::string> organisms_;
};

/// Accumulates stage and description records and checks every KB invariant
/// in build(). `where` is echoed in error messages (e.g. "frog.kb:12").
class KbBuilder {
public:
    void add_stage(std::string_view source_id, std::string_view organism, std::size_t position,
                   std::string_view stage, const std::string& where = {});
    void add_description(std::string_view source_id, std::string_view organism,
                         std::string_view text, const std::string& where = {});

    LifecycleKB build() const;

private:
    struct PendingStage {
        std::string source_id;
        std::size_t position;
        std::string stage;
        std::string where;
    };
    struct PendingDescription {
        std::string source_id;
        std::string text;
        std::string where;
    };
    std::map<std::string, std::vector<PendingStage>> stages_;
    std::map<std::string, std::vector<PendingDescription>> descriptions_;
};

const std::vector<std::string>& stages_of(const LifecycleKB& kb, std::string_view organism);

struct OrganismMention {
    std::string organism;
    text::Span span;
};

/// Earliest KB organism name in `normalized_text` that starts on a word
/// boundary ("frog" is found in "froglets"); ties go to the longer name.
std::optional<OrganismMention> first_organism_in(std::string_view normalized_text,
                                                 const LifecycleKB& kb);

/// Reads either a tab-separated record file or a directory of per-organism
/// JSON documents.
LifecycleKB load_kb(const std::filesystem::path& path);

LifecycleKB parse_kb(std::istream& in, const std::string& source_name = "<stream>");
LifecycleKB load_kb_directory(const std::filesystem::path& dir);

/// Tab-separated record form; parse_kb(serialize_kb(kb)) == kb.
std::string serialize_kb(const LifecycleKB& kb);

/// One `<organism>.json` document per organism.
void write_kb_directory(const LifecycleKB& kb, const std::filesystem::path& dir);

std::string escape_description(std::string_view text);
std::string unescape_description(std::string_view text);

}  // namespace seqreason
