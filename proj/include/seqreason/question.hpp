#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace seqreason {

class LifecycleKB;

/// A position in a stage sequence: a 1-based index, the middle, or the end.
class Position {
public:
    enum class Kind : std::uint8_t { Index, Middle, Last };

    static Position index(std::size_t value);  // value >= 1
    static Position middle() noexcept { return Position(Kind::Middle, 0); }
    static Position last() noexcept { return Position(Kind::Last, 0); }

    Kind kind() const noexcept { return kind_; }
    std::size_t value() const noexcept { return value_; }  // Index only

    bool operator==(const Position&) const = default;

private:
    Position(Kind kind, std::size_t value) noexcept : kind_(kind), value_(value) {}

    Kind kind_;
    std::size_t value_;
};

std::string to_string(const Position& p);

enum class Category : std::uint8_t {
    Lookup,
    Difference,
    Indicator,
    NextStage,
    StageBefore,
    StageBetween,
    StageAt,
    CorrectlyOrdered,
    CountStages,
    IsAStageOf,
    IsNotAStageOf,
};

inline constexpr std::array<Category, 11> kAllCategories = {
    Category::Lookup,       Category::Difference,      Category::Indicator,
    Category::NextStage,    Category::StageBefore,     Category::StageBetween,
    Category::StageAt,      Category::CorrectlyOrdered, Category::CountStages,
    Category::IsAStageOf,   Category::IsNotAStageOf,
};

/// "NextStage" etc.
std::string_view category_name(Category c) noexcept;
/// "qNextStage" etc.
std::string_view template_name(Category c) noexcept;
std::optional<Category> category_from_name(std::string_view name) noexcept;
/// True for the eight categories answerable from the stage order alone.
bool is_sequence_category(Category c) noexcept;

namespace form {

struct Lookup {
    std::string organism;
    bool operator==(const Lookup&) const = default;
};
// stage1 is the stage the property is denied for, stage2 the one it holds for.
struct Difference {
    std::string organism, stage1, stage2;
    bool operator==(const Difference&) const = default;
};
struct Indicator {
    std::string organism, stage;
    bool operator==(const Indicator&) const = default;
};
struct NextStage {
    std::string organism, stage;
    bool operator==(const NextStage&) const = default;
};
struct StageBefore {
    std::string organism, stage;
    bool operator==(const StageBefore&) const = default;
};
struct StageBetween {
    std::string organism, stage1, stage2;
    bool operator==(const StageBetween&) const = default;
};
struct StageAt {
    std::string organism;
    Position position;
    bool operator==(const StageAt&) const = default;
};
struct CorrectlyOrdered {
    std::string organism;
    bool operator==(const CorrectlyOrdered&) const = default;
};
struct CountStages {
    std::string organism;
    bool operator==(const CountStages&) const = default;
};
struct IsAStageOf {
    std::string organism;
    bool operator==(const IsAStageOf&) const = default;
};
struct IsNotAStageOf {
    std::string organism;
    bool operator==(const IsNotAStageOf&) const = default;
};

}  // namespace form

// Alternative order matches Category.
using LogicalForm =
    std::variant<form::Lookup, form::Difference, form::Indicator, form::NextStage,
                 form::StageBefore, form::StageBetween, form::StageAt, form::CorrectlyOrdered,
                 form::CountStages, form::IsAStageOf, form::IsNotAStageOf>;

Category category_of(const LogicalForm& f) noexcept;
const std::string& organism_of(const LogicalForm& f) noexcept;

/// Textual predicate syntax, e.g. `qStageAt("longleaf pine",middle)`.
/// Arguments may be double-quoted strings or bare atoms; names are normalized.
LogicalForm parse_logical_form(std::string_view text);
std::string to_string(const LogicalForm& f);

struct AnswerOption {
    std::string label;
    std::string text;
    bool operator==(const AnswerOption&) const = default;
};

struct QuestionRecord {
    std::string id;
    std::string question;
    std::vector<AnswerOption> options;
    std::optional<LogicalForm> gold_form;
    std::optional<std::string> gold_answer;
};

/// "a", "b", ..., "z", "aa", ...
std::string option_label(std::size_t index);

/// Checks the record invariants (>= 2 options, unique labels, known gold label).
void check_record(const QuestionRecord& r);

/// JSON Lines: {"id", "question", "options": [..], "gold_form"?, "gold_answer"?}.
std::vector<QuestionRecord> load_questions(const std::filesystem::path& path);
std::vector<QuestionRecord> parse_questions(std::istream& in,
                                            const std::string& source_name = "<stream>");
std::string serialize_question(const QuestionRecord& r);

enum class SplitMode : std::uint8_t { Text, Question };

struct DatasetSplit {
    std::vector<QuestionRecord> train, dev, test;
};

struct SplitSizes {
    std::size_t train = 0, dev = 0, test = 0;
    bool operator==(const SplitSizes&) const = default;
};

/// Bucket sizes for `n` items. Dev and test take the floor of their share and
/// train absorbs the remainder.
SplitSizes split_sizes(std::size_t n, SplitMode mode) noexcept;

/// Organism a record is about: the gold form's organism, else the first KB
/// organism named in the question.
std::optional<std::string> record_organism(const QuestionRecord& r, const LifecycleKB& kb);

/// Organisms assigned to (train, dev, test) under a text split.
std::array<std::vector<std::string>, 3> split_organisms(const LifecycleKB& kb,
                                                        std::uint64_t seed);

DatasetSplit split_dataset(const std::vector<QuestionRecord>& records, const LifecycleKB& kb,
                           SplitMode mode, std::uint64_t seed);

}  // namespace seqreason
