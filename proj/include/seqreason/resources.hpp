#pragma once

#include <string_view>

// Contents of the files under data/ that ship with the library.
namespace seqreason::resources {

extern const std::string_view kParserConfig;  // data/parser.json
extern const std::string_view kStopwords;     // data/stopwords.txt
extern const std::string_view kSynonyms;      // data/synonyms.txt

}  // namespace seqreason::resources
