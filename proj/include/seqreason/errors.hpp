#pragma once

#include <stdexcept>
#include <string>

namespace seqreason {

enum class ErrorKind {
    Parse,       // malformed input record or logical form
    Integrity,   // well-formed input that violates a data invariant
    Lookup,      // unknown organism or stage
    Generation,  // hypothesis generator precondition
    Form,        // logical form does not fit the knowledge base
    Split,       // dataset split precondition
    Config,      // run configuration / missing inputs
    Io,          // file system
    Transport,   // remote entailment backend
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace seqreason
