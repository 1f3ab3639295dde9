#pragma once

// Client for an external entailment service.
//
//   POST <base>/entail   {"premise": "...", "hypothesis": "..."}
//   200                  {"score": 0.83}
//
// Any transport failure, non-2xx status, malformed body or score outside
// [0, 1] raises a Transport error. Each call uses its own connection, so one
// RemoteScorer can serve many threads.

#include <chrono>
#include <string>
#include <string_view>

#include "seqreason/entailment.hpp"

namespace seqreason {

struct RemoteConfig {
    /// "http://host:port[/prefix]" or "unix:///path/to/socket"
    std::string url;
    std::chrono::milliseconds timeout{10000};
    int retries = 0;
    std::chrono::milliseconds backoff{200};  // doubled after every failed attempt
};

class RemoteScorer final : public EntailmentScorer {
public:
    explicit RemoteScorer(RemoteConfig config);

    double entail(std::string_view premise, std::string_view hypothesis) const override;
    ScorerKind kind() const noexcept override { return ScorerKind::Remote; }

    const RemoteConfig& config() const noexcept { return config_; }

private:
    double attempt(std::string_view premise, std::string_view hypothesis) const;

    RemoteConfig config_;
    bool unix_socket_ = false;
    std::string endpoint_;  // scheme://host:port, or the socket path
    std::string path_;      // request path, ends in /entail
};

}  // namespace seqreason
