#include "seqreason/remote.hpp"

#include <sys/socket.h>

#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "seqreason/errors.hpp"
#include "seqreason/text.hpp"

namespace seqreason {

using json = nlohmann::json;

RemoteScorer::RemoteScorer(RemoteConfig config) : config_(std::move(config)) {
    const std::string& url = config_.url;
    if (url.empty()) throw Error(ErrorKind::Config, "remote scorer needs a URL");
    if (config_.retries < 0) throw Error(ErrorKind::Config, "retries must be >= 0");

    if (text::starts_with(url, "unix:")) {
        unix_socket_ = true;
        endpoint_ = url.substr(5);
        if (text::starts_with(endpoint_, "//")) endpoint_.erase(0, 2);
        if (endpoint_.empty()) throw Error(ErrorKind::Config, "empty socket path in '" + url + "'");
        path_ = "/entail";
        return;
    }
    const std::size_t scheme = url.find("://");
    if (scheme == std::string::npos) {
        throw Error(ErrorKind::Config, "remote URL needs a scheme: '" + url + "'");
    }
    const std::size_t slash = url.find('/', scheme + 3);
    endpoint_ = url.substr(0, slash);
    std::string prefix = slash == std::string::npos ? "" : url.substr(slash);
    while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
    path_ = prefix + "/entail";
}

double RemoteScorer::attempt(std::string_view premise, std::string_view hypothesis) const {
    auto client = std::make_unique<httplib::Client>(endpoint_);
    if (unix_socket_) client->set_address_family(AF_UNIX);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(config_.timeout);
    const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(config_.timeout - secs);
    client->set_connection_timeout(secs.count(), usecs.count());
    client->set_read_timeout(secs.count(), usecs.count());
    client->set_write_timeout(secs.count(), usecs.count());

    const json body = {{"premise", std::string(premise)}, {"hypothesis", std::string(hypothesis)}};
    const auto res = client->Post(path_, body.dump(), "application/json");
    const std::string target = config_.url;
    if (!res) {
        throw Error(ErrorKind::Transport,
                    "entailment backend " + target + ": " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw Error(ErrorKind::Transport,
                    "entailment backend " + target + ": HTTP " + std::to_string(res->status));
    }
    double score = 0.0;
    try {
        const json reply = json::parse(res->body);
        const json& s = reply.at("score");
        if (!s.is_number()) throw Error(ErrorKind::Transport, "score is not a number");
        score = s.get<double>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Transport,
                    "entailment backend " + target + ": malformed reply: " + e.what());
    }
    if (!(score >= 0.0 && score <= 1.0)) {
        throw Error(ErrorKind::Transport,
                    "entailment backend " + target + ": score " + std::to_string(score) +
                        " outside [0, 1]");
    }
    return score;
}

double RemoteScorer::entail(std::string_view premise, std::string_view hypothesis) const {
    auto delay = config_.backoff;
    for (int tries = 0;; ++tries) {
        try {
            return attempt(premise, hypothesis);
        } catch (const Error&) {
            if (tries >= config_.retries) throw;
        }
        std::this_thread::sleep_for(delay);
        delay *= 2;
    }
}

}  // namespace seqreason
