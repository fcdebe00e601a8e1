#pragma once

#include "gabm/decision.hpp"

#include "json.hpp"

#include <atomic>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace gabm {

struct LlmConfig {
    /// Chat-completions base; requests go to <base_url>/chat/completions.
    std::string base_url = "https://api.openai.com/v1";
    std::string model = "gpt-3.5-turbo-0301";
    /// Omitted from the request when unset, leaving the endpoint default in effect.
    std::optional<double> temperature;
    /// Name of the environment variable holding the API key.
    std::string api_key_env = "OPENAI_API_KEY";
    int max_attempts = 6;
    std::chrono::milliseconds base_delay{1000};
    std::chrono::milliseconds max_delay{60000};
    /// Requests per minute; 0 disables client-side pacing.
    double rate_limit_rpm = 0.0;
    std::optional<std::filesystem::path> cache_dir;
    std::chrono::seconds timeout{60};
    std::size_t max_concurrency = 8;

    bool operator==(const LlmConfig&) const = default;
};

nlohmann::json to_json(const LlmConfig& cfg);
/// Missing fields keep their defaults. Throws ConfigError naming the field.
LlmConfig llm_config_from_json(const nlohmann::json& j, std::string_view where = "backend.llm");

/// Reads the key named by cfg.api_key_env. Throws ConfigError if unset or empty.
std::string resolve_api_key(const LlmConfig& cfg);

/// Token bucket on requests per minute. Burst capacity is one second's worth (at least 1).
class RateLimiter {
public:
    using Clock = std::chrono::steady_clock;
    explicit RateLimiter(double requests_per_minute);
    /// Blocks until a token is available.
    void acquire();

private:
    std::mutex mu_;
    double rate_per_sec_;
    double capacity_;
    double tokens_;
    Clock::time_point last_;
};

/// One JSON file per request digest: {model, temperature, prompt, raw_response}.
class ResponseCache {
public:
    explicit ResponseCache(std::filesystem::path dir);

    /// Hex SHA-256 over (prompt, model, temperature).
    static std::string key(std::string_view prompt, std::string_view model, std::optional<double> temperature);

    std::optional<std::string> get(std::string_view prompt, std::string_view model, std::optional<double> temperature) const;
    void put(std::string_view prompt, std::string_view model, std::optional<double> temperature, std::string_view raw_response);
    const std::filesystem::path& dir() const { return dir_; }

private:
    std::filesystem::path dir_;
};

/// Delay before retry `attempt` (1-based count of failures so far): exponential with up to
/// 50% jitter, never below the previous delay or a server-provided Retry-After, capped.
std::chrono::milliseconds backoff_delay(const LlmConfig& cfg, int attempt, std::chrono::milliseconds previous,
                                        std::optional<std::chrono::milliseconds> retry_after, double jitter01);

struct LlmUsage {
    std::uint64_t http_requests = 0;
    std::uint64_t cache_hits = 0;
    std::uint64_t prompt_tokens = 0;
    std::uint64_t completion_tokens = 0;
};

/// Chat-completions client: one system message per call, retries, pacing and caching.
class LlmClient {
public:
    using Sleeper = std::function<void(std::chrono::milliseconds)>;

    /// Throws ConfigError when the API key is missing or the base URL is malformed.
    explicit LlmClient(LlmConfig cfg);
    LlmClient(LlmConfig cfg, std::string api_key);

    /// Raw assistant text for `prompt`. Throws BackendError when the request cannot succeed.
    std::string complete(const std::string& prompt);

    void set_sleeper(Sleeper sleeper) { sleeper_ = std::move(sleeper); }
    const LlmConfig& config() const { return cfg_; }
    LlmUsage usage() const;
    /// Delays slept by the most recent call to complete() that retried.
    std::vector<std::chrono::milliseconds> last_retry_delays() const;

    /// Request body sent for `prompt`.
    nlohmann::json request_body(const std::string& prompt) const;

private:
    std::string post(const std::string& prompt);

    LlmConfig cfg_;
    std::string api_key_;
    std::string scheme_host_;
    std::string path_prefix_;
    std::optional<RateLimiter> limiter_;
    std::optional<ResponseCache> cache_;
    Sleeper sleeper_;

    mutable std::mutex mu_;
    std::mt19937_64 jitter_rng_;
    std::vector<std::chrono::milliseconds> last_delays_;
    std::atomic<std::uint64_t> http_requests_{0};
    std::atomic<std::uint64_t> cache_hits_{0};
    std::atomic<std::uint64_t> prompt_tokens_{0};
    std::atomic<std::uint64_t> completion_tokens_{0};
};

/// build_prompt -> client -> parse_response.
DecisionOutcome llm_decide(const DecisionContext& ctx, LlmClient& client);

class LlmBackend final : public DecisionBackend {
public:
    explicit LlmBackend(std::shared_ptr<LlmClient> client) : client_(std::move(client)) {}
    DecisionOutcome decide(const DecisionContext& ctx) override { return llm_decide(ctx, *client_); }
    std::size_t max_concurrency() const override { return std::max<std::size_t>(1, client_->config().max_concurrency); }
    bool deterministic() const override { return false; }
    std::string name() const override { return "llm"; }
    LlmClient& client() { return *client_; }

private:
    std::shared_ptr<LlmClient> client_;
};

} // namespace gabm
