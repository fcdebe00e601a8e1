#include "gabm/llm_client.hpp"

#include "gabm/checkpoint.hpp"
#include "gabm/error.hpp"
#include "gabm/prompt.hpp"

#include "httplib.h"

#include <fmt/format.h>
#include <openssl/evp.h>

#include <cmath>
#include <cstdlib>
#include <regex>
#include <thread>

namespace gabm {

using nlohmann::json;

nlohmann::json to_json(const LlmConfig& cfg)
{
    json j{{"base_url", cfg.base_url},
           {"model", cfg.model},
           {"api_key_env", cfg.api_key_env},
           {"max_attempts", cfg.max_attempts},
           {"base_delay_ms", cfg.base_delay.count()},
           {"max_delay_ms", cfg.max_delay.count()},
           {"rate_limit_rpm", cfg.rate_limit_rpm},
           {"timeout_s", cfg.timeout.count()},
           {"max_concurrency", cfg.max_concurrency}};
    j["temperature"] = cfg.temperature ? json(*cfg.temperature) : json(nullptr);
    j["cache_dir"] = cfg.cache_dir ? json(cfg.cache_dir->string()) : json(nullptr);
    return j;
}

LlmConfig llm_config_from_json(const nlohmann::json& j, std::string_view where)
{
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", where));
    }
    LlmConfig c;
    auto bad = [&](std::string_view key, std::string_view what) { throw ConfigError(fmt::format("{}.{}: {}", where, key, what)); };
    auto str = [&](std::string_view key, std::string& dst) {
        if (auto it = j.find(key); it != j.end()) {
            if (!it->is_string()) {
                bad(key, "expected a string");
            }
            dst = it->get<std::string>();
        }
    };
    auto integer = [&](std::string_view key) -> std::optional<std::int64_t> {
        auto it = j.find(key);
        if (it == j.end()) {
            return std::nullopt;
        }
        if (!it->is_number_integer() || it->get<std::int64_t>() < 0) {
            bad(key, "expected a non-negative integer");
        }
        return it->get<std::int64_t>();
    };
    str("base_url", c.base_url);
    str("model", c.model);
    str("api_key_env", c.api_key_env);
    if (auto v = integer("max_attempts")) {
        if (*v < 1) {
            bad("max_attempts", "must be >= 1");
        }
        c.max_attempts = static_cast<int>(*v);
    }
    if (auto v = integer("base_delay_ms")) {
        c.base_delay = std::chrono::milliseconds(*v);
    }
    if (auto v = integer("max_delay_ms")) {
        c.max_delay = std::chrono::milliseconds(*v);
    }
    if (auto v = integer("timeout_s")) {
        c.timeout = std::chrono::seconds(*v);
    }
    if (auto v = integer("max_concurrency")) {
        c.max_concurrency = static_cast<std::size_t>(std::max<std::int64_t>(1, *v));
    }
    if (auto it = j.find("rate_limit_rpm"); it != j.end()) {
        if (!it->is_number() || it->get<double>() < 0) {
            bad("rate_limit_rpm", "expected a non-negative number");
        }
        c.rate_limit_rpm = it->get<double>();
    }
    if (auto it = j.find("temperature"); it != j.end() && !it->is_null()) {
        if (!it->is_number() || it->get<double>() < 0 || it->get<double>() > 2) {
            bad("temperature", "expected a number in [0, 2] or null");
        }
        c.temperature = it->get<double>();
    }
    if (auto it = j.find("cache_dir"); it != j.end() && !it->is_null()) {
        if (!it->is_string()) {
            bad("cache_dir", "expected a string or null");
        }
        c.cache_dir = it->get<std::string>();
    }
    return c;
}

std::string resolve_api_key(const LlmConfig& cfg)
{
    const char* v = std::getenv(cfg.api_key_env.c_str());
    if (v == nullptr || *v == '\0') {
        throw ConfigError(fmt::format("the llm backend needs an API key in environment variable {}", cfg.api_key_env));
    }
    return v;
}

RateLimiter::RateLimiter(double requests_per_minute)
    : rate_per_sec_(requests_per_minute / 60.0), capacity_(std::max(1.0, rate_per_sec_)), tokens_(capacity_), last_(Clock::now())
{
}

void RateLimiter::acquire()
{
    if (rate_per_sec_ <= 0) {
        return;
    }
    std::unique_lock lock(mu_);
    for (;;) {
        const auto now = Clock::now();
        const double elapsed = std::chrono::duration<double>(now - last_).count();
        last_ = now;
        tokens_ = std::min(capacity_, tokens_ + elapsed * rate_per_sec_);
        if (tokens_ >= 1.0) {
            tokens_ -= 1.0;
            return;
        }
        const double wait = (1.0 - tokens_) / rate_per_sec_;
        lock.unlock();
        std::this_thread::sleep_for(std::chrono::duration<double>(wait));
        lock.lock();
    }
}

ResponseCache::ResponseCache(std::filesystem::path dir) : dir_(std::move(dir))
{
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
        throw IoError(fmt::format("cannot create cache directory {}: {}", dir_.string(), ec.message()));
    }
}

namespace {

std::string temperature_key(std::optional<double> t)
{
    return t ? fmt::format("{:.17g}", *t) : std::string("default");
}

} // namespace

std::string ResponseCache::key(std::string_view prompt, std::string_view model, std::optional<double> temperature)
{
    // Length-prefixed fields so distinct triples never concatenate to the same bytes.
    const std::string temp = temperature_key(temperature);
    const std::string material = fmt::format("{}:{}{}:{}{}:{}", model.size(), model, temp.size(), temp, prompt.size(), prompt);
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(material.data(), material.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("SHA-256 digest failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

std::optional<std::string> ResponseCache::get(std::string_view prompt, std::string_view model, std::optional<double> temperature) const
{
    const auto path = dir_ / (key(prompt, model, temperature) + ".json");
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) {
        return std::nullopt;
    }
    try {
        const json doc = json::parse(read_file(path));
        if (doc.at("prompt").get<std::string>() != prompt || doc.at("model").get<std::string>() != model ||
            doc.at("temperature").get<std::string>() != temperature_key(temperature)) {
            return std::nullopt;
        }
        return doc.at("raw_response").get<std::string>();
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void ResponseCache::put(std::string_view prompt, std::string_view model, std::optional<double> temperature, std::string_view raw_response)
{
    const json doc{{"model", model},
                   {"temperature", temperature_key(temperature)},
                   {"prompt", prompt},
                   {"raw_response", raw_response}};
    write_file_atomic(dir_ / (key(prompt, model, temperature) + ".json"), doc.dump(2));
}

std::chrono::milliseconds backoff_delay(const LlmConfig& cfg, int attempt, std::chrono::milliseconds previous,
                                        std::optional<std::chrono::milliseconds> retry_after, double jitter01)
{
    const double exp = static_cast<double>(cfg.base_delay.count()) * std::ldexp(1.0, std::max(0, attempt - 1));
    const double jittered = exp * (1.0 + 0.5 * std::clamp(jitter01, 0.0, 1.0));
    auto d = std::chrono::milliseconds(static_cast<std::int64_t>(std::min(jittered, static_cast<double>(cfg.max_delay.count()))));
    d = std::max(d, previous);
    if (retry_after) {
        d = std::max(d, *retry_after);
    }
    return d;
}

namespace {

struct ParsedUrl {
    std::string scheme_host;
    std::string path;
};

ParsedUrl parse_base_url(const std::string& url)
{
    static const std::regex re(R"(^(https?://[^/\s]+)(/[^\s]*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, re)) {
        throw ConfigError(fmt::format("backend.llm.base_url: '{}' is not an http(s) URL", url));
    }
    std::string path = m[2].matched ? m[2].str() : std::string();
    while (!path.empty() && path.back() == '/') {
        path.pop_back();
    }
    return {m[1].str(), path};
}

std::optional<std::chrono::milliseconds> parse_retry_after(const httplib::Result& res)
{
    if (!res || !res->has_header("Retry-After")) {
        return std::nullopt;
    }
    const std::string v = res->get_header_value("Retry-After");
    char* end = nullptr;
    const double secs = std::strtod(v.c_str(), &end);
    if (end == v.c_str() || !std::isfinite(secs) || secs < 0) {
        return std::nullopt;
    }
    return std::chrono::milliseconds(static_cast<std::int64_t>(std::ceil(secs * 1000.0)));
}

} // namespace

LlmClient::LlmClient(LlmConfig cfg) : LlmClient(cfg, resolve_api_key(cfg)) {}

LlmClient::LlmClient(LlmConfig cfg, std::string api_key)
    : cfg_(std::move(cfg)), api_key_(std::move(api_key)), jitter_rng_(std::random_device{}())
{
    const auto url = parse_base_url(cfg_.base_url);
    scheme_host_ = url.scheme_host;
    path_prefix_ = url.path;
    if (cfg_.max_attempts < 1) {
        throw ConfigError("backend.llm.max_attempts must be >= 1");
    }
    if (cfg_.rate_limit_rpm > 0) {
        limiter_.emplace(cfg_.rate_limit_rpm);
    }
    if (cfg_.cache_dir) {
        cache_.emplace(*cfg_.cache_dir);
    }
    sleeper_ = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
}

json LlmClient::request_body(const std::string& prompt) const
{
    json body{{"model", cfg_.model}, {"messages", json::array({json{{"role", "system"}, {"content", prompt}}})}};
    if (cfg_.temperature) {
        body["temperature"] = *cfg_.temperature;
    }
    return body;
}

LlmUsage LlmClient::usage() const
{
    return {http_requests_.load(), cache_hits_.load(), prompt_tokens_.load(), completion_tokens_.load()};
}

std::vector<std::chrono::milliseconds> LlmClient::last_retry_delays() const
{
    std::lock_guard lock(mu_);
    return last_delays_;
}

std::string LlmClient::complete(const std::string& prompt)
{
    if (cache_) {
        if (auto hit = cache_->get(prompt, cfg_.model, cfg_.temperature)) {
            ++cache_hits_;
            return *hit;
        }
    }
    std::string content = post(prompt);
    if (cache_) {
        cache_->put(prompt, cfg_.model, cfg_.temperature, content);
    }
    return content;
}

std::string LlmClient::post(const std::string& prompt)
{
    const std::string body = request_body(prompt).dump();
    const std::string path = path_prefix_ + "/chat/completions";
    std::vector<std::chrono::milliseconds> delays;
    std::chrono::milliseconds previous{0};
    std::string last_error;

    for (int attempt = 1; attempt <= cfg_.max_attempts; ++attempt) {
        if (limiter_) {
            limiter_->acquire();
        }
        httplib::Client http(scheme_host_);
        http.set_connection_timeout(cfg_.timeout);
        http.set_read_timeout(cfg_.timeout);
        http.set_write_timeout(cfg_.timeout);
        const httplib::Headers headers{{"Authorization", "Bearer " + api_key_}};
        ++http_requests_;
        auto res = http.Post(path, headers, body, "application/json");

        bool retryable = false;
        if (!res) {
            last_error = fmt::format("transport error: {}", httplib::to_string(res.error()));
            retryable = true;
        } else if (res->status == 429 || res->status >= 500) {
            last_error = fmt::format("HTTP {}", res->status);
            retryable = true;
        } else if (res->status < 200 || res->status >= 300) {
            throw BackendError(fmt::format("HTTP {} from {}{}: {}", res->status, scheme_host_, path, res->body.substr(0, 300)));
        } else {
            json doc;
            try {
                doc = json::parse(res->body);
                const auto& content = doc.at("choices").at(0).at("message").at("content");
                if (auto u = doc.find("usage"); u != doc.end() && u->is_object()) {
                    prompt_tokens_ += u->value("prompt_tokens", std::uint64_t{0});
                    completion_tokens_ += u->value("completion_tokens", std::uint64_t{0});
                }
                {
                    std::lock_guard lock(mu_);
                    last_delays_ = delays;
                }
                return content.is_string() ? content.get<std::string>() : std::string();
            } catch (const json::exception& e) {
                throw BackendError(fmt::format("malformed chat-completions reply: {}", e.what()));
            }
        }

        if (!retryable || attempt == cfg_.max_attempts) {
            break;
        }
        double jitter;
        {
            std::lock_guard lock(mu_);
            jitter = std::uniform_real_distribution<double>(0.0, 1.0)(jitter_rng_);
        }
        const auto delay = backoff_delay(cfg_, attempt, previous, parse_retry_after(res), jitter);
        delays.push_back(delay);
        previous = delay;
        sleeper_(delay);
    }
    {
        std::lock_guard lock(mu_);
        last_delays_ = delays;
    }
    throw BackendError(fmt::format("giving up after {} attempts; last error: {}", cfg_.max_attempts, last_error), true);
}

DecisionOutcome llm_decide(const DecisionContext& ctx, LlmClient& client)
{
    return parse_response(client.complete(build_prompt(ctx)));
}

} // namespace gabm
