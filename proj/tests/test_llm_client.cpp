#include "doctest.h"

#include "stub_server.hpp"

#include "gabm/error.hpp"
#include "gabm/llm_client.hpp"
#include "gabm/oracle.hpp"
#include "gabm/world.hpp"

#include <chrono>
#include <filesystem>

using namespace gabm;
using gabm::testing::StubServer;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

LlmConfig stub_config(const StubServer& s)
{
    LlmConfig cfg;
    cfg.base_url = s.base_url();
    cfg.timeout = std::chrono::seconds(5);
    return cfg;
}

struct SleepLog {
    std::vector<std::chrono::milliseconds> slept;
    LlmClient::Sleeper sleeper()
    {
        return [this](std::chrono::milliseconds d) { slept.push_back(d); };
    }
};

fs::path fresh_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / "gabm_test_llm" / name;
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST_CASE("request carries one system message and the bearer key")
{
    StubServer stub;
    auto cfg = stub_config(stub);
    LlmClient client(cfg, "sk-test");
    const auto reply = client.complete("hello prompt");
    CHECK(reply == "Reasoning: needs money.\nResponse: No");
    REQUIRE(stub.requests() == 1);
    const auto body = stub.bodies().front();
    CHECK(body["model"] == "gpt-3.5-turbo-0301");
    REQUIRE(body["messages"].size() == 1);
    CHECK(body["messages"][0]["role"] == "system");
    CHECK(body["messages"][0]["content"] == "hello prompt");
    CHECK(!body.contains("temperature"));
    CHECK(stub.auth_headers().front() == "Bearer sk-test");
    CHECK(client.usage().prompt_tokens == 100);

    cfg.temperature = 0.7;
    LlmClient warm(cfg, "sk-test");
    warm.complete("x");
    CHECK(stub.bodies().back()["temperature"] == 0.7);
}

TEST_CASE("429 twice then 200 is retried with non-decreasing delays")
{
    StubServer stub;
    stub.script({{429, "", ""}, {429, "", ""}});
    auto cfg = stub_config(stub);
    cfg.base_delay = 100ms;
    LlmClient client(cfg, "k");
    SleepLog log;
    client.set_sleeper(log.sleeper());
    CHECK(client.complete("p") == "Reasoning: needs money.\nResponse: No");
    CHECK(stub.requests() == 3);
    REQUIRE(log.slept.size() == 2);
    CHECK(log.slept[0] >= 100ms);
    CHECK(log.slept[0] <= 150ms);
    CHECK(log.slept[1] >= log.slept[0]);
    CHECK(log.slept[1] >= 200ms);
    CHECK(client.last_retry_delays() == log.slept);
}

TEST_CASE("Retry-After is honored")
{
    StubServer stub;
    stub.script({{429, "3", ""}});
    auto cfg = stub_config(stub);
    cfg.base_delay = 10ms;
    LlmClient client(cfg, "k");
    SleepLog log;
    client.set_sleeper(log.sleeper());
    client.complete("p");
    REQUIRE(log.slept.size() == 1);
    CHECK(log.slept[0] == 3000ms);
}

TEST_CASE("client errors are not retried")
{
    StubServer stub;
    stub.script({{401, "", R"({"error":{"message":"bad key"}})"}});
    LlmClient client(stub_config(stub), "k");
    SleepLog log;
    client.set_sleeper(log.sleeper());
    try {
        client.complete("p");
        FAIL("expected BackendError");
    } catch (const BackendError& e) {
        CHECK(!e.retryable());
        CHECK(std::string(e.what()).find("401") != std::string::npos);
    }
    CHECK(stub.requests() == 1);
    CHECK(log.slept.empty());
}

TEST_CASE("persistent server errors give up after max_attempts")
{
    StubServer stub;
    stub.always_fail(503);
    auto cfg = stub_config(stub);
    cfg.max_attempts = 4;
    LlmClient client(cfg, "k");
    SleepLog log;
    client.set_sleeper(log.sleeper());
    CHECK_THROWS_WITH_AS(client.complete("p"), doctest::Contains("giving up after 4 attempts"), BackendError);
    CHECK(stub.requests() == 4);
    CHECK(log.slept.size() == 3);
}

TEST_CASE("malformed success reply is a backend error")
{
    StubServer stub;
    stub.script({{200, "", R"({"choices": []})"}});
    LlmClient client(stub_config(stub), "k");
    CHECK_THROWS_AS(client.complete("p"), BackendError);
}

TEST_CASE("unreachable endpoint is retried then fails")
{
    LlmConfig cfg;
    cfg.base_url = "http://127.0.0.1:1/v1";
    cfg.max_attempts = 2;
    cfg.timeout = std::chrono::seconds(1);
    LlmClient client(cfg, "k");
    SleepLog log;
    client.set_sleeper(log.sleeper());
    CHECK_THROWS_AS(client.complete("p"), BackendError);
    CHECK(log.slept.size() == 1);
}

TEST_CASE("cache replay makes no network calls")
{
    StubServer stub;
    auto cfg = stub_config(stub);
    cfg.cache_dir = fresh_dir("cache");
    {
        LlmClient client(cfg, "k");
        client.complete("one");
        client.complete("two");
    }
    CHECK(stub.requests() == 2);
    LlmClient again(cfg, "k");
    CHECK(again.complete("one") == "Reasoning: needs money.\nResponse: No");
    again.complete("two");
    CHECK(stub.requests() == 2);
    CHECK(again.usage().cache_hits == 2);
    CHECK(again.usage().http_requests == 0);

    // A different model or temperature is a different key.
    CHECK(ResponseCache::key("one", "m", std::nullopt) != ResponseCache::key("one", "m", 0.0));
    CHECK(ResponseCache::key("one", "m", 1.0) != ResponseCache::key("one", "n", 1.0));
    CHECK(ResponseCache::key("ab", "c", 1.0) != ResponseCache::key("b", "ca", 1.0));
}

TEST_CASE("missing API key is a config error")
{
    LlmConfig cfg;
    cfg.api_key_env = "GABM_TEST_KEY_THAT_IS_NOT_SET";
    CHECK_THROWS_WITH_AS(LlmClient{cfg}, doctest::Contains("GABM_TEST_KEY_THAT_IS_NOT_SET"), ConfigError);
    cfg.base_url = "ftp://example";
    CHECK_THROWS_AS(LlmClient(cfg, "k"), ConfigError);
}

TEST_CASE("backoff delays are monotone and capped")
{
    LlmConfig cfg;
    cfg.base_delay = 500ms;
    cfg.max_delay = 4000ms;
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::chrono::milliseconds prev{0};
        for (int attempt = 1; attempt <= 10; ++attempt) {
            const auto d = backoff_delay(cfg, attempt, prev, std::nullopt, rng.uniform01());
            CHECK(d >= prev);
            CHECK(d <= cfg.max_delay);
            const double expo = 500.0 * (1 << (attempt - 1));
            CHECK(d.count() >= std::min<double>(expo, 4000.0) - 1);
            prev = d;
        }
    }
    CHECK(backoff_delay(cfg, 1, 0ms, 10000ms, 0.0) == 10000ms);
}

TEST_CASE("rate limiter paces a burst")
{
    RateLimiter limiter(1200.0); // 20 per second, burst of 20
    const auto start = std::chrono::steady_clock::now();
    for (int i = 0; i < 30; ++i) {
        limiter.acquire();
    }
    const auto elapsed = std::chrono::steady_clock::now() - start;
    CHECK(elapsed >= 400ms);
    CHECK(elapsed < 3s);
}

TEST_CASE("llm backend runs a full-condition day against the stub")
{
    StubServer stub;
    auto cfg = stub_config(stub);
    cfg.max_concurrency = 8;
    LlmBackend backend(std::make_shared<LlmClient>(cfg, "k"));
    WorldConfig wc;
    wc.condition = Condition::Full;
    wc.initial_healthy = 95;
    wc.initial_infected = 5;
    auto w = init_world(wc);
    for (int d = 0; d < 4; ++d) {
        step_day(w, backend);
    }
    CHECK(stub.requests() == 400);
    CHECK(w.decision_log.size() == 400);
    for (const auto& row : w.decision_log) {
        CHECK(row.conforming);
        const bool fever = row.day_infected && (*row.day_infected == 4 || *row.day_infected == 5);
        CHECK(row.stay_home == fever);
    }
    // The seeds are on infection day 4 by day index 3 and stay home.
    CHECK(w.metrics[2].mobility_count == 100);
    CHECK(w.metrics[3].mobility_count == 95);
}
