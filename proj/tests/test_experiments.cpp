#include "doctest.h"

#include "gabm/checkpoint.hpp"
#include "gabm/csv.hpp"
#include "gabm/error.hpp"
#include "gabm/experiments.hpp"

// After the library headers: httplib pulls in system headers that upset Eigen.
#include "stub_server.hpp"

#include <filesystem>

using namespace gabm;
using gabm::testing::StubServer;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name)
{
    auto dir = fs::temp_directory_path() / "gabm_test_experiments" / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

ExperimentConfig small(const std::string& label, int reps)
{
    auto cfg = preset("town100-full");
    cfg.label = label;
    cfg.replications = reps;
    return cfg;
}

} // namespace

TEST_CASE("presets carry their labeled R0")
{
    CHECK(implied_r0(preset("town1000-r3").world) == doctest::Approx(3.0));
    CHECK(implied_r0(preset("town1000-r2.5").world) == doctest::Approx(2.5).epsilon(0.02));
    CHECK(implied_r0(preset("town1000-r2").world) == doctest::Approx(2.0).epsilon(0.02));
    for (const auto& p : preset_catalog()) {
        const auto cfg = preset(p.name);
        CHECK(std::abs(implied_r0(cfg.world) - p.labeled_r0) <= 0.02 * p.labeled_r0);
        CHECK(cfg.world.step_count == 68);
    }
    const auto base = preset("town100-base");
    CHECK(base.world.population() == 100);
    CHECK(base.replications == 10);
    CHECK(base.world.condition == Condition::Base);
    CHECK(preset("town1000-r2").world.population() == 1000);
    CHECK_THROWS_WITH_AS(preset("town5"), doctest::Contains("town100-base"), ConfigError);
}

TEST_CASE("config documents round-trip and name bad fields")
{
    auto cfg = preset("town1000-r2.5");
    cfg.backend.kind = BackendKind::Llm;
    cfg.backend.llm.temperature = 0.3;
    cfg.base_seed = 40;
    const auto back = experiment_config_from_json(to_json(cfg));
    CHECK(back.world.initial_healthy == cfg.world.initial_healthy);
    CHECK(back.world.infection_rate == cfg.world.infection_rate);
    CHECK(back.backend == cfg.backend);
    CHECK(back.base_seed == 40);
    CHECK(back.replication_world(3).seed == 43);

    auto j = to_json(cfg);
    j["world"]["contact_rate"] = -1;
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j), doctest::Contains("contact_rate"), ConfigError);
    j = to_json(cfg);
    j.erase("schema_version");
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j), doctest::Contains("schema_version"), ConfigError);
    j = to_json(cfg);
    j["backend"]["kind"] = "psychic";
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j), doctest::Contains("backend.kind"), ConfigError);
    j = to_json(cfg);
    j["replications"] = 0;
    CHECK_THROWS_WITH_AS(experiment_config_from_json(j), doctest::Contains("replications"), ConfigError);
}

TEST_CASE("replications write reproducible output trees")
{
    const auto root = fresh_dir("tree");
    const auto cfg = small("rep", 3);
    ReplicationOptions opts;
    opts.out_root = root;
    const auto results = run_replications(cfg, opts);
    REQUIRE(results.size() == 3);
    for (const auto& r : results) {
        CHECK(r.status == ReplicationStatus::Completed);
        CHECK(r.seed == cfg.base_seed + static_cast<std::uint64_t>(r.index));
        for (const char* f : {"day_metrics.csv", "decisions.csv", "checkpoint.json", "summary.json"}) {
            CHECK(fs::exists(r.directory / f));
        }
        const auto loaded = load_run_directory(r.directory);
        CHECK(loaded.metrics == r.record->metrics);
        CHECK(loaded.decisions.size() == r.record->decisions.size());
        CHECK(loaded.config == r.record->config);
    }

    // Serial re-run into another tree gives byte-identical metrics.
    const auto other = fresh_dir("tree2");
    opts.out_root = other;
    opts.parallel = false;
    run_replications(cfg, opts);
    for (int k = 0; k < 3; ++k) {
        CHECK(read_file(replication_dir(root, cfg, k) / "day_metrics.csv") == read_file(replication_dir(other, cfg, k) / "day_metrics.csv"));
        CHECK(read_file(replication_dir(root, cfg, k) / "decisions.csv") == read_file(replication_dir(other, cfg, k) / "decisions.csv"));
    }
}

TEST_CASE("existing outputs are skipped unless forced")
{
    const auto root = fresh_dir("skip");
    const auto cfg = small("skip", 2);
    ReplicationOptions opts;
    opts.out_root = root;
    run_replications(cfg, opts);
    auto again = run_replications(cfg, opts);
    for (const auto& r : again) {
        CHECK(r.status == ReplicationStatus::Skipped);
        CHECK(r.record.has_value());
    }
    opts.force = true;
    again = run_replications(cfg, opts);
    for (const auto& r : again) {
        CHECK(r.status == ReplicationStatus::Completed);
    }
}

TEST_CASE("backend failure leaves a resumable checkpoint")
{
    StubServer stub;
    stub.always_fail(500);
    const auto root = fresh_dir("abort");
    auto cfg = small("abort", 1);
    cfg.world.step_count = 6;
    cfg.backend.kind = BackendKind::Llm;
    cfg.backend.llm.base_url = stub.base_url();
    cfg.backend.llm.max_attempts = 2;
    auto client = std::make_shared<LlmClient>(cfg.backend.llm, "k");
    client->set_sleeper([](auto) {});
    ReplicationOptions opts;
    opts.out_root = root;
    opts.llm_client = client;
    const auto results = run_replications(cfg, opts);
    REQUIRE(results.size() == 1);
    CHECK(results[0].status == ReplicationStatus::Failed);
    REQUIRE(results[0].checkpoint);
    const auto loaded = load_checkpoint(*results[0].checkpoint);
    CHECK(loaded.world.day == 0);
    CHECK(loaded.attachments["backend"]["kind"] == "llm");

    stub.always_fail(0);
    const auto resumed = resume_from_checkpoint(*results[0].checkpoint, std::nullopt, {}, client);
    CHECK(!resumed.already_finished);
    CHECK(resumed.record.days_run == 6);
    CHECK(fs::exists(resumed.directory / "day_metrics.csv"));
    const auto second = resume_from_checkpoint(*results[0].checkpoint, std::nullopt, {}, client);
    CHECK(second.already_finished);
}

TEST_CASE("resume of an oracle run matches the straight-through run")
{
    const auto root = fresh_dir("resume");
    auto cfg = small("resume", 1);
    ReplicationOptions opts;
    opts.out_root = root;
    const auto straight = run_replications(cfg, opts)[0];

    const auto dir = replication_dir(root, cfg, 0);
    auto world = init_world(cfg.replication_world(0));
    auto backend = make_backend(cfg.backend, world.config.seed);
    RunOptions ro;
    ro.max_days = 5;
    ro.checkpoint_path = root / "partial.json";
    ro.attachments = nlohmann::json{{"backend", to_json(cfg.backend)}};
    continue_run(world, *backend, ro);
    const auto resumed = resume_from_checkpoint(*ro.checkpoint_path);
    CHECK(resumed.record == *straight.record);
    CHECK(read_file(root / "day_metrics.csv") == read_file(dir / "day_metrics.csv"));
}

TEST_CASE("missing API key fails before any run")
{
    const auto root = fresh_dir("nokey");
    auto cfg = small("nokey", 1);
    cfg.backend.kind = BackendKind::Llm;
    cfg.backend.llm.api_key_env = "GABM_TEST_KEY_THAT_IS_NOT_SET";
    ReplicationOptions opts;
    opts.out_root = root;
    CHECK_THROWS_AS(run_replications(cfg, opts), ConfigError);
    CHECK(!fs::exists(root / "nokey"));
}

TEST_CASE("analyze writes bands for several runs and only a summary for one")
{
    const auto root = fresh_dir("analyze");
    const auto cfg = small("an", 4);
    ReplicationOptions opts;
    opts.out_root = root;
    run_replications(cfg, opts);

    AnalyzeOptions aopts;
    aopts.logit = parse_logit_spec("lightcough,fever,prev,prev2");
    const auto doc = analyze_directory(root / "an", aopts);
    for (const char* f : {"summary.json", "band_new_cases.csv", "band_mobility.csv", "relation_points.csv", "stay_home_histogram.csv", "logit.csv"}) {
        CHECK(fs::exists(root / "an" / f));
    }
    CHECK(doc["analysis"]["runs"].size() == 4);
    const auto band = parse_csv(read_file(root / "an" / "band_new_cases.csv"));
    CHECK(band.header == std::vector<std::string>{"day", "mean", "lower", "upper", "mean_smoothed"});

    const auto single = replication_dir(root, cfg, 0);
    const auto before = read_file(single / "day_metrics.csv");
    analyze_directory(single);
    CHECK(fs::exists(single / "summary.json"));
    CHECK(!fs::exists(single / "band_new_cases.csv"));
    CHECK(read_file(single / "day_metrics.csv") == before);
    // Still loadable after analysis rewrote summary.json.
    CHECK(load_run_directory(single).metrics.size() > 0);

    fs::remove(single / "decisions.csv");
    CHECK_THROWS_WITH_AS(analyze_directory(single, aopts), doctest::Contains("decisions.csv"), IoError);
    CHECK_THROWS_AS(analyze_directory(root / "nothing-here"), IoError);
}
