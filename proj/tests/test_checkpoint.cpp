#include "doctest.h"

#include "gabm/checkpoint.hpp"
#include "gabm/error.hpp"
#include "gabm/oracle.hpp"
#include "gabm/run.hpp"

#include <filesystem>
#include <fstream>

using namespace gabm;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    auto dir = fs::temp_directory_path() / "gabm_test_checkpoint";
    fs::create_directories(dir);
    return dir / name;
}

WorldState mid_run(int days, std::uint64_t seed = 5)
{
    WorldConfig cfg;
    cfg.condition = Condition::Full;
    cfg.seed = seed;
    auto w = init_world(cfg);
    OracleBackend b(OraclePolicy::table1_regression3(), seed);
    for (int d = 0; d < days && !w.finished(); ++d) {
        step_day(w, b);
    }
    return w;
}

} // namespace

TEST_CASE("checkpoint document round-trips the whole world")
{
    const auto w = mid_run(9);
    const auto doc = checkpoint_document(w, nlohmann::json{{"note", "x"}});
    CHECK(doc["format"] == "gabm-checkpoint");
    CHECK(doc["schema_version"] == 1);
    const auto loaded = parse_checkpoint(doc);
    CHECK(loaded.world == w);
    CHECK(loaded.attachments["note"] == "x");
}

TEST_CASE("save at day 5 and resume equals the straight-through run")
{
    WorldConfig cfg;
    cfg.condition = Condition::Full;
    cfg.seed = 21;
    OracleBackend b1(OraclePolicy::table1_regression3(), 21);
    const auto straight = run_model(cfg, b1);

    auto w = init_world(cfg);
    OracleBackend b2(OraclePolicy::table1_regression3(), 21);
    RunOptions opts;
    opts.max_days = 5;
    opts.checkpoint_path = scratch("resume.json");
    continue_run(w, b2, opts);
    CHECK(w.day == 5);

    auto loaded = load_checkpoint(*opts.checkpoint_path);
    OracleBackend b3(OraclePolicy::table1_regression3(), 21);
    continue_run(loaded.world, b3);
    CHECK(make_record(loaded.world) == straight);
}

TEST_CASE("schema version mismatch is a migration error")
{
    auto doc = checkpoint_document(mid_run(2));
    doc["schema_version"] = 2;
    CHECK_THROWS_WITH_AS(parse_checkpoint(doc), doctest::Contains("schema_version"), SchemaVersionError);
}

TEST_CASE("invalid fields are reported by path")
{
    const auto good = checkpoint_document(mid_run(3));
    {
        auto doc = good;
        doc["citizens"][4]["age"] = 12;
        CHECK_THROWS_WITH_AS(parse_checkpoint(doc), doctest::Contains("citizens[4].age"), CheckpointError);
    }
    {
        auto doc = good;
        doc["config"]["contact_rate"] = -1;
        CHECK_THROWS_WITH_AS(parse_checkpoint(doc), doctest::Contains("contact_rate"), CheckpointError);
    }
    {
        auto doc = good;
        doc.erase("rng_state");
        CHECK_THROWS_WITH_AS(parse_checkpoint(doc), doctest::Contains("rng_state"), CheckpointError);
    }
    {
        auto doc = good;
        doc["format"] = "something-else";
        CHECK_THROWS_AS(parse_checkpoint(doc), CheckpointError);
    }
}

TEST_CASE("corrupted and truncated files are load errors")
{
    const auto path = scratch("corrupt.json");
    save_checkpoint(mid_run(4), path);
    std::string text = read_file(path);
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << text.substr(0, text.size() / 2);
    }
    CHECK_THROWS_WITH_AS(load_checkpoint(path), doctest::Contains("not a complete checkpoint"), CheckpointError);
    {
        std::ofstream f(path, std::ios::binary | std::ios::trunc);
        f << "[1, 2, 3]";
    }
    CHECK_THROWS_AS(load_checkpoint(path), CheckpointError);
    CHECK_THROWS_AS(load_checkpoint(scratch("missing.json")), IoError);
}

TEST_CASE("atomic writes leave no temporary files")
{
    const auto dir = scratch("atomic");
    fs::remove_all(dir);
    fs::create_directories(dir);
    write_file_atomic(dir / "a.txt", "first");
    write_file_atomic(dir / "a.txt", "second");
    CHECK(read_file(dir / "a.txt") == "second");
    int files = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir)) {
        ++files;
    }
    CHECK(files == 1);
}
