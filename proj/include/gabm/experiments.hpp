#pragma once

#include "gabm/analytics.hpp"
#include "gabm/llm_client.hpp"
#include "gabm/logit.hpp"
#include "gabm/oracle.hpp"
#include "gabm/run.hpp"

#include "json.hpp"

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gabm {

inline constexpr int kConfigSchemaVersion = 1;

enum class BackendKind { Llm, Oracle, AlwaysOut, AlwaysHome };

std::string_view to_string(BackendKind k);
/// "llm", "oracle", "always-out", "always-home". Throws ConfigError.
BackendKind parse_backend_kind(std::string_view s);

struct BackendSpec {
    BackendKind kind = BackendKind::Oracle;
    OraclePolicy oracle;
    LlmConfig llm;

    bool operator==(const BackendSpec&) const = default;
};

nlohmann::json to_json(const BackendSpec& spec);
BackendSpec backend_spec_from_json(const nlohmann::json& j, std::string_view where = "backend");

/// Creates the backend for one run. LLM backends share `llm_client` when given.
std::unique_ptr<DecisionBackend> make_backend(const BackendSpec& spec, std::uint64_t seed,
                                              std::shared_ptr<LlmClient> llm_client = nullptr);

struct ExperimentConfig {
    /// Template for every replication; seed and run_name are filled per replication.
    WorldConfig world;
    int replications = 1;
    std::uint64_t base_seed = 1;
    BackendSpec backend;
    std::string label = "experiment";

    /// Replication k runs under seed base_seed + k.
    WorldConfig replication_world(int k) const;
    bool operator==(const ExperimentConfig&) const = default;
};

/// Throws ConfigError naming the offending field.
void validate(const ExperimentConfig& cfg);

nlohmann::json to_json(const ExperimentConfig& cfg);
/// Parses the experiment config document (schema_version required). Throws ConfigError.
ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

/// Infectivity x contact rate x infectious days.
double implied_r0(const WorldConfig& world);

struct PresetInfo {
    std::string name;
    double labeled_r0 = 0.0;
    std::string description;
};

const std::vector<PresetInfo>& preset_catalog();
/// Throws ConfigError listing valid names for unknown presets.
ExperimentConfig preset(std::string_view name);

enum class ReplicationStatus { Completed, Skipped, Failed };
std::string_view to_string(ReplicationStatus s);

struct ReplicationResult {
    int index = 0;
    std::uint64_t seed = 0;
    ReplicationStatus status = ReplicationStatus::Completed;
    std::filesystem::path directory;
    /// Populated for completed and skipped replications.
    std::optional<RunRecord> record;
    std::string error;
    /// Set when a failure left a resumable checkpoint.
    std::optional<std::filesystem::path> checkpoint;
};

struct ReplicationOptions {
    /// Output root; records land in <out_root>/<label>/replication-<k>/. Nothing is written when unset.
    std::optional<std::filesystem::path> out_root;
    /// Re-run replications whose outputs already exist.
    bool force = false;
    /// Run deterministic replications on several threads.
    bool parallel = true;
    std::function<void(int replication, const WorldState&)> on_day;
    /// Pre-built client shared across LLM replications (tests inject one with a stubbed sleeper).
    std::shared_ptr<LlmClient> llm_client;
};

std::filesystem::path replication_dir(const std::filesystem::path& out_root, const ExperimentConfig& cfg, int k);

/// Runs every replication; failures are recorded and do not stop the others.
std::vector<ReplicationResult> run_replications(const ExperimentConfig& cfg, const ReplicationOptions& options = {});

/// Writes day_metrics.csv, decisions.csv and summary.json for a finished record.
void write_run_outputs(const RunRecord& record, const std::filesystem::path& dir, std::string_view status = "completed");

/// summary.json content for one run.
nlohmann::json run_summary_json(const RunRecord& record, std::string_view status);

/// Reads a replication directory written by write_run_outputs.
RunRecord load_run_directory(const std::filesystem::path& dir);

struct ResumeResult {
    bool already_finished = false;
    RunRecord record;
    std::filesystem::path directory;
};

/// Continues a checkpointed run with the backend recorded in it (or `backend_override`),
/// writing outputs next to the checkpoint.
ResumeResult resume_from_checkpoint(const std::filesystem::path& checkpoint, const std::optional<BackendSpec>& backend_override = {},
                                    std::function<void(const WorldState&)> on_day = {},
                                    std::shared_ptr<LlmClient> llm_client = nullptr);

struct AnalyzeOptions {
    std::optional<LogitSpec> logit;
    double band_level = 0.80;
    std::size_t smoothing_window = 3;
};

/// Reads one run directory or a directory of replication-* runs and writes summary.json,
/// band CSVs (two or more runs), relation points, the stay-home histogram and an optional
/// regression table. Returns the summary document.
nlohmann::json analyze_directory(const std::filesystem::path& dir, const AnalyzeOptions& options = {});

nlohmann::json to_json(const LogitResult& r);

} // namespace gabm
