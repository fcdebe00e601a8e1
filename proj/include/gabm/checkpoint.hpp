#pragma once

#include "gabm/world.hpp"

#include "json.hpp"

#include <filesystem>
#include <string_view>

namespace gabm {

/// Bumped on any incompatible change to the checkpoint document.
inline constexpr int kCheckpointSchemaVersion = 1;
inline constexpr std::string_view kCheckpointFormat = "gabm-checkpoint";

nlohmann::json to_json(const WorldConfig& cfg);
/// Throws ConfigError naming the offending field, prefixed with `where`.
WorldConfig world_config_from_json(const nlohmann::json& j, std::string_view where = "world");

nlohmann::json to_json(const DayMetrics& m);

/// Whole-world snapshot. `attachments` is stored verbatim (the experiment layer keeps the
/// backend selection there).
nlohmann::json checkpoint_document(const WorldState& world, const nlohmann::json& attachments = nlohmann::json::object());

struct LoadedCheckpoint {
    WorldState world;
    nlohmann::json attachments;
};

/// Throws CheckpointError naming the offending field; SchemaVersionError on version mismatch.
LoadedCheckpoint parse_checkpoint(const nlohmann::json& doc);

/// Writes through a temporary file and renames, so a crash never leaves a partial checkpoint.
void save_checkpoint(const WorldState& world, const std::filesystem::path& path,
                     const nlohmann::json& attachments = nlohmann::json::object());
LoadedCheckpoint load_checkpoint(const std::filesystem::path& path);

/// Writes `text` to `path` atomically (tmp + rename). Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view text);
/// Throws IoError when the file cannot be read.
std::string read_file(const std::filesystem::path& path);

} // namespace gabm
