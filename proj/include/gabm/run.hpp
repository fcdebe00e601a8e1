#pragma once

#include "gabm/world.hpp"

#include "json.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gabm {

/// Everything a finished (or stopped) run leaves behind for analysis.
struct RunRecord {
    WorldConfig config;
    std::vector<DayMetrics> metrics;
    std::vector<DecisionLogRow> decisions;
    /// Per-day exposure counts.
    std::vector<int> new_infections;
    int population = 0;
    int initial_infected = 0;
    /// Agents Infected or Recovered at the end.
    int ever_infected = 0;
    bool early_stopped = false;
    int days_run = 0;

    bool operator==(const RunRecord&) const = default;
};

RunRecord make_record(const WorldState& world);

struct RunOptions {
    /// Checkpoint destination; no checkpoint is written when unset.
    std::optional<std::filesystem::path> checkpoint_path;
    /// Also checkpoint after every completed day.
    bool checkpoint_every_day = false;
    /// Stored in the checkpoint for resumption (backend selection and such).
    nlohmann::json attachments = nlohmann::json::object();
    /// Called after every day.
    std::function<void(const WorldState&)> on_day;
    /// Stop after this many days in this call (the run stays resumable).
    std::optional<int> max_days;
};

/// A backend gave up mid-run; the world as of the last completed day was checkpointed.
class RunAborted : public std::runtime_error {
public:
    RunAborted(const std::string& what, std::optional<std::filesystem::path> checkpoint)
        : std::runtime_error(what), checkpoint_(std::move(checkpoint))
    {
    }
    const std::optional<std::filesystem::path>& checkpoint() const { return checkpoint_; }

private:
    std::optional<std::filesystem::path> checkpoint_;
};

/// Steps the world until the horizon, early stop or options.max_days. Writes the final
/// checkpoint when a path is configured.
void continue_run(WorldState& world, DecisionBackend& backend, const RunOptions& options = {});

/// init_world + continue_run.
RunRecord run_model(const WorldConfig& config, DecisionBackend& backend, const RunOptions& options = {});

} // namespace gabm
