#include "gabm/run.hpp"

#include "gabm/checkpoint.hpp"
#include "gabm/error.hpp"

#include <fmt/format.h>

namespace gabm {

RunRecord make_record(const WorldState& world)
{
    RunRecord r;
    r.config = world.config;
    r.metrics = world.metrics;
    r.decisions = world.decision_log;
    r.new_infections = world.list_new_cases;
    r.population = world.population();
    r.initial_infected = world.config.initial_infected;
    const auto counts = count_compartments(world.citizens);
    r.ever_infected = counts.to_be_infected + counts.infected + counts.recovered;
    r.early_stopped = world.early_stopped;
    r.days_run = world.day;
    return r;
}

void continue_run(WorldState& world, DecisionBackend& backend, const RunOptions& options)
{
    int stepped = 0;
    while (!world.finished() && (!options.max_days || stepped < *options.max_days)) {
        try {
            step_day(world, backend);
        } catch (const BackendError& e) {
            // decision_phase fails before mutating anything, so the world is still at the
            // end of the previous day.
            if (options.checkpoint_path) {
                save_checkpoint(world, *options.checkpoint_path, options.attachments);
            }
            throw RunAborted(fmt::format("day {}: {}", world.day, e.what()), options.checkpoint_path);
        }
        ++stepped;
        if (options.on_day) {
            options.on_day(world);
        }
        if (options.checkpoint_path && options.checkpoint_every_day) {
            save_checkpoint(world, *options.checkpoint_path, options.attachments);
        }
    }
    if (options.checkpoint_path) {
        save_checkpoint(world, *options.checkpoint_path, options.attachments);
    }
}

RunRecord run_model(const WorldConfig& config, DecisionBackend& backend, const RunOptions& options)
{
    WorldState world = init_world(config);
    continue_run(world, backend, options);
    return make_record(world);
}

} // namespace gabm
