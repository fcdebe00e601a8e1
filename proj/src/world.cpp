#include "gabm/world.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace gabm {

void validate(const WorldConfig& cfg)
{
    if (cfg.initial_healthy < 0) {
        throw ConfigError(fmt::format("initial_healthy must be >= 0 (got {})", cfg.initial_healthy));
    }
    if (cfg.initial_infected < 0) {
        throw ConfigError(fmt::format("initial_infected must be >= 0 (got {})", cfg.initial_infected));
    }
    if (cfg.population() < 2) {
        throw ConfigError(fmt::format("initial_healthy + initial_infected must be >= 2 (got {})", cfg.population()));
    }
    if (cfg.contact_rate < 0) {
        throw ConfigError(fmt::format("contact_rate must be >= 0 (got {})", cfg.contact_rate));
    }
    if (!(cfg.infection_rate >= 0.0 && cfg.infection_rate <= 1.0)) {
        throw ConfigError(fmt::format("infection_rate must be within [0, 1] (got {})", cfg.infection_rate));
    }
    if (cfg.step_count < 0) {
        throw ConfigError(fmt::format("step_count must be >= 0 (got {})", cfg.step_count));
    }
}

CompartmentCounts count_compartments(const std::vector<Citizen>& citizens)
{
    CompartmentCounts c;
    for (const auto& cit : citizens) {
        switch (cit.health.state) {
        case HealthState::Susceptible:
            ++c.susceptible;
            break;
        case HealthState::ToBeInfected:
            ++c.to_be_infected;
            break;
        case HealthState::Infected:
            ++c.infected;
            break;
        case HealthState::Recovered:
            ++c.recovered;
            break;
        }
    }
    return c;
}

WorldState init_world(const WorldConfig& cfg, const NamePool& names)
{
    validate(cfg);
    WorldState world;
    world.config = cfg;
    world.rng = Rng(cfg.seed);
    world.daily_new_cases = cfg.initial_infected;
    const int n = cfg.population();
    world.citizens.reserve(static_cast<std::size_t>(n));
    for (AgentId id = 0; id < n; ++id) {
        Citizen c;
        c.persona = sample_persona(world.rng, id, names);
        c.health = id < cfg.initial_infected ? HealthCondition::infected(1) : HealthCondition::susceptible();
        world.citizens.push_back(std::move(c));
    }
    return world;
}

PrevalencePct current_prevalence(const WorldState& world)
{
    return PrevalencePct::from_counts(world.daily_new_cases, world.population());
}

void decision_phase(WorldState& world, DecisionBackend& backend)
{
    const std::size_t n = world.citizens.size();
    const PrevalencePct prevalence = current_prevalence(world);

    std::vector<DecisionContext> contexts;
    contexts.reserve(n);
    for (const auto& c : world.citizens) {
        contexts.push_back(make_context(c.persona, c.health, world.config.condition, world.day, prevalence));
    }

    std::vector<DecisionOutcome> outcomes(n);
    std::vector<std::exception_ptr> errors(n);
    const std::size_t workers = std::min(backend.max_concurrency(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) {
            outcomes[i] = backend.decide(contexts[i]);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::atomic<bool> failed{false};
        auto work = [&] {
            for (std::size_t i = next++; i < n && !failed; i = next++) {
                try {
                    outcomes[i] = backend.decide(contexts[i]);
                } catch (...) {
                    errors[i] = std::current_exception();
                    failed = true;
                }
            }
        };
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (std::size_t t = 0; t < workers; ++t) {
            pool.emplace_back(work);
        }
        pool.clear();
        for (auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        auto& c = world.citizens[i];
        const auto& out = outcomes[i];
        c.location = out.stay_home ? Location::Home : Location::Grid;

        DecisionLogRow row;
        row.day = world.day;
        row.agent_id = c.id();
        row.age = c.persona.age;
        row.gender = c.persona.gender;
        row.traits = c.persona.traits;
        row.health_state = c.health.state;
        row.day_infected = c.health.day_infected;
        row.prevalence = prevalence;
        row.stay_home = out.stay_home;
        row.conforming = out.conforming;
        row.reasoning = out.reasoning;
        world.decision_log.push_back(std::move(row));
    }
}

void build_interactions(WorldState& world)
{
    auto& citizens = world.citizens;
    for (auto& c : citizens) {
        c.agent_interaction.clear();
    }
    const auto cap = static_cast<std::size_t>(world.config.contact_rate);

    std::vector<AgentId> grid;
    for (const auto& c : citizens) {
        if (c.location == Location::Grid) {
            grid.push_back(c.id());
        }
    }
    if (cap == 0 || grid.size() < 2) {
        return;
    }

    // Agents with residual capacity, with O(1) removal via a position index.
    std::vector<AgentId> available = grid;
    std::vector<std::ptrdiff_t> slot(citizens.size(), -1);
    for (std::size_t i = 0; i < available.size(); ++i) {
        slot[static_cast<std::size_t>(available[i])] = static_cast<std::ptrdiff_t>(i);
    }
    auto remove = [&](AgentId id) {
        const auto s = slot[static_cast<std::size_t>(id)];
        if (s < 0) {
            return;
        }
        const AgentId last = available.back();
        available[static_cast<std::size_t>(s)] = last;
        slot[static_cast<std::size_t>(last)] = s;
        available.pop_back();
        slot[static_cast<std::size_t>(id)] = -1;
    };
    auto partners = [&](AgentId id) -> std::vector<AgentId>& { return citizens[static_cast<std::size_t>(id)].agent_interaction; };
    auto is_partner = [&](AgentId a, AgentId b) {
        const auto& p = partners(a);
        return std::find(p.begin(), p.end(), b) != p.end();
    };

    std::vector<AgentId> order = grid;
    world.rng.shuffle(std::span<AgentId>(order));

    for (AgentId a : order) {
        while (partners(a).size() < cap) {
            std::size_t excluded = slot[static_cast<std::size_t>(a)] >= 0 ? 1 : 0;
            for (AgentId p : partners(a)) {
                if (slot[static_cast<std::size_t>(p)] >= 0) {
                    ++excluded;
                }
            }
            if (available.size() <= excluded) {
                break;
            }
            AgentId b;
            do {
                b = available[world.rng.index(available.size())];
            } while (b == a || is_partner(a, b));
            partners(a).push_back(b);
            partners(b).push_back(a);
            if (partners(b).size() >= cap) {
                remove(b);
            }
        }
        if (partners(a).size() >= cap) {
            remove(a);
        }
    }
}

std::vector<TransmissionEvent> transmission_step(WorldState& world)
{
    std::vector<TransmissionEvent> events;
    auto& citizens = world.citizens;
    const double rate = world.config.infection_rate;
    for (auto& a : citizens) {
        for (AgentId bid : a.agent_interaction) {
            if (bid <= a.id()) {
                continue;
            }
            auto& b = citizens[static_cast<std::size_t>(bid)];
            Citizen* source = nullptr;
            Citizen* target = nullptr;
            if (a.health.is_infected() && b.health.state == HealthState::Susceptible) {
                source = &a;
                target = &b;
            } else if (b.health.is_infected() && a.health.state == HealthState::Susceptible) {
                source = &b;
                target = &a;
            } else {
                continue;
            }
            if (world.rng.uniform01() < rate) {
                target->health = {HealthState::ToBeInfected, std::nullopt};
                events.push_back({source->id(), target->id()});
            }
        }
    }
    return events;
}

void end_of_day(WorldState& world, int new_exposures)
{
    int on_day_four = 0;
    int mobility = 0;
    std::size_t contact_ends = 0;
    for (const auto& c : world.citizens) {
        if (c.health.is_infected() && c.health.day_infected == 4) {
            ++on_day_four;
        }
        if (c.location == Location::Grid) {
            ++mobility;
        }
        contact_ends += c.agent_interaction.size();
    }
    for (auto& c : world.citizens) {
        c.health = promote_exposures(c.health);
    }
    for (auto& c : world.citizens) {
        c.health = advance_disease(c.health);
    }

    const auto counts = count_compartments(world.citizens);
    DayMetrics m;
    m.day = world.day;
    m.new_cases = on_day_four;
    m.mobility_count = mobility;
    m.infected_count = counts.infected;
    m.susceptible_count = counts.susceptible;
    m.recovered_count = counts.recovered;
    m.total_contacts = static_cast<int>(contact_ends / 2);
    world.metrics.push_back(m);

    world.track_contact_rate.push_back(m.total_contacts);
    world.day_infected_is_4.push_back(on_day_four);
    world.list_new_cases.push_back(new_exposures);
    world.daily_new_cases = on_day_four;
    world.day += 1;

    const auto& ms = world.metrics;
    if (ms.size() >= 2 && ms[ms.size() - 1].infected_count == 0 && ms[ms.size() - 2].infected_count == 0) {
        world.early_stopped = true;
    }
}

std::vector<TransmissionEvent> step_day(WorldState& world, DecisionBackend& backend)
{
    decision_phase(world, backend);
    build_interactions(world);
    auto events = transmission_step(world);
    end_of_day(world, static_cast<int>(events.size()));
    return events;
}

} // namespace gabm
