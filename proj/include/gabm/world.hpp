#pragma once

#include "gabm/decision.hpp"
#include "gabm/health.hpp"
#include "gabm/persona.hpp"
#include "gabm/random.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace gabm {

enum class Location { Home, Grid };

struct Citizen {
    Persona persona;
    HealthCondition health;
    Location location = Location::Home;
    /// Partners for the current day; symmetric across citizens, no self, no duplicates.
    std::vector<AgentId> agent_interaction;

    AgentId id() const { return persona.agent_id; }
    bool operator==(const Citizen&) const = default;
};

inline constexpr int kDefaultStepCount = 68;

struct WorldConfig {
    int initial_healthy = 99;
    int initial_infected = 1;
    /// Maximum distinct partners per agent per day.
    int contact_rate = 5;
    /// Transmission probability per infectious contact.
    double infection_rate = 0.1;
    int step_count = kDefaultStepCount;
    Condition condition = Condition::Base;
    std::uint64_t seed = 1;
    std::string run_name = "run";

    int population() const { return initial_healthy + initial_infected; }
    bool operator==(const WorldConfig&) const = default;
};

/// Throws ConfigError naming the first offending field.
void validate(const WorldConfig& cfg);

struct DayMetrics {
    int day = 0;
    /// Agents on their fourth infected day.
    int new_cases = 0;
    int mobility_count = 0;
    int infected_count = 0;
    int susceptible_count = 0;
    int recovered_count = 0;
    int total_contacts = 0;

    bool operator==(const DayMetrics&) const = default;
};

struct DecisionLogRow {
    int day = 0;
    AgentId agent_id = 0;
    int age = 0;
    Gender gender = Gender::Female;
    std::array<Polarity, kTraitFactorCount> traits{};
    HealthState health_state = HealthState::Susceptible;
    std::optional<int> day_infected;
    PrevalencePct prevalence;
    bool stay_home = false;
    bool conforming = true;
    std::string reasoning;

    bool operator==(const DecisionLogRow&) const = default;
};

/// An infected agent exposing a susceptible one along a contact edge.
struct TransmissionEvent {
    AgentId source = 0;
    AgentId target = 0;
};

struct WorldState {
    WorldConfig config;
    /// Completed days.
    int day = 0;
    std::vector<Citizen> citizens;
    /// Per-day undirected contact counts.
    std::vector<int> track_contact_rate;
    /// Per-day tallies of agents on infection day 4.
    std::vector<int> day_infected_is_4;
    /// Per-day counts of new exposures (transmission events).
    std::vector<int> list_new_cases;
    /// Day-4 tally from the previous day; what the next prompts report.
    int daily_new_cases = 0;
    std::vector<DayMetrics> metrics;
    std::vector<DecisionLogRow> decision_log;
    bool early_stopped = false;
    Rng rng;

    int population() const { return static_cast<int>(citizens.size()); }
    /// The run has nothing left to simulate.
    bool finished() const { return early_stopped || day >= config.step_count; }
    bool operator==(const WorldState&) const = default;
};

struct CompartmentCounts {
    int susceptible = 0;
    int to_be_infected = 0;
    int infected = 0;
    int recovered = 0;

    int total() const { return susceptible + to_be_infected + infected + recovered; }
};

CompartmentCounts count_compartments(const std::vector<Citizen>& citizens);

/// Agents 0..initial_infected-1 start Infected on day 1; personas drawn from the world rng.
WorldState init_world(const WorldConfig& cfg, const NamePool& names = default_name_pool());

/// Prevalence agents are told about today: yesterday's day-4 tally over the population.
PrevalencePct current_prevalence(const WorldState& world);

/// Asks every agent, applies outcomes in id order, appends decision-log rows.
/// Rethrows the first backend failure before touching any state.
void decision_phase(WorldState& world, DecisionBackend& backend);

/// Pairs Grid agents under the contact_rate cap on both endpoints.
void build_interactions(WorldState& world);

/// One Bernoulli(infection_rate) draw per Infected-Susceptible edge.
std::vector<TransmissionEvent> transmission_step(WorldState& world);

/// Tally, promote, advance, record metrics, roll the day counter, check early stop.
void end_of_day(WorldState& world, int new_exposures);

/// decision -> interactions -> transmission -> end_of_day.
std::vector<TransmissionEvent> step_day(WorldState& world, DecisionBackend& backend);

} // namespace gabm
