#pragma once

#include <optional>
#include <string>
#include <string_view>

namespace gabm {

enum class HealthState { Susceptible, ToBeInfected, Infected, Recovered };

/// Length of an infection in days; every infected day is infectious.
inline constexpr int kInfectionDays = 6;

/// What an agent feels, and so what its health sentence says.
enum class Symptom { Normal, LightCough, FeverCough };

struct HealthCondition {
    HealthState state = HealthState::Susceptible;
    /// Present iff state == Infected. 0 only transiently between promotion and advance.
    std::optional<int> day_infected;

    static HealthCondition susceptible() { return {}; }
    static HealthCondition infected(int day) { return {HealthState::Infected, day}; }
    static HealthCondition recovered() { return {HealthState::Recovered, std::nullopt}; }

    bool is_infected() const { return state == HealthState::Infected; }
    bool operator==(const HealthCondition&) const = default;
};

std::string_view to_string(HealthState s);
/// Throws ConfigError for unknown names.
HealthState parse_health_state(std::string_view s);

/// Days 1-2 feel normal, days 3 and 6 a light cough, days 4-5 fever and cough.
Symptom symptom_of(const HealthCondition& h);

/// "<name> feels normal." / "<name> has a light cough." / "<name> has a fever and a cough."
std::string health_string(const HealthCondition& h, std::string_view name);
std::string health_string(Symptom s, std::string_view name);

/// Infected day d -> d+1; past the last infected day -> Recovered.
HealthCondition advance_disease(const HealthCondition& h);

/// ToBeInfected -> Infected day 0.
HealthCondition promote_exposures(const HealthCondition& h);

} // namespace gabm
