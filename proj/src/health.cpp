#include "gabm/health.hpp"

#include "gabm/error.hpp"

namespace gabm {

std::string_view to_string(HealthState s)
{
    switch (s) {
    case HealthState::Susceptible:
        return "Susceptible";
    case HealthState::ToBeInfected:
        return "To_Be_Infected";
    case HealthState::Infected:
        return "Infected";
    case HealthState::Recovered:
        return "Recovered";
    }
    return "?";
}

HealthState parse_health_state(std::string_view s)
{
    for (auto st : {HealthState::Susceptible, HealthState::ToBeInfected, HealthState::Infected, HealthState::Recovered}) {
        if (to_string(st) == s) {
            return st;
        }
    }
    throw ConfigError("unknown health state '" + std::string(s) + "'");
}

Symptom symptom_of(const HealthCondition& h)
{
    if (!h.is_infected() || !h.day_infected) {
        return Symptom::Normal;
    }
    switch (*h.day_infected) {
    case 3:
    case 6:
        return Symptom::LightCough;
    case 4:
    case 5:
        return Symptom::FeverCough;
    default:
        return Symptom::Normal;
    }
}

std::string health_string(Symptom s, std::string_view name)
{
    std::string out(name);
    switch (s) {
    case Symptom::Normal:
        out += " feels normal.";
        break;
    case Symptom::LightCough:
        out += " has a light cough.";
        break;
    case Symptom::FeverCough:
        out += " has a fever and a cough.";
        break;
    }
    return out;
}

std::string health_string(const HealthCondition& h, std::string_view name)
{
    return health_string(symptom_of(h), name);
}

HealthCondition advance_disease(const HealthCondition& h)
{
    if (!h.is_infected()) {
        return h;
    }
    const int next = h.day_infected.value_or(0) + 1;
    if (next > kInfectionDays) {
        return HealthCondition::recovered();
    }
    return HealthCondition::infected(next);
}

HealthCondition promote_exposures(const HealthCondition& h)
{
    if (h.state == HealthState::ToBeInfected) {
        return HealthCondition::infected(0);
    }
    return h;
}

} // namespace gabm
