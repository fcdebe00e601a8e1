#include "gabm/decision.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>

namespace gabm {

std::string_view to_string(Condition c)
{
    switch (c) {
    case Condition::Base:
        return "base";
    case Condition::SelfHealth:
        return "selfhealth";
    case Condition::Full:
        return "full";
    }
    return "?";
}

Condition parse_condition(std::string_view s)
{
    if (s == "base") {
        return Condition::Base;
    }
    if (s == "selfhealth" || s == "self-health") {
        return Condition::SelfHealth;
    }
    if (s == "full") {
        return Condition::Full;
    }
    throw ConfigError(fmt::format("unknown condition '{}' (expected base, selfhealth or full)", s));
}

PrevalencePct PrevalencePct::from_counts(long cases, long population)
{
    if (population <= 0) {
        throw std::invalid_argument("population must be positive");
    }
    // round(1000 * cases / population), half-up, in integers
    return PrevalencePct((2000 * cases + population) / (2 * population));
}

std::string PrevalencePct::str() const
{
    const long whole = tenths_ / 10;
    const long frac = tenths_ % 10;
    if (tenths_ < 0) {
        return fmt::format("-{}.{}", -whole, -frac);
    }
    return fmt::format("{}.{}", whole, frac);
}

DecisionContext make_context(const Persona& persona, const HealthCondition& health, Condition condition, int day,
                             PrevalencePct prevalence)
{
    DecisionContext ctx;
    ctx.persona = persona;
    ctx.condition = condition;
    ctx.day = day;
    if (condition != Condition::Base) {
        ctx.symptom = symptom_of(health);
        ctx.health_sentence = health_string(*ctx.symptom, persona.name);
    }
    if (condition == Condition::Full) {
        ctx.prevalence = prevalence;
    }
    return ctx;
}

DecisionOutcome ConstantBackend::decide(const DecisionContext& ctx)
{
    DecisionOutcome out;
    out.stay_home = stay_home_;
    out.reasoning = stay_home_ ? ctx.persona.name + " stays home." : ctx.persona.name + " goes to work.";
    out.raw_response = fmt::format("Reasoning: {}\nResponse: {}", out.reasoning, stay_home_ ? "Yes" : "No");
    return out;
}

} // namespace gabm
