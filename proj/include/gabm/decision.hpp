#pragma once

#include "gabm/health.hpp"
#include "gabm/persona.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace gabm {

/// Feedback regime: what the agent is told before deciding.
enum class Condition { Base, SelfHealth, Full };

std::string_view to_string(Condition c);
/// Accepts "base", "selfhealth"/"self-health", "full". Throws ConfigError otherwise.
Condition parse_condition(std::string_view s);

/// A percentage held in tenths so that rendering and arithmetic agree exactly.
class PrevalencePct {
public:
    constexpr PrevalencePct() = default;
    static constexpr PrevalencePct from_tenths(long tenths) { return PrevalencePct(tenths); }
    /// 100 * cases / population, rounded half-up to one decimal.
    static PrevalencePct from_counts(long cases, long population);

    constexpr long tenths() const { return tenths_; }
    constexpr double value() const { return static_cast<double>(tenths_) / 10.0; }
    /// "4.4", "0.0", "12.5"
    std::string str() const;

    constexpr bool operator==(const PrevalencePct&) const = default;

private:
    constexpr explicit PrevalencePct(long t) : tenths_(t) {}
    long tenths_ = 0;
};

struct DecisionContext {
    Persona persona;
    Condition condition = Condition::Base;
    int day = 0;
    /// Present iff condition != Base.
    std::optional<Symptom> symptom;
    std::optional<std::string> health_sentence;
    /// Present iff condition == Full.
    std::optional<PrevalencePct> prevalence;
};

/// Builds a context honoring the condition's visibility rules.
DecisionContext make_context(const Persona& persona, const HealthCondition& health, Condition condition, int day,
                             PrevalencePct prevalence);

struct DecisionOutcome {
    bool stay_home = false;
    std::string reasoning;
    std::string raw_response;
    /// False when the reply had no explicit yes/no verdict; stay_home is then false.
    bool conforming = true;

    bool operator==(const DecisionOutcome&) const = default;
};

/// Produces one agent's daily verdict. Implementations that report max_concurrency() > 1
/// must tolerate concurrent decide() calls.
class DecisionBackend {
public:
    virtual ~DecisionBackend() = default;
    virtual DecisionOutcome decide(const DecisionContext& ctx) = 0;
    virtual std::size_t max_concurrency() const { return 1; }
    /// True when outcomes depend only on (context, seed).
    virtual bool deterministic() const { return true; }
    virtual std::string name() const = 0;
};

/// Constant policy; always-out and always-home backends.
class ConstantBackend final : public DecisionBackend {
public:
    explicit ConstantBackend(bool stay_home) : stay_home_(stay_home) {}
    DecisionOutcome decide(const DecisionContext& ctx) override;
    std::string name() const override { return stay_home_ ? "always-home" : "always-out"; }

private:
    bool stay_home_;
};

} // namespace gabm
