#pragma once

#include "gabm/names.hpp"
#include "gabm/random.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

namespace gabm {

using AgentId = std::int32_t;

enum class Gender { Female, Male };

/// Big Five factors, in the order used for storage, config files and the decision log.
enum class TraitFactor { Surgency = 0, Agreeableness, Conscientiousness, EmotionalStability, Intellect };
inline constexpr std::size_t kTraitFactorCount = 5;

enum class Polarity { Positive, Negative };

inline constexpr int kMinAge = 18;
inline constexpr int kMaxAge = 64;

/// Labels for both poles of every factor.
struct TraitVocabulary {
    std::array<std::string, kTraitFactorCount> positive;
    std::array<std::string, kTraitFactorCount> negative;

    static const TraitVocabulary& standard();
};

struct Persona {
    AgentId agent_id = 0;
    std::string name;
    int age = kMinAge;
    Gender gender = Gender::Female;
    /// One polarity per factor, indexed by TraitFactor.
    std::array<Polarity, kTraitFactorCount> traits{};

    Polarity trait(TraitFactor f) const { return traits[static_cast<std::size_t>(f)]; }
    bool operator==(const Persona&) const = default;
};

std::string_view to_string(Gender g);
Gender parse_gender(std::string_view s);
std::string_view factor_name(TraitFactor f);
/// snake_case column key ("emotional_stability").
std::string_view factor_key(TraitFactor f);

/// Order in which traits are listed inside a prompt.
inline constexpr std::array<TraitFactor, kTraitFactorCount> kPromptTraitOrder = {
    TraitFactor::Agreeableness, TraitFactor::Conscientiousness, TraitFactor::Surgency,
    TraitFactor::EmotionalStability, TraitFactor::Intellect};

/// "Distrust, Indecisiveness, ..." in prompt order.
std::string trait_list(const Persona& p, const TraitVocabulary& vocab = TraitVocabulary::standard());

/// Draws age, gender, name and trait polarities. Throws ConfigError on an empty pool.
Persona sample_persona(Rng& rng, AgentId id, const NamePool& pool = default_name_pool());

} // namespace gabm
