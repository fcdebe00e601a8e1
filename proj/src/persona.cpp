#include "gabm/persona.hpp"

#include "gabm/error.hpp"

#include <string>

namespace gabm {

const TraitVocabulary& TraitVocabulary::standard()
{
    static const TraitVocabulary vocab{
        {"Surgency", "Agreeableness", "Conscientiousness", "Emotional stability", "Intellect"},
        {"Unaggressiveness", "Distrust", "Indecisiveness", "Independence", "Imperceptiveness"},
    };
    return vocab;
}

std::string_view to_string(Gender g)
{
    return g == Gender::Female ? "female" : "male";
}

Gender parse_gender(std::string_view s)
{
    if (s == "female") {
        return Gender::Female;
    }
    if (s == "male") {
        return Gender::Male;
    }
    throw ConfigError("unknown gender '" + std::string(s) + "'");
}

std::string_view factor_name(TraitFactor f)
{
    switch (f) {
    case TraitFactor::Surgency:
        return "Surgency";
    case TraitFactor::Agreeableness:
        return "Agreeableness";
    case TraitFactor::Conscientiousness:
        return "Conscientiousness";
    case TraitFactor::EmotionalStability:
        return "Emotional stability";
    case TraitFactor::Intellect:
        return "Intellect";
    }
    return "?";
}

std::string_view factor_key(TraitFactor f)
{
    switch (f) {
    case TraitFactor::Surgency:
        return "surgency";
    case TraitFactor::Agreeableness:
        return "agreeableness";
    case TraitFactor::Conscientiousness:
        return "conscientiousness";
    case TraitFactor::EmotionalStability:
        return "emotional_stability";
    case TraitFactor::Intellect:
        return "intellect";
    }
    return "?";
}

std::string trait_list(const Persona& p, const TraitVocabulary& vocab)
{
    std::string out;
    for (TraitFactor f : kPromptTraitOrder) {
        if (!out.empty()) {
            out += ", ";
        }
        const auto i = static_cast<std::size_t>(f);
        out += p.traits[i] == Polarity::Positive ? vocab.positive[i] : vocab.negative[i];
    }
    return out;
}

Persona sample_persona(Rng& rng, AgentId id, const NamePool& pool)
{
    if (pool.female.empty() || pool.male.empty()) {
        throw ConfigError("name pool must contain at least one name per gender");
    }
    Persona p;
    p.agent_id = id;
    p.age = static_cast<int>(rng.uniform_int(kMinAge, kMaxAge));
    p.gender = rng.bernoulli(0.5) ? Gender::Male : Gender::Female;
    const auto& names = p.gender == Gender::Female ? pool.female : pool.male;
    p.name = names[rng.index(names.size())];
    for (auto& t : p.traits) {
        t = rng.bernoulli(0.5) ? Polarity::Positive : Polarity::Negative;
    }
    return p;
}

} // namespace gabm
