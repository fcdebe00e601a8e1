#include "gabm/oracle.hpp"

#include "gabm/error.hpp"

#include <fmt/format.h>

#include <cmath>
#include <limits>

namespace gabm {

OraclePolicy OraclePolicy::table1_regression3()
{
    return OraclePolicy{};
}

OraclePolicy OraclePolicy::table1_with_traits()
{
    OraclePolicy p;
    p.coef_light_cough = 5.60;
    p.coef_fever_cough = 5.13;
    p.coef_prevalence = 3.95;
    p.coef_prevalence_sq = -0.65;
    p.coef_traits = {-0.26, -0.11, -0.70, -0.59, -0.87};
    return p;
}

void validate(const OraclePolicy& p)
{
    auto check = [](double v, std::string_view field) {
        if (!std::isfinite(v)) {
            throw ConfigError(fmt::format("oracle.{} must be finite", field));
        }
    };
    check(p.intercept, "intercept");
    check(p.coef_light_cough, "coef_light_cough");
    check(p.coef_fever_cough, "coef_fever_cough");
    check(p.coef_prevalence, "coef_prevalence");
    check(p.coef_prevalence_sq, "coef_prevalence_sq");
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        check(p.coef_traits[i], fmt::format("coef_traits.{}", factor_key(static_cast<TraitFactor>(i))));
    }
    if (p.deterministic_threshold) {
        check(*p.deterministic_threshold, "deterministic_threshold");
    }
}

nlohmann::json to_json(const OraclePolicy& p)
{
    nlohmann::json traits = nlohmann::json::object();
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        traits[std::string(factor_key(static_cast<TraitFactor>(i)))] = p.coef_traits[i];
    }
    nlohmann::json j{{"intercept", p.intercept},
                     {"coef_light_cough", p.coef_light_cough},
                     {"coef_fever_cough", p.coef_fever_cough},
                     {"coef_prevalence", p.coef_prevalence},
                     {"coef_prevalence_sq", p.coef_prevalence_sq},
                     {"coef_traits", traits}};
    j["deterministic_threshold"] = p.deterministic_threshold ? nlohmann::json(*p.deterministic_threshold) : nlohmann::json(nullptr);
    return j;
}

OraclePolicy oracle_policy_from_json(const nlohmann::json& j, std::string_view where)
{
    if (!j.is_object()) {
        throw ConfigError(fmt::format("{}: expected an object", where));
    }
    OraclePolicy p;
    auto num = [&](std::string_view key, double& dst) {
        auto it = j.find(key);
        if (it == j.end()) {
            return;
        }
        if (!it->is_number()) {
            throw ConfigError(fmt::format("{}.{}: expected a number", where, key));
        }
        dst = it->get<double>();
    };
    num("intercept", p.intercept);
    num("coef_light_cough", p.coef_light_cough);
    num("coef_fever_cough", p.coef_fever_cough);
    num("coef_prevalence", p.coef_prevalence);
    num("coef_prevalence_sq", p.coef_prevalence_sq);
    if (auto it = j.find("coef_traits"); it != j.end()) {
        if (!it->is_object()) {
            throw ConfigError(fmt::format("{}.coef_traits: expected an object keyed by factor", where));
        }
        for (const auto& [key, value] : it->items()) {
            bool known = false;
            for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
                if (factor_key(static_cast<TraitFactor>(i)) == key) {
                    if (!value.is_number()) {
                        throw ConfigError(fmt::format("{}.coef_traits.{}: expected a number", where, key));
                    }
                    p.coef_traits[i] = value.get<double>();
                    known = true;
                }
            }
            if (!known) {
                throw ConfigError(fmt::format("{}.coef_traits.{}: unknown trait factor", where, key));
            }
        }
    }
    if (auto it = j.find("deterministic_threshold"); it != j.end() && !it->is_null()) {
        if (!it->is_number()) {
            throw ConfigError(fmt::format("{}.deterministic_threshold: expected a number or null", where));
        }
        p.deterministic_threshold = it->get<double>();
    }
    try {
        validate(p);
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", where, e.what()));
    }
    return p;
}

OracleFeatures oracle_features(const DecisionContext& ctx)
{
    OracleFeatures f;
    if (ctx.symptom) {
        f.light_cough = *ctx.symptom == Symptom::LightCough ? 1.0 : 0.0;
        f.fever_cough = *ctx.symptom == Symptom::FeverCough ? 1.0 : 0.0;
    }
    if (ctx.prevalence) {
        f.prevalence = ctx.prevalence->value();
    }
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        f.traits[i] = ctx.persona.traits[i] == Polarity::Positive ? 1.0 : 0.0;
    }
    return f;
}

double logistic(double z)
{
    if (z >= 0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double stay_home_logit(const OraclePolicy& p, const OracleFeatures& f)
{
    double z = p.intercept + p.coef_light_cough * f.light_cough + p.coef_fever_cough * f.fever_cough +
               p.coef_prevalence * f.prevalence + p.coef_prevalence_sq * f.prevalence * f.prevalence;
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        z += p.coef_traits[i] * f.traits[i];
    }
    return z;
}

double stay_home_probability(const OraclePolicy& policy, const DecisionContext& ctx)
{
    const double p = logistic(stay_home_logit(policy, oracle_features(ctx)));
    constexpr double lo = std::numeric_limits<double>::min();
    const double hi = std::nextafter(1.0, 0.0);
    return std::clamp(p, lo, hi);
}

double calibrate_intercept(double baseline_go_out)
{
    if (!(baseline_go_out > 0.0 && baseline_go_out < 1.0)) {
        throw ConfigError("baseline go-out probability must lie strictly between 0 and 1");
    }
    return std::log((1.0 - baseline_go_out) / baseline_go_out);
}

namespace {

std::string explain(const DecisionContext& ctx, const OraclePolicy& policy, bool stay_home)
{
    const auto f = oracle_features(ctx);
    const std::string& name = ctx.persona.name;
    const double symptom_term = policy.coef_light_cough * f.light_cough + policy.coef_fever_cough * f.fever_cough;
    const double news_term = policy.coef_prevalence * f.prevalence + policy.coef_prevalence_sq * f.prevalence * f.prevalence;
    double trait_term = 0.0;
    for (std::size_t i = 0; i < kTraitFactorCount; ++i) {
        trait_term += policy.coef_traits[i] * f.traits[i];
    }

    std::string driver;
    const double strongest = std::max({std::abs(symptom_term), std::abs(news_term), std::abs(trait_term)});
    if (strongest < 0.5) {
        driver = "the need to earn money";
    } else if (strongest == std::abs(symptom_term)) {
        driver = f.fever_cough > 0 ? "having a fever and a cough" : "having a light cough";
    } else if (strongest == std::abs(news_term)) {
        driver = fmt::format("{}% of Dewberry Hollow catching new infections yesterday", ctx.prevalence ? ctx.prevalence->str() : "0.0");
    } else {
        driver = "personality";
    }
    return stay_home ? fmt::format("{} stays home mainly because of {}.", name, driver)
                     : fmt::format("{} goes to work; {} weighs most.", name, driver);
}

} // namespace

DecisionOutcome scripted_decide(const DecisionContext& ctx, const OraclePolicy& policy, Rng& rng)
{
    const double p = stay_home_probability(policy, ctx);
    DecisionOutcome out;
    out.stay_home = policy.deterministic_threshold ? p >= *policy.deterministic_threshold : rng.bernoulli(p);
    out.reasoning = explain(ctx, policy, out.stay_home);
    out.raw_response = fmt::format("Reasoning: {}\nResponse: {}", out.reasoning, out.stay_home ? "Yes" : "No");
    out.conforming = true;
    return out;
}

OracleBackend::OracleBackend(OraclePolicy policy, std::uint64_t seed) : policy_(policy), seed_(seed)
{
    validate(policy_);
}

DecisionOutcome OracleBackend::decide(const DecisionContext& ctx)
{
    Rng rng(derive_seed(seed_, static_cast<std::uint64_t>(ctx.day), static_cast<std::uint64_t>(ctx.persona.agent_id)));
    return scripted_decide(ctx, policy_, rng);
}

} // namespace gabm
