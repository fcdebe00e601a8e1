#pragma once

#include "gabm/decision.hpp"
#include "gabm/random.hpp"

#include "json.hpp"

#include <array>
#include <cstdint>
#include <optional>

namespace gabm {

/// Logistic stay-home policy standing in for the language model in offline runs.
///
/// logit = intercept + light_cough * [light cough] + fever_cough * [fever and cough]
///       + prevalence * X + prevalence_sq * X^2 + sum_f trait[f] * [factor f positive]
/// where X is the prevalence percentage the agent was told (0 outside the Full condition)
/// and symptom flags are 0 under Base.
struct OraclePolicy {
    double intercept = -4.0;
    double coef_light_cough = 5.40;
    double coef_fever_cough = 4.94;
    double coef_prevalence = 3.97;
    double coef_prevalence_sq = -0.65;
    /// Indexed by TraitFactor; applied when the factor's positive pole is held.
    std::array<double, kTraitFactorCount> coef_traits{};
    /// When set, stay home iff p >= threshold instead of sampling.
    std::optional<double> deterministic_threshold;

    /// Stay-home regression on own and societal health with the squared prevalence term.
    static OraclePolicy table1_regression3();
    /// Same, plus the trait coefficients of the covariate regression.
    static OraclePolicy table1_with_traits();

    bool operator==(const OraclePolicy&) const = default;
};

/// Throws ConfigError if any coefficient or the threshold is not finite.
void validate(const OraclePolicy& policy);

nlohmann::json to_json(const OraclePolicy& policy);
/// Missing fields keep their defaults. Throws ConfigError naming the field.
OraclePolicy oracle_policy_from_json(const nlohmann::json& j, std::string_view where = "backend.oracle");

/// Design row seen by the policy.
struct OracleFeatures {
    double light_cough = 0.0;
    double fever_cough = 0.0;
    double prevalence = 0.0;
    std::array<double, kTraitFactorCount> traits{};
};

OracleFeatures oracle_features(const DecisionContext& ctx);

double logistic(double z);
double stay_home_logit(const OraclePolicy& policy, const OracleFeatures& f);
/// Probability of staying home, kept inside the open interval (0, 1).
double stay_home_probability(const OraclePolicy& policy, const DecisionContext& ctx);

/// Intercept giving a healthy agent at 0% prevalence the requested go-out probability.
double calibrate_intercept(double baseline_go_out);

DecisionOutcome scripted_decide(const DecisionContext& ctx, const OraclePolicy& policy, Rng& rng);

/// Each (day, agent) decision draws from its own stream derived from the run seed, so
/// outcomes do not depend on evaluation order and need no checkpointed state.
class OracleBackend final : public DecisionBackend {
public:
    OracleBackend(OraclePolicy policy, std::uint64_t seed);
    DecisionOutcome decide(const DecisionContext& ctx) override;
    std::string name() const override { return "oracle"; }
    const OraclePolicy& policy() const { return policy_; }

private:
    OraclePolicy policy_;
    std::uint64_t seed_;
};

} // namespace gabm
