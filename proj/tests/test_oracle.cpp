#include "doctest.h"

#include "gabm/error.hpp"
#include "gabm/oracle.hpp"

#include <cmath>

using namespace gabm;

namespace {

Persona someone(AgentId id = 1)
{
    Persona p;
    p.agent_id = id;
    p.name = "Maya";
    p.age = 40;
    p.traits.fill(Polarity::Negative);
    return p;
}

double closed_form(double z)
{
    return 1.0 / (1.0 + std::exp(-z));
}

} // namespace

TEST_CASE("healthy agent at zero prevalence almost always goes out")
{
    const auto policy = OraclePolicy::table1_regression3();
    const auto ctx = make_context(someone(), HealthCondition::susceptible(), Condition::Full, 0, PrevalencePct());
    const double p = stay_home_probability(policy, ctx);
    CHECK(p == doctest::Approx(0.018).epsilon(0.02));
    CHECK(1.0 - p >= 0.97);
    CHECK(calibrate_intercept(1.0 - closed_form(-4.0)) == doctest::Approx(-4.0));
    CHECK_THROWS_AS(calibrate_intercept(1.0), ConfigError);
}

TEST_CASE("table 1 regression 3 coefficients")
{
    const auto p = OraclePolicy::table1_regression3();
    CHECK(p.coef_light_cough == 5.40);
    CHECK(p.coef_fever_cough == 4.94);
    CHECK(p.coef_prevalence == 3.97);
    CHECK(p.coef_prevalence_sq == -0.65);
    const auto t = OraclePolicy::table1_with_traits();
    CHECK(t.coef_traits[static_cast<std::size_t>(TraitFactor::Intellect)] == -0.87);
    CHECK(t.coef_traits[static_cast<std::size_t>(TraitFactor::Conscientiousness)] == -0.70);
}

TEST_CASE("features follow the condition's visibility")
{
    const auto policy = OraclePolicy::table1_regression3();
    const auto h = HealthCondition::infected(4);
    const auto prev = PrevalencePct::from_tenths(44);
    const double base = stay_home_probability(policy, make_context(someone(), h, Condition::Base, 1, prev));
    const double self = stay_home_probability(policy, make_context(someone(), h, Condition::SelfHealth, 1, prev));
    const double full = stay_home_probability(policy, make_context(someone(), h, Condition::Full, 1, prev));
    CHECK(base == doctest::Approx(closed_form(-4.0)));
    CHECK(self == doctest::Approx(closed_form(-4.0 + 4.94)));
    CHECK(full == doctest::Approx(closed_form(-4.0 + 4.94 + 3.97 * 4.4 - 0.65 * 4.4 * 4.4)));
    const double cough = stay_home_probability(policy, make_context(someone(), HealthCondition::infected(6), Condition::SelfHealth, 1, prev));
    CHECK(cough == doctest::Approx(closed_form(-4.0 + 5.40)));
}

TEST_CASE("trait coefficients apply to positive poles")
{
    auto policy = OraclePolicy::table1_with_traits();
    auto p = someone();
    p.traits[static_cast<std::size_t>(TraitFactor::Intellect)] = Polarity::Positive;
    const auto ctx = make_context(p, HealthCondition::susceptible(), Condition::Base, 0, PrevalencePct());
    CHECK(stay_home_probability(policy, ctx) == doctest::Approx(closed_form(-4.0 - 0.87)));
}

TEST_CASE("sampled frequency matches the closed-form probability")
{
    const auto policy = OraclePolicy::table1_regression3();
    OracleBackend backend(policy, 77);
    const auto prev = PrevalencePct::from_tenths(10);
    int stay = 0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        auto ctx = make_context(someone(i), HealthCondition::susceptible(), Condition::Full, i % 50, prev);
        stay += backend.decide(ctx).stay_home;
    }
    const double expected = closed_form(-4.0 + 3.97 - 0.65);
    const double sd = std::sqrt(expected * (1 - expected) / n);
    CHECK(std::abs(stay / double(n) - expected) < 4 * sd);
}

TEST_CASE("oracle decisions are reproducible per (seed, day, agent)")
{
    const auto policy = OraclePolicy::table1_regression3();
    OracleBackend a(policy, 5);
    OracleBackend b(policy, 5);
    const auto prev = PrevalencePct::from_tenths(20);
    for (int i = 0; i < 200; ++i) {
        auto ctx = make_context(someone(i), HealthCondition::infected(1 + i % 6), Condition::Full, i % 7, prev);
        const auto x = a.decide(ctx);
        const auto y = b.decide(ctx);
        CHECK(x == y);
        CHECK(x.conforming);
        CHECK(!x.reasoning.empty());
    }
}

TEST_CASE("deterministic threshold")
{
    auto policy = OraclePolicy::table1_regression3();
    policy.deterministic_threshold = 0.5;
    Rng rng(1);
    auto sick = make_context(someone(), HealthCondition::infected(4), Condition::SelfHealth, 0, PrevalencePct());
    auto well = make_context(someone(), HealthCondition::susceptible(), Condition::SelfHealth, 0, PrevalencePct());
    for (int i = 0; i < 20; ++i) {
        CHECK(scripted_decide(sick, policy, rng).stay_home);
        CHECK(!scripted_decide(well, policy, rng).stay_home);
    }
    policy.deterministic_threshold = 1.0;
    policy.intercept = 100.0;
    CHECK(!scripted_decide(well, policy, rng).stay_home);
}

TEST_CASE("policy JSON round trip and validation")
{
    auto policy = OraclePolicy::table1_with_traits();
    policy.deterministic_threshold = 0.7;
    CHECK(oracle_policy_from_json(to_json(policy)) == policy);
    auto j = to_json(policy);
    j["coef_prevalence"] = "high";
    CHECK_THROWS_WITH_AS(oracle_policy_from_json(j), doctest::Contains("coef_prevalence"), ConfigError);
    policy.intercept = std::nan("");
    CHECK_THROWS_AS(validate(policy), ConfigError);
}
