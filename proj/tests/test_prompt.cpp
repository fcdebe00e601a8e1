#include "doctest.h"

#include "gabm/prompt.hpp"
#include "gabm/random.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace gabm;

namespace {

std::string slurp(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    REQUIRE_MESSAGE(f.good(), "missing file " << path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Persona liza()
{
    Persona p;
    p.agent_id = 14;
    p.name = "Liza";
    p.age = 29;
    p.gender = Gender::Female;
    p.traits.fill(Polarity::Negative);
    return p;
}

Persona golden_persona()
{
    Persona p;
    p.agent_id = 3;
    p.name = "Ezra";
    p.age = 47;
    p.gender = Gender::Male;
    p.traits = {Polarity::Positive, Polarity::Negative, Polarity::Positive, Polarity::Negative, Polarity::Positive};
    return p;
}

const std::string kFormatBlock = "\n"
                                 "If the answer is \"Yes,\" please state your reasoning as \"Reasoning: [explanation].\"\n"
                                 "If the answer is \"No,\" please state your reasoning as \"Reasoning: [explanation].\"\n"
                                 "The format should be as follow:\n"
                                 "Reasoning:\n"
                                 "Response:\n"
                                 "Example response format:\n"
                                 "Reasoning: Liza is tired.\n"
                                 "Response: Yes\n"
                                 "It is important to provide Response in a single word.\n";

} // namespace

TEST_CASE("Liza's day-14 prompt is reproduced byte for byte")
{
    const std::string figure = slurp(std::string(GABM_TEST_DATA) + "/fixtures/liza_fig4a.txt");
    const auto ctx = make_context(liza(), HealthCondition::infected(4), Condition::Full, 14, PrevalencePct::from_tenths(44));
    const std::string prompt = build_prompt(ctx);
    REQUIRE(prompt.size() > figure.size());
    CHECK(prompt.substr(0, figure.size()) == figure);
    CHECK(prompt.substr(figure.size()) == kFormatBlock);
}

TEST_CASE("golden prompts for every condition and health string")
{
    const bool update = std::getenv("GABM_UPDATE_GOLDEN") != nullptr;
    const std::pair<const char*, HealthCondition> healths[] = {
        {"normal", HealthCondition::susceptible()},
        {"light_cough", HealthCondition::infected(3)},
        {"fever_cough", HealthCondition::infected(5)},
    };
    for (auto cond : {Condition::Base, Condition::SelfHealth, Condition::Full}) {
        for (const auto& [label, health] : healths) {
            const auto ctx = make_context(golden_persona(), health, cond, 10, PrevalencePct::from_counts(7, 100));
            const std::string prompt = build_prompt(ctx);
            const std::string path = std::string(GABM_TEST_DATA) + "/golden/prompt_" + std::string(to_string(cond)) + "_" + label + ".txt";
            if (update) {
                std::ofstream(path, std::ios::binary) << prompt;
            }
            CAPTURE(path);
            CHECK(prompt == slurp(path));
            const bool has_health = prompt.find("Ezra has a light cough.") != std::string::npos ||
                                    prompt.find("Ezra has a fever and a cough.") != std::string::npos || prompt.find("Ezra feels normal.") != std::string::npos;
            CHECK(has_health == (cond != Condition::Base));
            CHECK((prompt.find("7.0% of Dewberry Hollow") != std::string::npos) == (cond == Condition::Full));
        }
    }
}

TEST_CASE("parser reads the example response format")
{
    auto out = parse_response("Reasoning: Liza is tired.\nResponse: Yes");
    CHECK(out.stay_home);
    CHECK(out.conforming);
    CHECK(out.reasoning == "Liza is tired.");

    out = parse_response("Reasoning: She needs money\nand feels fine.\n\nResponse: no.");
    CHECK(!out.stay_home);
    CHECK(out.conforming);
    CHECK(out.reasoning == "She needs money and feels fine.");

    out = parse_response("**Reasoning:** fever\n**Response:** **YES**");
    CHECK(out.stay_home);
    CHECK(out.conforming);

    out = parse_response("response: \"No\"");
    CHECK(out.conforming);
    CHECK(!out.stay_home);
}

TEST_CASE("nonconforming replies default to going out")
{
    for (const char* raw : {"", "Yes", "I think she should stay home.", "Response: maybe", "Response:", "Response: Yesterday",
                            "Reasoning: unclear\nResponse: Y", "Response - Yes", "reason: x\nresp: yes"}) {
        CAPTURE(raw);
        const auto out = parse_response(raw);
        CHECK(!out.conforming);
        CHECK(!out.stay_home);
    }
}

TEST_CASE("parser totality over fuzzed replies")
{
    // Replies are assembled from parts whose verdict is known up front.
    Rng rng(2024);
    const std::string junk_chars = "abcdefghijklmnopqrstuvwxyz ABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789.,;:!?*_-\"'`()[]\t\r\n\xc3\xa9\xe2\x80\x94\x01";
    auto junk = [&] {
        std::string s;
        const auto len = rng.index(60);
        for (std::size_t i = 0; i < len; ++i) {
            s += junk_chars[rng.index(junk_chars.size())];
        }
        // Keep junk from forming a label by accident.
        for (auto& c : s) {
            if (c == ':') {
                c = ';';
            }
        }
        return s;
    };
    const std::string yes_forms[] = {"Yes", "yes", "YES", "Yes.", "**Yes**", "\"yes\"", "Yes!", "`YES`", "(yes)"};
    const std::string no_forms[] = {"No", "no", "NO", "No.", "**No**", "'no'", "No,", "[no]"};
    const std::string bad_forms[] = {"Maybe", "Y", "N", "Nope", "Yess", "", "Yes/No", "Undecided", "Yes-ish", "y e s"};
    const std::string labels[] = {"Response:", "response:", "RESPONSE:", "**Response:**", "  Response:"};

    int conforming = 0;
    for (int i = 0; i < 10000; ++i) {
        std::string raw;
        int expected = -1; // -1 nonconforming, 0 no, 1 yes
        const auto shape = rng.index(4);
        if (rng.bernoulli(0.5)) {
            raw += "Reasoning: " + junk() + "\n";
        }
        raw += junk();
        if (shape > 0) {
            raw += "\n" + labels[rng.index(std::size(labels))] + " ";
            if (shape == 1) {
                raw += yes_forms[rng.index(std::size(yes_forms))];
                expected = 1;
            } else if (shape == 2) {
                raw += no_forms[rng.index(std::size(no_forms))];
                expected = 0;
            } else {
                raw += bad_forms[rng.index(std::size(bad_forms))];
            }
            // An empty verdict followed by junk could start with a real word.
            if (rng.bernoulli(0.5) && !raw.ends_with(' ')) {
                raw += " " + junk();
            }
        }
        DecisionOutcome out;
        REQUIRE_NOTHROW(out = parse_response(raw));
        CAPTURE(raw);
        if (expected < 0) {
            REQUIRE(!out.conforming);
            REQUIRE(!out.stay_home);
        } else {
            REQUIRE(out.conforming);
            REQUIRE(out.stay_home == (expected == 1));
            ++conforming;
        }
        CHECK(out.raw_response == raw);
    }
    CHECK(conforming > 4000);
}
