#include "gabm/prompt.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <vector>

namespace gabm {

namespace {

constexpr std::string_view kWhitespace = " \t\r\n\v\f";

std::string_view trim(std::string_view s)
{
    const auto b = s.find_first_not_of(kWhitespace);
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(kWhitespace);
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_lines(std::string_view s)
{
    std::vector<std::string_view> lines;
    std::size_t start = 0;
    while (start <= s.size()) {
        const auto nl = s.find('\n', start);
        if (nl == std::string_view::npos) {
            lines.push_back(s.substr(start));
            break;
        }
        lines.push_back(s.substr(start, nl - start));
        start = nl + 1;
    }
    return lines;
}

bool starts_with_ci(std::string_view s, std::string_view prefix)
{
    if (s.size() < prefix.size()) {
        return false;
    }
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != std::tolower(static_cast<unsigned char>(prefix[i]))) {
            return false;
        }
    }
    return true;
}

std::string lower(std::string_view s)
{
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

// Markdown emphasis around the label ("**Response:**") is common in chat replies.
std::string_view strip_label_decoration(std::string_view line)
{
    line = trim(line);
    while (!line.empty() && (line.front() == '*' || line.front() == '_')) {
        line.remove_prefix(1);
    }
    return line;
}

} // namespace

std::string build_prompt(const DecisionContext& ctx, const TraitVocabulary& vocab)
{
    const std::string& name = ctx.persona.name;
    std::string p;
    p += fmt::format("You are {}. You are {} years old.\n", name, ctx.persona.age);
    p += " Your traits are given below:\n";
    p += fmt::format(" {}\n", trait_list(ctx.persona, vocab));
    p += "\n";
    p += "Your basic bio is below:\n";
    p += fmt::format(" {0} lives in the town of Dewberry Hollow. {0} likes the town and has friends who also live there. "
                     "{0} has a job and goes to the office for work everyday.\n",
                     name);
    p += "\n";
    p += fmt::format("I will provide {}'s relevant memories here:\n", name);
    if (ctx.condition != Condition::Base && ctx.health_sentence) {
        p += fmt::format(" {}\n", *ctx.health_sentence);
    }
    if (ctx.condition == Condition::Full && ctx.prevalence) {
        p += fmt::format(" {} knows about the Catasat virus spreading across the country. It is an infectious disease "
                         "that spreads from human to human contact via an airborne virus. The deadliness of the virus is "
                         "unknown. Scientists are warning about a potential epidemic.\n",
                         name);
        p += fmt::format(" {} checks the newspaper and finds {}% of Dewberry Hollow's population caught new infections "
                         "of the Catasat virus yesterday.\n",
                         name, ctx.prevalence->str());
    }
    p += fmt::format(" {0} goes to work to earn money to support {0}'s self.\n", name);
    p += "\n";
    p += fmt::format("Based on the provided memories, should {} stay at home for the entire day? Please provide your "
                     "reasoning.\n",
                     name);
    p += "\n";
    p += "If the answer is \"Yes,\" please state your reasoning as \"Reasoning: [explanation].\"\n";
    p += "If the answer is \"No,\" please state your reasoning as \"Reasoning: [explanation].\"\n";
    p += "The format should be as follow:\n";
    p += "Reasoning:\n";
    p += "Response:\n";
    p += "Example response format:\n";
    p += fmt::format("Reasoning: {} is tired.\n", name);
    p += "Response: Yes\n";
    p += "It is important to provide Response in a single word.\n";
    return p;
}

DecisionOutcome parse_response(std::string_view raw)
{
    DecisionOutcome out;
    out.raw_response = std::string(raw);
    out.stay_home = false;
    out.conforming = false;

    const auto lines = split_lines(raw);
    std::optional<std::size_t> reasoning_line;
    std::optional<std::size_t> response_line;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto l = strip_label_decoration(lines[i]);
        if (!reasoning_line && starts_with_ci(l, "reasoning:")) {
            reasoning_line = i;
        }
        if (!response_line && starts_with_ci(l, "response:")) {
            response_line = i;
        }
    }

    if (reasoning_line) {
        auto first = strip_label_decoration(lines[*reasoning_line]).substr(std::string_view("reasoning:").size());
        while (!first.empty() && (first.front() == '*' || first.front() == '_')) {
            first.remove_prefix(1);
        }
        std::string text(trim(first));
        const std::size_t stop = response_line && *response_line > *reasoning_line ? *response_line : lines.size();
        for (std::size_t i = *reasoning_line + 1; i < stop; ++i) {
            const auto l = trim(lines[i]);
            if (l.empty()) {
                continue;
            }
            if (!text.empty()) {
                text += ' ';
            }
            text += l;
        }
        out.reasoning = std::move(text);
    }

    if (!response_line) {
        return out;
    }
    auto rest = strip_label_decoration(lines[*response_line]).substr(std::string_view("response:").size());
    while (!rest.empty() && (rest.front() == '*' || rest.front() == '_' || kWhitespace.find(rest.front()) != std::string_view::npos)) {
        rest.remove_prefix(1);
    }
    const auto end = rest.find_first_of(kWhitespace);
    std::string_view token = rest.substr(0, end);
    constexpr std::string_view kDecoration = "*_\"'`.,;:!()[]";
    while (!token.empty() && kDecoration.find(token.front()) != std::string_view::npos) {
        token.remove_prefix(1);
    }
    while (!token.empty() && kDecoration.find(token.back()) != std::string_view::npos) {
        token.remove_suffix(1);
    }
    const auto verdict = lower(token);
    if (verdict == "yes") {
        out.stay_home = true;
        out.conforming = true;
    } else if (verdict == "no") {
        out.conforming = true;
    }
    return out;
}

} // namespace gabm
