#pragma once

#include "gabm/decision.hpp"

#include <string>
#include <string_view>

namespace gabm {

/// Renders the daily stay-home prompt for one agent.
///
/// Layout: persona header, fixed bio, a relevant-memories block whose content depends on
/// the condition (health sentence for SelfHealth and Full, virus news and newspaper
/// prevalence for Full, the work sentence always), the stay-home question, then the
/// Reasoning/Response format instructions.
std::string build_prompt(const DecisionContext& ctx, const TraitVocabulary& vocab = TraitVocabulary::standard());

/// Total parser for a model reply. Never throws.
///
/// Reasoning is the text after the first line starting with "Reasoning:" (continuation
/// lines up to the Response line are joined with spaces). The verdict is the first token
/// after the first "Response:" line prefix; "yes"/"no" in any case, with trailing
/// punctuation or surrounding quotes/asterisks stripped. Anything else is nonconforming
/// and defaults to going out.
DecisionOutcome parse_response(std::string_view raw);

} // namespace gabm
