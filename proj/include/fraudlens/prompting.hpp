#pragma once

// Builders for the text artifacts exchanged with generation backends: the
// detailed zero-shot prompt, the concise task-adapted prompt, the structured
// analysis block, and the synthetic-generation prompt.

#include <array>
#include <string>

#include "fraudlens/corpus.hpp"
#include "fraudlens/sampling.hpp"
#include "fraudlens/taxonomy.hpp"

namespace fraudlens {

enum class PromptMode { Detailed, Concise };

PromptMode prompt_mode_from_string(const std::string& name);  // throws ConfigError
const char* to_string(PromptMode mode);

struct PromptBundle {
    std::string system_instruction;  // everything except the narrative
    std::string narrative;
    PromptMode mode = PromptMode::Detailed;
    std::string rendered;
    int approx_token_count = 0;  // whitespace tokens of the instruction part
};

int approx_token_count(std::string_view text);

PromptBundle build_detailed_prompt(const std::string& narrative);
PromptBundle build_concise_prompt(const std::string& narrative);
PromptBundle build_prompt(PromptMode mode, const std::string& narrative);

// Reasons are sanitized ('[' becomes '(') so they can never spoof a section
// marker and derail truncation.
std::string sanitize_reason(std::string_view reason);

// All 20 sections in canonical order; Reason carries the stored text for
// positive labels and "N/A" otherwise.
std::string render_target(const AnnotationRecord& record);

// Lower-level renderer over explicit flag/reason slots (canonical 20-order).
std::string render_analysis_block(const std::array<bool, kLabelCount>& present,
                                  const std::array<std::string, kLabelCount>& reasons);

// Prompt sent to providers when synthesizing one dataset record for a
// planned triplet; embeds the seed fields for controlled variation.
std::string build_generation_prompt(const GenerationSeed& seed);

// Definition text used by the detailed prompt (and the offline mock).
const std::string& label_definition(LabelId id);
const std::string& fraud_type_definition(int fraud_type);

}  // namespace fraudlens
