#pragma once

// Extraction of per-label Present/Reason fields from raw model text, binary
// vector mapping, and major-label selection. parse_output is total: any input
// yields a result, with unmatched labels defaulted.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fraudlens/taxonomy.hpp"

namespace fraudlens {

struct LabelParse {
    bool present = false;
    std::string reason = "Parsing Failed";
    bool matched = false;  // false = defaulted
};

struct ParsedOutput {
    std::array<LabelParse, kLabelCount> labels{};
    std::string raw_text;

    const LabelParse& at(LabelId id) const { return labels[static_cast<size_t>(flat_index(id))]; }
};

ParsedOutput parse_output(const std::string& text);

struct PredictionVectors {
    std::array<bool, kTacticCount> tactical{};
    std::array<bool, kTheoryCount> behavioral{};
    std::optional<int> major_tactic;
    std::optional<int> major_theory;
};

PredictionVectors to_vectors(const ParsedOutput& parsed);

// Share of distinct reason tokens that also occur in the narrative
// (lowercased alphanumeric tokenization). Empty reason scores 0.
double lexical_alignment(const std::string& reason, const std::string& narrative);

// Among positive labels of each kind, picks the one whose reason aligns most
// strongly with the narrative; ties go to the earliest canonical index.
std::pair<std::optional<int>, std::optional<int>> select_major(const ParsedOutput& parsed,
                                                               const std::string& narrative);

std::vector<std::string> alnum_tokens(std::string_view text);

}  // namespace fraudlens
