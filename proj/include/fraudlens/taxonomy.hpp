#pragma once

// Fixed label spaces for cybercrime-narrative analysis: 14 lifecycle tactics,
// 6 behavioral-manipulation theories, 10 fraud categories. Canonical order and
// name normalization here are the contract every other module builds on.

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace fraudlens {

inline constexpr int kTacticCount = 14;
inline constexpr int kTheoryCount = 6;
inline constexpr int kFraudTypeCount = 10;
inline constexpr int kLabelCount = kTacticCount + kTheoryCount;

enum class LabelKind { Tactic, Theory };

struct LabelId {
    LabelKind kind;
    int index;  // 0-based position in the canonical order

    auto operator<=>(const LabelId&) const = default;
};

struct LabelSpace {
    std::vector<std::string> tactics;
    std::vector<std::string> theories;
    std::vector<std::string> fraud_types;

    long long triplet_count() const {
        return static_cast<long long>(fraud_types.size()) *
               static_cast<long long>(tactics.size()) *
               static_cast<long long>(theories.size());
    }
};

// The fixed canonical space. Pure; the instance is immutable and shared.
const LabelSpace& canonical_space();

// Lowercases, expands '&' to "and", drops punctuation/underscores, collapses
// whitespace. All label matching in the toolkit goes through this.
std::string normalize_key(std::string_view name);

// Resolves any registered surface form of a tactic/theory name.
// Throws UnknownLabelError when nothing matches.
LabelId normalize_label(std::string_view name);
std::optional<LabelId> try_normalize_label(std::string_view name);

const std::string& display_name(LabelId id);
// Lower_snake_case identifier, stable across runs ("command_and_control").
std::string machine_id(LabelId id);
// Dataset-file key form ("Fear_and_Intimidation").
std::string json_key(LabelId id);

int fraud_type_index(std::string_view name);  // throws UnknownFraudTypeError
std::optional<int> try_fraud_type_index(std::string_view name);
const std::string& fraud_type_name(int index);

// The 20 labels in canonical order: tactics first, then theories.
const std::array<LabelId, kLabelCount>& all_labels();
// Flat position of a label in the 20-slot canonical order.
int flat_index(LabelId id);
LabelId label_at(int flat);

// Deterministic serialization used by the stability tests and the C API.
std::string label_space_to_json(const LabelSpace& space);

}  // namespace fraudlens
