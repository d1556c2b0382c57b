#pragma once

// Annotation record schema, raw-output JSON repair, and line-delimited
// dataset persistence.

#include <array>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fraudlens/taxonomy.hpp"

namespace fraudlens {

using Json = nlohmann::ordered_json;

struct Provenance {
    enum class Origin { Real, Synthetic };

    Origin origin = Origin::Real;
    std::string provider;
    std::optional<long long> seed;
    int attempts = 0;

    bool operator==(const Provenance&) const = default;
};

struct AnnotationRecord {
    std::string story;
    int fraud_type = 0;
    std::array<bool, kTacticCount> tactic_present{};
    std::array<std::string, kTacticCount> tactic_reason{};  // non-empty iff present
    std::array<bool, kTheoryCount> theory_present{};
    std::array<std::string, kTheoryCount> theory_reason{};
    int major_tactic = 0;
    int major_theory = 0;
    Provenance provenance;

    bool operator==(const AnnotationRecord&) const = default;

    bool present(LabelId id) const {
        return id.kind == LabelKind::Tactic ? tactic_present[static_cast<size_t>(id.index)]
                                            : theory_present[static_cast<size_t>(id.index)];
    }
    const std::string& reason(LabelId id) const {
        return id.kind == LabelKind::Tactic ? tactic_reason[static_cast<size_t>(id.index)]
                                            : theory_reason[static_cast<size_t>(id.index)];
    }
    void set(LabelId id, bool value, std::string reason_text = {}) {
        if (id.kind == LabelKind::Tactic) {
            tactic_present[static_cast<size_t>(id.index)] = value;
            tactic_reason[static_cast<size_t>(id.index)] = value ? std::move(reason_text) : std::string{};
        } else {
            theory_present[static_cast<size_t>(id.index)] = value;
            theory_reason[static_cast<size_t>(id.index)] = value ? std::move(reason_text) : std::string{};
        }
    }
};

int count_lines(const std::string& text);

// Cleans raw model output for JSON parsing: drops Markdown fence lines, keeps
// the first brace-delimited object (depth-counted, string-aware), removes
// trailing commas. Does not assert the result parses.
// Throws NoJsonObjectError when the text has no opening brace.
std::string repair_json_text(const std::string& raw);

// Turns a parsed JSON object into a fully checked record. Strict Yes/No
// mapping; reason must accompany a positive flag and only a positive flag;
// major labels must point at positive flags. Throws ValidationError.
// Non-fatal oddities (story outside the 12-25 line target) are appended to
// `warnings` when provided.
AnnotationRecord validate_record(const Json& candidate, std::vector<std::string>* warnings = nullptr);

Json record_to_json(const AnnotationRecord& record);
std::string record_to_line(const AnnotationRecord& record);

struct LoadOptions {
    bool strict = false;
};

struct LoadDiagnostic {
    int line_no = 0;
    std::string message;
};

struct LoadResult {
    std::vector<AnnotationRecord> records;
    std::vector<LoadDiagnostic> diagnostics;
    std::vector<std::string> warnings;
};

LoadResult load_dataset(const std::filesystem::path& path, const LoadOptions& options = {});
void save_dataset(const std::vector<AnnotationRecord>& records, const std::filesystem::path& path);

// FNV-1a over the canonical line serialization; identifies a dataset in
// reports so mismatched comparisons can be refused.
std::string dataset_content_hash(const std::vector<AnnotationRecord>& records);

}  // namespace fraudlens
