#pragma once

// Runs a backend over a dataset, scores predictions against gold labels,
// and produces base-vs-finetuned comparison reports.

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fraudlens/backends.hpp"
#include "fraudlens/corpus.hpp"
#include "fraudlens/metrics.hpp"
#include "fraudlens/parsing.hpp"
#include "fraudlens/prompting.hpp"
#include "fraudlens/provider_pool.hpp"

namespace fraudlens {

enum class ModelTag { Base, Finetuned, Custom };

ModelTag model_tag_from_string(const std::string& name);  // throws ConfigError
const char* to_string(ModelTag tag);

struct RunConfig {
    ModelTag model_tag = ModelTag::Base;
    std::optional<PromptMode> prompt_override;  // explicit flag wins over the tag default
    GenerationConfig generation;
    RetryPolicy retry;
    std::string dataset_path;
    std::string backend_spec = "mock";
    std::string output_dir;
    std::vector<ProviderKey> keys;  // empty = single local stub key
    int workers = 1;
    bool strict = false;
    bool emit_decisions = true;
    std::string embedder = "hashed";  // "hashed" | "none"

    PromptMode prompt_mode() const {
        if (prompt_override) return *prompt_override;
        return model_tag == ModelTag::Finetuned ? PromptMode::Concise : PromptMode::Detailed;
    }
};

struct MeanSimilarity {
    PrfScores rouge1, rouge2, rougeL;
    double bleu = 0.0;
    std::optional<double> embed_f1;
};

struct LabelReport {
    ConfusionCounts counts;
    LabelMetrics metrics;
    std::optional<IntervalEstimate> f1_ci;
    long long tp_reason_pairs = 0;
    std::optional<MeanSimilarity> similarity;  // present iff tp_reason_pairs > 0
};

struct RunReport {
    std::string model_tag = "base";
    std::string prompt_mode = "detailed";
    std::string backend;
    std::string dataset_hash;
    std::string config_hash;
    std::string created_at;  // informational; excluded from deterministic formats
    long long narrative_count = 0;
    long long total_decisions = 0;
    long long generation_failures = 0;
    long long parse_defaulted_labels = 0;
    std::array<LabelReport, kLabelCount> labels{};
    LabelMetrics global_micro;
    IntervalEstimate global_f1_ci;
    MacroResult macro;
};

// One scored sample; retained for audit files and independent re-scoring.
struct DecisionRecord {
    long long sample_index = 0;
    std::array<bool, kLabelCount> predicted{};
    std::array<bool, kLabelCount> gold{};
    std::array<std::string, kLabelCount> predicted_reason{};  // TP slots only
    std::array<std::string, kLabelCount> gold_reason{};       // TP slots only
    bool generation_failed = false;
};

struct RunResult {
    RunReport report;
    std::vector<DecisionRecord> decisions;
};

// Scores pre-parsed outputs against gold records; the core of evaluate_run,
// exposed so oracles can drive it without a backend.
RunResult score_outputs(const std::vector<AnnotationRecord>& gold,
                        const std::vector<ParsedOutput>& parsed,
                        const std::vector<bool>& generation_failed,
                        const TokenEmbedder* embedder);

RunResult evaluate_run(const RunConfig& config);
// Variant with an injected backend/clock (tests, virtual time).
RunResult evaluate_run(const RunConfig& config, const std::vector<AnnotationRecord>& gold,
                       TextBackend& backend, Clock& clock);

struct ComparisonRow {
    std::string label;
    LabelMetrics base;
    LabelMetrics ft;
    std::optional<IntervalEstimate> base_ci;
    std::optional<IntervalEstimate> ft_ci;
    double delta_accuracy = 0.0;
    std::optional<double> delta_f1;
    Significance marker = Significance::NotSignificant;
    std::optional<double> hallucination_abs_change;
    std::optional<double> hallucination_rel_change_pct;  // unset when base rate is 0
};

struct ComparisonReport {
    std::string dataset_hash;
    std::string base_config_hash;
    std::string ft_config_hash;
    long long narrative_count = 0;
    std::vector<ComparisonRow> rows;  // 20 labels
    ComparisonRow global;             // micro-pooled
    double base_macro_f1 = 0.0;
    double ft_macro_f1 = 0.0;
    Significance macro_marker = Significance::NotSignificant;
};

// Throws DatasetMismatchError when the reports scored different datasets.
ComparisonReport compare_runs(const RunReport& base, const RunReport& ft);

}  // namespace fraudlens
