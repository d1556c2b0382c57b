#include "fraudlens/evaluation.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

std::string now_iso8601() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

uint64_t fnv1a(std::string_view data, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string config_hash(const RunConfig& config) {
    nlohmann::ordered_json j;
    j["model_tag"] = to_string(config.model_tag);
    j["prompt_mode"] = to_string(config.prompt_mode());
    j["backend"] = config.backend_spec;
    j["dataset"] = config.dataset_path;
    j["temperature"] = config.generation.temperature;
    j["top_p"] = config.generation.top_p;
    j["max_new_tokens"] = config.generation.max_new_tokens;
    j["repetition_penalty"] = config.generation.repetition_penalty;
    j["do_sample"] = config.generation.do_sample;
    j["batch_size"] = config.generation.batch_size;
    j["max_context_tokens"] = config.generation.max_context_tokens;
    j["embedder"] = config.embedder;
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(j.dump())));
    return buf;
}

MeanSimilarity mean_similarity(const std::vector<SimilarityScores>& scores) {
    MeanSimilarity mean;
    if (scores.empty()) return mean;
    double embed_sum = 0.0;
    long long embed_count = 0;
    auto add = [](PrfScores& acc, const PrfScores& s) {
        acc.precision += s.precision;
        acc.recall += s.recall;
        acc.f1 += s.f1;
    };
    for (const auto& s : scores) {
        add(mean.rouge1, s.rouge1);
        add(mean.rouge2, s.rouge2);
        add(mean.rougeL, s.rougeL);
        mean.bleu += s.bleu;
        if (s.embed_f1) {
            embed_sum += *s.embed_f1;
            ++embed_count;
        }
    }
    auto divide = [&](PrfScores& acc) {
        acc.precision /= static_cast<double>(scores.size());
        acc.recall /= static_cast<double>(scores.size());
        acc.f1 /= static_cast<double>(scores.size());
    };
    divide(mean.rouge1);
    divide(mean.rouge2);
    divide(mean.rougeL);
    mean.bleu /= static_cast<double>(scores.size());
    if (embed_count > 0) mean.embed_f1 = embed_sum / static_cast<double>(embed_count);
    return mean;
}

std::optional<double> rate_or_unset(const LabelMetrics& m) { return m.hallucination_rate; }

ComparisonRow build_row(const std::string& label, const LabelMetrics& base,
                        const LabelMetrics& ft, long long n) {
    ComparisonRow row;
    row.label = label;
    row.base = base;
    row.ft = ft;
    row.delta_accuracy = ft.accuracy - base.accuracy;
    if (base.f1 && ft.f1) {
        row.delta_f1 = *ft.f1 - *base.f1;
        row.base_ci = f1_interval(*base.f1, n);
        row.ft_ci = f1_interval(*ft.f1, n);
        row.marker = significance_marker(*base.f1, *ft.f1, n);
    }
    auto base_rate = rate_or_unset(base);
    auto ft_rate = rate_or_unset(ft);
    if (base_rate && ft_rate) {
        row.hallucination_abs_change = *ft_rate - *base_rate;
        if (*base_rate > 0.0)
            row.hallucination_rel_change_pct = -hallucination_reduction(*base_rate, *ft_rate);
    }
    return row;
}

}  // namespace

ModelTag model_tag_from_string(const std::string& name) {
    std::string key = normalize_key(name);
    if (key == "base") return ModelTag::Base;
    if (key == "finetuned" || key == "fine tuned" || key == "ft") return ModelTag::Finetuned;
    if (key == "custom") return ModelTag::Custom;
    throw ConfigError("unknown model tag: " + name);
}

const char* to_string(ModelTag tag) {
    switch (tag) {
        case ModelTag::Base: return "base";
        case ModelTag::Finetuned: return "finetuned";
        case ModelTag::Custom: return "custom";
    }
    return "custom";
}

RunResult score_outputs(const std::vector<AnnotationRecord>& gold,
                        const std::vector<ParsedOutput>& parsed,
                        const std::vector<bool>& generation_failed,
                        const TokenEmbedder* embedder) {
    if (gold.size() != parsed.size() || gold.size() != generation_failed.size())
        throw DatasetError("score_outputs: input sizes differ");

    RunResult result;
    RunReport& report = result.report;
    report.narrative_count = static_cast<long long>(gold.size());
    result.decisions.resize(gold.size());

    std::array<std::vector<SimilarityScores>, kLabelCount> tp_scores;
    std::array<ConfusionCounts, kLabelCount> counts{};

    for (size_t s = 0; s < gold.size(); ++s) {
        DecisionRecord& decision = result.decisions[s];
        decision.sample_index = static_cast<long long>(s);
        decision.generation_failed = generation_failed[s];
        if (generation_failed[s]) ++report.generation_failures;

        for (LabelId id : all_labels()) {
            int flat = flat_index(id);
            const LabelParse& lp = parsed[s].at(id);
            if (!lp.matched) ++report.parse_defaulted_labels;
            bool pred = lp.present;
            bool truth = gold[s].present(id);
            decision.predicted[static_cast<size_t>(flat)] = pred;
            decision.gold[static_cast<size_t>(flat)] = truth;

            switch (classify_pair(pred, truth)) {
                case PairOutcome::TP: {
                    ++counts[static_cast<size_t>(flat)].tp;
                    decision.predicted_reason[static_cast<size_t>(flat)] = lp.reason;
                    decision.gold_reason[static_cast<size_t>(flat)] = gold[s].reason(id);
                    tp_scores[static_cast<size_t>(flat)].push_back(
                        similarity_scores(lp.reason, gold[s].reason(id), embedder));
                    break;
                }
                case PairOutcome::FP: ++counts[static_cast<size_t>(flat)].fp; break;
                case PairOutcome::TN: ++counts[static_cast<size_t>(flat)].tn; break;
                case PairOutcome::FN: ++counts[static_cast<size_t>(flat)].fn; break;
            }
        }
    }

    std::array<std::optional<double>, kLabelCount> f1s;
    for (int i = 0; i < kLabelCount; ++i) {
        LabelReport& lr = report.labels[static_cast<size_t>(i)];
        lr.counts = counts[static_cast<size_t>(i)];
        lr.metrics = label_metrics(lr.counts);
        f1s[static_cast<size_t>(i)] = lr.metrics.f1;
        if (lr.metrics.f1)
            lr.f1_ci = f1_interval(*lr.metrics.f1, report.narrative_count);
        lr.tp_reason_pairs = static_cast<long long>(tp_scores[static_cast<size_t>(i)].size());
        if (lr.tp_reason_pairs > 0)
            lr.similarity = mean_similarity(tp_scores[static_cast<size_t>(i)]);
        report.total_decisions += lr.counts.total();
    }

    report.global_micro = micro_aggregate(counts);
    if (report.global_micro.f1)
        report.global_f1_ci = f1_interval(*report.global_micro.f1, report.narrative_count);
    report.macro = macro_f1(std::span<const std::optional<double>>(f1s.data(), f1s.size()));
    return result;
}

RunResult evaluate_run(const RunConfig& config, const std::vector<AnnotationRecord>& gold,
                       TextBackend& backend, Clock& clock) {
    validate_config(config.generation);
    validate_policy(config.retry);
    if (gold.empty()) throw DatasetError("dataset is empty");

    const PromptMode mode = config.prompt_mode();
    const size_t n = gold.size();
    std::vector<ParsedOutput> parsed(n);
    // plain byte per slot: vector<bool> packs bits and is unsafe to write
    // from concurrent workers
    std::vector<char> failed(n, 0);

    std::vector<ProviderKey> keys = config.keys;
    if (keys.empty()) keys.push_back({"local", backend.name(), ""});
    ProviderPool pool(std::move(keys));

    // Narratives are claimed in batches of the configured size and processed
    // concurrently; everything downstream aggregates in sample order so
    // reports are reproducible at any worker count.
    const size_t batch = static_cast<size_t>(std::max(1, config.generation.batch_size));
    std::atomic<size_t> next{0};
    std::vector<std::string> worker_errors;
    std::mutex error_mutex;

    auto process_sample = [&](size_t i) {
        try {
            PromptBundle prompt = build_prompt(mode, gold[i].story);
            CompletionRequest request;
            request.prompt = prompt.rendered;
            request.sample_index = static_cast<long long>(i);
            GenerationOutcome outcome = generate_with_retry(request, pool, config.retry,
                                                            config.generation, backend, clock);

            if (outcome.ok) {
                parsed[i] = parse_output(outcome.text);
            } else {
                parsed[i] = parse_output("");
                failed[i] = 1;
            }
        } catch (const std::exception& e) {
            std::lock_guard lock(error_mutex);
            worker_errors.push_back(e.what());
            parsed[i] = parse_output("");
            failed[i] = 1;
        }
    };

    auto worker = [&] {
        for (;;) {
            size_t begin = next.fetch_add(batch);
            if (begin >= n) return;
            size_t end = std::min(n, begin + batch);
            for (size_t i = begin; i < end; ++i) process_sample(i);
        }
    };

    int worker_count = std::max(1, config.workers);
    if (worker_count == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<size_t>(worker_count));
        for (int w = 0; w < worker_count; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    std::vector<bool> failed_flags(failed.begin(), failed.end());
    bool any_failed = false;
    for (bool f : failed_flags) any_failed |= f;
    if (config.strict && any_failed)
        throw DatasetError("generation failed for at least one narrative in strict mode");

    std::unique_ptr<TokenEmbedder> embedder;
    if (config.embedder == "hashed") embedder = std::make_unique<HashedTrigramEmbedder>();

    RunResult result = score_outputs(gold, parsed, failed_flags, embedder.get());
    result.report.model_tag = to_string(config.model_tag);
    result.report.prompt_mode = to_string(mode);
    result.report.backend = backend.name();
    result.report.dataset_hash = dataset_content_hash(gold);
    result.report.config_hash = config_hash(config);
    result.report.created_at = now_iso8601();
    return result;
}

RunResult evaluate_run(const RunConfig& config) {
    LoadResult loaded = load_dataset(config.dataset_path, {config.strict});
    if (!loaded.diagnostics.empty() && config.strict)
        throw DatasetError("dataset has malformed lines");
    auto backend = make_backend(config.backend_spec, MockMode::Analysis, loaded.records);
    RealClock clock;
    return evaluate_run(config, loaded.records, *backend, clock);
}

ComparisonReport compare_runs(const RunReport& base, const RunReport& ft) {
    if (base.dataset_hash != ft.dataset_hash)
        throw DatasetMismatchError("reports were produced from different datasets (" +
                                   base.dataset_hash + " vs " + ft.dataset_hash + ")");
    if (base.narrative_count != ft.narrative_count)
        throw DatasetMismatchError("reports cover different narrative counts");

    ComparisonReport cmp;
    cmp.dataset_hash = base.dataset_hash;
    cmp.base_config_hash = base.config_hash;
    cmp.ft_config_hash = ft.config_hash;
    cmp.narrative_count = base.narrative_count;

    for (int i = 0; i < kLabelCount; ++i) {
        cmp.rows.push_back(build_row(display_name(label_at(i)),
                                     base.labels[static_cast<size_t>(i)].metrics,
                                     ft.labels[static_cast<size_t>(i)].metrics,
                                     base.narrative_count));
    }
    cmp.global = build_row("GLOBAL", base.global_micro, ft.global_micro, base.narrative_count);
    cmp.base_macro_f1 = base.macro.value;
    cmp.ft_macro_f1 = ft.macro.value;
    cmp.macro_marker =
        significance_marker(base.macro.value, ft.macro.value, base.narrative_count);
    return cmp;
}

}  // namespace fraudlens
