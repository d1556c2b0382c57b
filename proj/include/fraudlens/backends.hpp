#pragma once

// Generation backends: the deterministic offline mock (temperature-scaled
// softmax over small phrasing tables), oracle backends for evaluation tests
// (echo, bit-flip), a scripted fault backend for retry tests, and a generic
// HTTP adapter.

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "fraudlens/corpus.hpp"
#include "fraudlens/provider_pool.hpp"
#include "fraudlens/sampling.hpp"

namespace fraudlens {

// P(i) = exp(z_i / T) / sum_j exp(z_j / T), sampled with a uniform draw from
// a seeded generator. Variant index is deterministic given (logits, T, u).
std::vector<double> softmax_probabilities(const std::vector<double>& logits, double temperature);
size_t sample_index_from_logits(const std::vector<double>& logits, double temperature, double u);

enum class MockMode { Dataset, Analysis };

struct MockFaults {
    std::set<long long> malformed_samples;  // sample indices that emit junk text
    std::set<long long> transport_samples;  // sample indices that fail transport
    int malformed_attempts = -1;            // -1 = always; else first N attempts only
    int transport_attempts = -1;
};

// Deterministic template-filling generator. Dataset mode emits a
// schema-conformant record (fenced, occasionally with a trailing comma) for
// the seed's triplet; analysis mode emits a 20-section analysis block.
std::string mock_generate(const std::string& prompt, const GenerationSeed& seed,
                          const GenerationConfig& config, MockMode mode);

// Convenience used by the spec'd examples: integer seed, dataset mode.
std::string mock_generate(const std::string& prompt, uint64_t seed,
                          const GenerationConfig& config, MockMode mode);

class MockBackend : public TextBackend {
public:
    explicit MockBackend(MockMode mode, MockFaults faults = {})
        : mode_(mode), faults_(std::move(faults)) {}

    CompletionResult complete(const CompletionRequest& request, const GenerationConfig& config,
                              const ProviderKey& key) override;
    std::string name() const override { return "mock"; }

private:
    MockMode mode_;
    MockFaults faults_;
    std::map<long long, int> attempt_counts_;
    std::mutex mutex_;
};

// Perfect-model oracle: returns the rendered gold analysis block for the
// requested sample.
class EchoBackend : public TextBackend {
public:
    explicit EchoBackend(std::vector<AnnotationRecord> gold) : gold_(std::move(gold)) {}
    CompletionResult complete(const CompletionRequest& request, const GenerationConfig& config,
                              const ProviderKey& key) override;
    std::string name() const override { return "echo"; }

private:
    std::vector<AnnotationRecord> gold_;
};

// Echo with each of the 20 decisions independently flipped with probability
// flip_prob (seeded per sample); flipped-on labels get a synthetic reason.
class BitFlipBackend : public TextBackend {
public:
    BitFlipBackend(std::vector<AnnotationRecord> gold, double flip_prob, uint64_t seed)
        : gold_(std::move(gold)), flip_prob_(flip_prob), seed_(seed) {}
    CompletionResult complete(const CompletionRequest& request, const GenerationConfig& config,
                              const ProviderKey& key) override;
    std::string name() const override { return "bitflip"; }

private:
    std::vector<AnnotationRecord> gold_;
    double flip_prob_;
    uint64_t seed_;
};

// Plays back a fixed script of outcomes; used to pin retry traces.
class ScriptedBackend : public TextBackend {
public:
    struct Step {
        enum class Kind { Ok, Transport, Text } kind = Kind::Ok;
        std::string text;
    };
    static Step ok(std::string text) { return {Step::Kind::Ok, std::move(text)}; }
    static Step transport_error(std::string message = "connection reset") {
        return {Step::Kind::Transport, std::move(message)};
    }

    explicit ScriptedBackend(std::vector<Step> steps) : steps_(std::move(steps)) {}
    CompletionResult complete(const CompletionRequest& request, const GenerationConfig& config,
                              const ProviderKey& key) override;
    std::string name() const override { return "scripted"; }
    int calls() const { return next_; }

private:
    std::vector<Step> steps_;
    int next_ = 0;
    std::mutex mutex_;
};

// POSTs {"prompt", generation parameters} as JSON to <base_url>/v1/complete
// with the key secret as a bearer token; expects {"text": "..."} back.
class HttpBackend : public TextBackend {
public:
    explicit HttpBackend(std::string base_url, double timeout_seconds = 120.0);
    CompletionResult complete(const CompletionRequest& request, const GenerationConfig& config,
                              const ProviderKey& key) override;
    std::string name() const override { return "http"; }

private:
    std::string base_url_;
    double timeout_seconds_;
};

// Backend descriptors: "mock", "mock:fail=3,7", "mock:transport_fail=2",
// "echo", "bitflip:p=0.1,seed=7", "http:<base_url>". Oracle backends receive
// the gold records they echo.
std::unique_ptr<TextBackend> make_backend(const std::string& spec, MockMode mock_mode,
                                          const std::vector<AnnotationRecord>& gold);

}  // namespace fraudlens
