#pragma once

// Rotating credential pool with failure tracking, bounded retries, and the
// two backoff regimes: exponential delays for transport failures, linear
// sleeps for malformed payload retries. Sleeping goes through a Clock so
// tests run on a virtual timeline.

#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace fraudlens {

struct ProviderKey {
    std::string key_id;
    std::string provider_name;
    std::string secret;
    int failure_count = 0;
    bool disabled = false;
};

struct RetryPolicy {
    int max_outer_retries = 4;      // malformed-content retries per sample
    int retries_per_key = 2;        // consecutive failures before forced rotation
    double base_backoff = 5.0;      // seconds
    double backoff_mult = 2.0;
    double backoff_cap = 60.0;      // seconds
    double malformed_sleep_factor = 2.0;  // seconds per malformed attempt
    int disable_threshold = 2;      // cumulative failures that disable a key
};

struct GenerationConfig {
    int max_new_tokens = 1536;
    double temperature = 0.1;  // 0.1 evaluation profile, 0.01 production
    double top_p = 0.9;
    double repetition_penalty = 1.1;
    bool do_sample = true;
    int batch_size = 32;
    int max_context_tokens = 4096;
};

void validate_config(const GenerationConfig& config);  // throws ConfigError
void validate_policy(const RetryPolicy& policy);

// min(cap, base * mult^(attempt-1)); attempt is 1-based.
double backoff_delay(int attempt, const RetryPolicy& policy);

class Clock {
public:
    virtual ~Clock() = default;
    virtual void sleep_seconds(double seconds) = 0;
};

class RealClock : public Clock {
public:
    void sleep_seconds(double seconds) override;
};

class VirtualClock : public Clock {
public:
    void sleep_seconds(double seconds) override;
    std::vector<double> sleeps() const;
    double elapsed() const;

private:
    mutable std::mutex mutex_;
    std::vector<double> sleeps_;
    double elapsed_ = 0.0;
};

// Thread-safe round-robin pool. Disabled keys are never handed out.
class ProviderPool {
public:
    explicit ProviderPool(std::vector<ProviderKey> keys);

    ProviderKey acquire_next_key();  // throws PoolExhaustedError
    // Returns true when the failure disabled the key.
    bool record_failure(const std::string& key_id, int disable_threshold);
    std::vector<ProviderKey> snapshot() const;
    size_t enabled_count() const;

private:
    mutable std::mutex mutex_;
    std::vector<ProviderKey> keys_;
    size_t cursor_ = 0;
};

// Loads "key_id provider secret" lines; '#' starts a comment.
std::vector<ProviderKey> load_credentials_file(const std::string& path);
// Parses "id:provider:secret,id2:provider2:secret2".
std::vector<ProviderKey> parse_credentials_env(const std::string& value);

struct GenerationSeed;  // sampling.hpp

struct CompletionRequest {
    std::string prompt;
    long long sample_index = -1;
    const GenerationSeed* seed = nullptr;  // set for dataset generation
};

struct CompletionResult {
    bool transport_ok = true;
    std::string text;
    std::string error;
};

class TextBackend {
public:
    virtual ~TextBackend() = default;
    virtual CompletionResult complete(const CompletionRequest& request,
                                      const GenerationConfig& config,
                                      const ProviderKey& key) = 0;
    virtual std::string name() const = 0;
};

struct AttemptDiagnostic {
    enum class Kind { Transport, Malformed };
    int call_no = 0;
    std::string key_id;
    Kind kind = Kind::Transport;
    std::string detail;
    double slept_seconds = 0.0;
};

struct GenerationOutcome {
    bool ok = false;
    std::string text;
    int attempts_used = 0;  // backend calls made
    std::string key_id;     // key that produced the accepted payload
    std::string failure_reason;
    std::vector<AttemptDiagnostic> diagnostics;
};

// Returns an error message for rejected payloads, nullopt for accepted ones.
using PayloadValidator = std::function<std::optional<std::string>(const std::string&)>;

// Retry loop over the pool: transport failures sleep the exponential backoff
// schedule and rotate after retries_per_key consecutive misses (a disabled
// key rotates immediately); content that fails the validator sleeps
// malformed_sleep_factor * attempt and counts against max_outer_retries.
GenerationOutcome generate_with_retry(const CompletionRequest& request, ProviderPool& pool,
                                      const RetryPolicy& policy, const GenerationConfig& config,
                                      TextBackend& backend, Clock& clock,
                                      const PayloadValidator& validator = nullptr);

}  // namespace fraudlens
