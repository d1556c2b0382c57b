#include "fraudlens/provider_pool.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "fraudlens/errors.hpp"

namespace fraudlens {

void validate_config(const GenerationConfig& config) {
    if (config.temperature <= 0.0) throw ConfigError("temperature must be > 0");
    if (config.top_p <= 0.0 || config.top_p > 1.0) throw ConfigError("top_p must be in (0, 1]");
    if (config.max_new_tokens <= 0) throw ConfigError("max_new_tokens must be positive");
    if (config.batch_size <= 0) throw ConfigError("batch_size must be positive");
    if (config.max_context_tokens <= 0) throw ConfigError("max_context_tokens must be positive");
}

void validate_policy(const RetryPolicy& policy) {
    if (policy.max_outer_retries <= 0) throw ConfigError("max_outer_retries must be positive");
    if (policy.retries_per_key <= 0) throw ConfigError("retries_per_key must be positive");
    if (policy.base_backoff <= 0.0) throw ConfigError("base_backoff must be positive");
    if (policy.backoff_mult <= 0.0) throw ConfigError("backoff_mult must be positive");
    if (policy.backoff_cap < policy.base_backoff)
        throw ConfigError("backoff_cap must be >= base_backoff");
    if (policy.malformed_sleep_factor <= 0.0)
        throw ConfigError("malformed_sleep_factor must be positive");
    if (policy.disable_threshold <= 0) throw ConfigError("disable_threshold must be positive");
}

double backoff_delay(int attempt, const RetryPolicy& policy) {
    if (attempt < 1) throw ConfigError("attempt must be >= 1");
    double delay = policy.base_backoff * std::pow(policy.backoff_mult, attempt - 1);
    return std::min(policy.backoff_cap, delay);
}

void RealClock::sleep_seconds(double seconds) {
    if (seconds <= 0.0) return;
    std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
}

void VirtualClock::sleep_seconds(double seconds) {
    std::lock_guard lock(mutex_);
    sleeps_.push_back(seconds);
    elapsed_ += seconds;
}

std::vector<double> VirtualClock::sleeps() const {
    std::lock_guard lock(mutex_);
    return sleeps_;
}

double VirtualClock::elapsed() const {
    std::lock_guard lock(mutex_);
    return elapsed_;
}

ProviderPool::ProviderPool(std::vector<ProviderKey> keys) : keys_(std::move(keys)) {
    if (keys_.empty()) throw ConfigError("provider pool needs at least one key");
}

ProviderKey ProviderPool::acquire_next_key() {
    std::lock_guard lock(mutex_);
    for (size_t step = 0; step < keys_.size(); ++step) {
        ProviderKey& key = keys_[cursor_ % keys_.size()];
        cursor_ = (cursor_ + 1) % keys_.size();
        if (!key.disabled) return key;
    }
    throw PoolExhaustedError();
}

bool ProviderPool::record_failure(const std::string& key_id, int disable_threshold) {
    std::lock_guard lock(mutex_);
    for (ProviderKey& key : keys_) {
        if (key.key_id != key_id) continue;
        ++key.failure_count;
        if (!key.disabled && key.failure_count >= disable_threshold) {
            key.disabled = true;
            return true;
        }
        return false;
    }
    return false;
}

std::vector<ProviderKey> ProviderPool::snapshot() const {
    std::lock_guard lock(mutex_);
    return keys_;
}

size_t ProviderPool::enabled_count() const {
    std::lock_guard lock(mutex_);
    return static_cast<size_t>(
        std::count_if(keys_.begin(), keys_.end(), [](const ProviderKey& k) { return !k.disabled; }));
}

std::vector<ProviderKey> load_credentials_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open credentials file: " + path);
    std::vector<ProviderKey> keys;
    std::string line;
    while (std::getline(in, line)) {
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream fields(line);
        ProviderKey key;
        if (fields >> key.key_id >> key.provider_name >> key.secret) keys.push_back(std::move(key));
    }
    return keys;
}

std::vector<ProviderKey> parse_credentials_env(const std::string& value) {
    std::vector<ProviderKey> keys;
    std::istringstream entries(value);
    std::string entry;
    while (std::getline(entries, entry, ',')) {
        if (entry.empty()) continue;
        size_t a = entry.find(':');
        size_t b = a == std::string::npos ? std::string::npos : entry.find(':', a + 1);
        if (a == std::string::npos || b == std::string::npos)
            throw ConfigError("credential entry must be id:provider:secret");
        keys.push_back({entry.substr(0, a), entry.substr(a + 1, b - a - 1), entry.substr(b + 1)});
    }
    return keys;
}

GenerationOutcome generate_with_retry(const CompletionRequest& request, ProviderPool& pool,
                                      const RetryPolicy& policy, const GenerationConfig& config,
                                      TextBackend& backend, Clock& clock,
                                      const PayloadValidator& validator) {
    if (request.prompt.empty()) throw ConfigError("prompt must be non-empty");
    validate_policy(policy);
    validate_config(config);

    GenerationOutcome outcome;
    int outer_attempt = 0;      // malformed-content retries consumed
    int transport_attempt = 0;  // drives the exponential backoff schedule
    int consecutive_on_key = 0;
    std::optional<ProviderKey> current;

    auto rotate = [&]() -> bool {
        try {
            current = pool.acquire_next_key();
            consecutive_on_key = 0;
            return true;
        } catch (const PoolExhaustedError& e) {
            outcome.failure_reason = e.what();
            return false;
        }
    };

    if (!rotate()) return outcome;

    while (true) {
        if (outer_attempt >= policy.max_outer_retries) {
            outcome.failure_reason = "malformed output after " +
                                     std::to_string(outer_attempt) + " attempts";
            return outcome;
        }

        CompletionResult result = backend.complete(request, config, *current);
        ++outcome.attempts_used;

        if (!result.transport_ok) {
            ++transport_attempt;
            ++consecutive_on_key;
            bool disabled = pool.record_failure(current->key_id, policy.disable_threshold);
            double delay = backoff_delay(transport_attempt, policy);
            clock.sleep_seconds(delay);
            outcome.diagnostics.push_back({outcome.attempts_used, current->key_id,
                                           AttemptDiagnostic::Kind::Transport, result.error,
                                           delay});
            if (disabled || consecutive_on_key >= policy.retries_per_key) {
                if (!rotate()) return outcome;
            }
            continue;
        }

        if (validator) {
            if (auto problem = validator(result.text)) {
                ++outer_attempt;
                double sleep = policy.malformed_sleep_factor * outer_attempt;
                clock.sleep_seconds(sleep);
                outcome.diagnostics.push_back({outcome.attempts_used, current->key_id,
                                               AttemptDiagnostic::Kind::Malformed, *problem,
                                               sleep});
                if (!rotate()) return outcome;
                continue;
            }
        }

        outcome.ok = true;
        outcome.text = std::move(result.text);
        outcome.key_id = current->key_id;
        return outcome;
    }
}

}  // namespace fraudlens
