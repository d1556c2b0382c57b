#pragma once

// Layered option resolution: defaults, then config file, then flags, then
// environment, later layers winning. Commands read typed values out of the
// final bag.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraudlens/evaluation.hpp"
#include "fraudlens/provider_pool.hpp"

namespace fraudlens {

class OptionBag {
public:
    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const;
    std::optional<std::string> get(const std::string& key) const;
    std::string get_or(const std::string& key, const std::string& fallback) const;
    long long get_int(const std::string& key, long long fallback) const;
    double get_double(const std::string& key, double fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
    uint64_t get_u64(const std::string& key, uint64_t fallback) const;

    // "key = value" lines; '#' comments; unknown keys kept verbatim.
    void load_file(const std::string& path);
    // FRAUDLENS_* variables; applied last so the environment wins.
    void apply_env();

    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

RetryPolicy retry_policy_from_options(const OptionBag& options);
GenerationConfig generation_config_from_options(const OptionBag& options);
RunConfig run_config_from_options(const OptionBag& options);

// keys / keys_file options, else a single local stub credential.
std::vector<ProviderKey> resolve_credentials(const OptionBag& options);

}  // namespace fraudlens
