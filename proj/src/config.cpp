#include "fraudlens/config.hpp"

#include <cstdlib>
#include <fstream>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& value) {
    std::string v = normalize_key(value);
    if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
    if (v == "0" || v == "false" || v == "no" || v == "off" || v.empty()) return false;
    throw ConfigError("expected a boolean, got '" + value + "'");
}

const std::pair<const char*, const char*> kEnvMap[] = {
    {"FRAUDLENS_SEED", "seed"},           {"FRAUDLENS_WORKERS", "workers"},
    {"FRAUDLENS_STRICT", "strict"},       {"FRAUDLENS_KEYS", "keys"},
    {"FRAUDLENS_KEYS_FILE", "keys_file"}, {"FRAUDLENS_BACKEND", "backend"},
    {"FRAUDLENS_FORMAT", "format"},       {"FRAUDLENS_EMBEDDER", "embedder"},
};

}  // namespace

void OptionBag::set(const std::string& key, const std::string& value) {
    values_[key] = value;
}

bool OptionBag::has(const std::string& key) const { return values_.count(key) > 0; }

std::optional<std::string> OptionBag::get(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) return std::nullopt;
    return it->second;
}

std::string OptionBag::get_or(const std::string& key, const std::string& fallback) const {
    auto v = get(key);
    return v ? *v : fallback;
}

long long OptionBag::get_int(const std::string& key, long long fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stoll(*v);
    } catch (const std::exception&) {
        throw ConfigError("option '" + key + "' expects an integer, got '" + *v + "'");
    }
}

double OptionBag::get_double(const std::string& key, double fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stod(*v);
    } catch (const std::exception&) {
        throw ConfigError("option '" + key + "' expects a number, got '" + *v + "'");
    }
}

bool OptionBag::get_bool(const std::string& key, bool fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    return parse_bool(*v);
}

uint64_t OptionBag::get_u64(const std::string& key, uint64_t fallback) const {
    auto v = get(key);
    if (!v) return fallback;
    try {
        return std::stoull(*v);
    } catch (const std::exception&) {
        throw ConfigError("option '" + key + "' expects an unsigned integer, got '" + *v + "'");
    }
}

void OptionBag::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::string content = trim(line);
        if (content.empty()) continue;
        size_t eq = content.find('=');
        if (eq == std::string::npos)
            throw ConfigError(path + ":" + std::to_string(line_no) + ": expected key = value");
        std::string key = trim(content.substr(0, eq));
        std::string value = trim(content.substr(eq + 1));
        if (key.empty())
            throw ConfigError(path + ":" + std::to_string(line_no) + ": empty key");
        set(key, value);
    }
}

void OptionBag::apply_env() {
    for (const auto& [env_name, key] : kEnvMap) {
        if (const char* value = std::getenv(env_name)) set(key, value);
    }
}

RetryPolicy retry_policy_from_options(const OptionBag& options) {
    RetryPolicy policy;
    policy.max_outer_retries =
        static_cast<int>(options.get_int("max_outer_retries", policy.max_outer_retries));
    policy.retries_per_key =
        static_cast<int>(options.get_int("retries_per_key", policy.retries_per_key));
    policy.base_backoff = options.get_double("base_backoff", policy.base_backoff);
    policy.backoff_mult = options.get_double("backoff_mult", policy.backoff_mult);
    policy.backoff_cap = options.get_double("backoff_cap", policy.backoff_cap);
    policy.malformed_sleep_factor =
        options.get_double("malformed_sleep_factor", policy.malformed_sleep_factor);
    policy.disable_threshold =
        static_cast<int>(options.get_int("disable_threshold", policy.disable_threshold));
    validate_policy(policy);
    return policy;
}

GenerationConfig generation_config_from_options(const OptionBag& options) {
    GenerationConfig config;
    config.max_new_tokens =
        static_cast<int>(options.get_int("max_new_tokens", config.max_new_tokens));
    // evaluation profile samples at 0.1, production at 0.01; an explicit
    // temperature always wins
    std::string profile = options.get_or("profile", "evaluation");
    double default_temperature;
    if (profile == "evaluation")
        default_temperature = 0.1;
    else if (profile == "production")
        default_temperature = 0.01;
    else
        throw ConfigError("profile must be 'evaluation' or 'production'");
    config.temperature = options.get_double("temperature", default_temperature);
    config.top_p = options.get_double("top_p", config.top_p);
    config.repetition_penalty =
        options.get_double("repetition_penalty", config.repetition_penalty);
    config.do_sample = options.get_bool("do_sample", config.do_sample);
    config.batch_size = static_cast<int>(options.get_int("batch_size", config.batch_size));
    config.max_context_tokens =
        static_cast<int>(options.get_int("max_context_tokens", config.max_context_tokens));
    validate_config(config);
    return config;
}

RunConfig run_config_from_options(const OptionBag& options) {
    RunConfig config;
    config.model_tag = model_tag_from_string(options.get_or("model_tag", "base"));
    if (auto mode = options.get("prompt_mode"))
        config.prompt_override = prompt_mode_from_string(*mode);
    config.generation = generation_config_from_options(options);
    config.retry = retry_policy_from_options(options);
    auto dataset = options.get("dataset");
    if (!dataset) throw ConfigError("run config needs a 'dataset' path");
    config.dataset_path = *dataset;
    config.backend_spec = options.get_or("backend", "mock");
    config.output_dir = options.get_or("output_dir", "");
    config.keys = resolve_credentials(options);
    config.workers = static_cast<int>(options.get_int("workers", 1));
    config.strict = options.get_bool("strict", false);
    config.emit_decisions = options.get_bool("emit_decisions", true);
    config.embedder = options.get_or("embedder", "hashed");
    if (config.embedder != "hashed" && config.embedder != "none")
        throw ConfigError("embedder must be 'hashed' or 'none'");
    if (config.workers < 1) throw ConfigError("workers must be >= 1");
    return config;
}

std::vector<ProviderKey> resolve_credentials(const OptionBag& options) {
    if (auto env_keys = options.get("keys"); env_keys && !env_keys->empty())
        return parse_credentials_env(*env_keys);
    if (auto file = options.get("keys_file"); file && !file->empty())
        return load_credentials_file(*file);
    return {};
}

}  // namespace fraudlens
