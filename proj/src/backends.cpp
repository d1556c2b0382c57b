#include "fraudlens/backends.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "fraudlens/errors.hpp"
#include "fraudlens/prompting.hpp"

namespace fraudlens {
namespace {

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

size_t draw_below(std::mt19937_64& rng, size_t bound) {
    return static_cast<size_t>(rng() % bound);
}

struct SlotSampler {
    std::mt19937_64 rng;
    double temperature;

    explicit SlotSampler(uint64_t seed, double temp) : rng(seed), temperature(temp) {}

    // Temperature-scaled softmax choice over a phrasing table.
    size_t pick(const std::vector<double>& logits) {
        return sample_index_from_logits(logits, temperature, uniform01(rng));
    }
    // Content variation driven by the nonce alone, independent of temperature.
    size_t content(size_t bound) { return draw_below(rng, bound); }
    bool bernoulli(double p) { return uniform01(rng) < p; }
};

const std::vector<std::string> kNames = {"Ramesh", "Priya",  "Arjun", "Kavita", "Suresh",
                                         "Meena",  "Vikram", "Anita", "Rahul",  "Sunita",
                                         "Deepak", "Lakshmi"};
const std::vector<std::string> kCities = {"Hyderabad", "Pune",    "Jaipur", "Lucknow",
                                          "Nagpur",    "Chennai", "Indore", "Patna"};
const std::vector<std::string> kChannels = {"a phone call", "an SMS message",
                                            "a WhatsApp message", "an email"};
const std::vector<double> kChannelLogits = {1.2, 0.9, 0.7, 0.4};

const std::vector<std::string> kPersonas = {
    "a marketplace seller",           // Advertisement Fraud
    "a customer care executive",      // Customer Care / Tech Support
    "a customs clearance officer",    // Customs / Pig Butchering / Matrimonial
    "an investment advisor",          // Investment Fraud
    "an insurance bonus agent",       // Insurance Fraud
    "a placement consultant",         // Job Fraud
    "a loan app agent",               // Loan Scam
    "an unknown video caller",        // Sextortion
    "a cyber crime police officer",   // Digital Arrest
    "a crypto trading mentor",        // Crypto Investment Fraud
};

// Story lines keyed to label slots; the chosen persona/channel/amount tokens
// recur in reasons so lexical alignment against the story is non-trivial.
struct Phrasing {
    std::vector<std::string> variants;
    std::vector<double> logits;
};

std::string fill(std::string text, const std::map<std::string, std::string>& slots) {
    for (const auto& [key, value] : slots) {
        std::string placeholder = "{" + key + "}";
        size_t pos;
        while ((pos = text.find(placeholder)) != std::string::npos)
            text.replace(pos, placeholder.size(), value);
    }
    return text;
}

std::string tactic_reason(int index, const std::map<std::string, std::string>& slots,
                          SlotSampler& sampler) {
    static const std::array<Phrasing, kTacticCount> reasons = {{
        {{"The caller already knew my name and bank before I said anything",
          "They had collected my number and personal details in advance"},
         {1.0, 0.4}},
        {{"They operated a polished fake portal built for the scheme",
          "A fake office setup and documents had been prepared beforehand"},
         {1.0, 0.4}},
        {{"The scheme began when {persona} reached me through {channel}",
          "First contact came as {channel} from {persona}"},
         {1.0, 0.5}},
        {{"I was persuaded to transfer Rs. {amount} on their instructions",
          "Under pressure I carried out the payment they demanded"},
         {1.0, 0.5}},
        {{"They kept calling me every day and did not let the matter rest",
          "The contact continued for days with repeated follow-ups"},
         {1.0, 0.4}},
        {{"The demands grew from a small fee into much larger sums",
          "What started small escalated into bigger and bigger demands"},
         {1.0, 0.4}},
        {{"They used internet numbers and moved the money through crypto so nothing could be "
          "traced",
          "They hid behind changing numbers and untraceable wallets"},
         {1.0, 0.4}},
        {{"They obtained my OTP and banking password during the call",
          "My login credentials were extracted from me step by step"},
         {1.0, 0.4}},
        {{"Through the screen sharing app they went through my accounts and messages",
          "They explored my phone and learned my balances"},
         {1.0, 0.4}},
        {{"Scam messages were later sent from my number to my contacts",
          "They used my account to approach my friends next"},
         {1.0, 0.4}},
        {{"They recorded our calls and copied my private chats",
          "My photos and documents were captured through the app"},
         {1.0, 0.4}},
        {{"They ordered me to stay on the line and obey every instruction",
          "I was kept under their direction and forbidden from telling anyone"},
         {1.0, 0.4}},
        {{"Rs. {amount} was moved out of my account to unknown beneficiaries",
          "The money left my account into mule accounts within minutes"},
         {1.0, 0.4}},
        {{"I lost Rs. {amount} and the shock still keeps me awake",
          "The fraud cost me Rs. {amount} and enormous distress"},
         {1.0, 0.4}},
    }};
    const Phrasing& p = reasons[static_cast<size_t>(index)];
    return fill(p.variants[sampler.pick(p.logits)], slots);
}

std::string theory_reason(int index, const std::map<std::string, std::string>& slots,
                          SlotSampler& sampler) {
    static const std::array<Phrasing, kTheoryCount> reasons = {{
        {{"They threatened me with arrest and a criminal case if I refused",
          "I complied because they frightened me with police action"},
         {1.0, 0.4}},
        {{"They insisted everything had to be settled within the hour",
          "A strict deadline left me no time to think"},
         {1.0, 0.4}},
        {{"I trusted them because {persona} sounded completely official",
          "They posed as {persona} and showed official-looking proof"},
         {1.0, 0.4}},
        {{"After the small reward I felt obliged to continue with larger payments",
          "Having already paid once, I kept going to not waste the earlier fee"},
         {1.0, 0.4}},
        {{"They promised returns far beyond anything realistic",
          "The huge guaranteed profit made me ignore my doubts"},
         {1.0, 0.4}},
        {{"They built an emotional bond and then used it against me",
          "My loneliness and sympathy were played upon deliberately"},
         {1.0, 0.4}},
    }};
    const Phrasing& p = reasons[static_cast<size_t>(index)];
    return fill(p.variants[sampler.pick(p.logits)], slots);
}

std::string build_story(const std::map<std::string, std::string>& slots, int target_lines,
                        SlotSampler& sampler) {
    static const std::vector<Phrasing> opening = {
        {{"My name is {name} and I live in {city}.",
          "I am {name}, a resident of {city}."},
         {1.0, 0.6}},
        {{"Last week I received {channel} from someone claiming to be {persona}.",
          "It all began with {channel} from a person who said they were {persona}."},
         {1.1, 0.5}},
        {{"They spoke confidently and knew small details about me.",
          "Their tone was professional and they seemed to know who I was."},
         {1.0, 0.5}},
    };
    static const std::vector<Phrasing> middle = {
        {{"They told me an urgent issue needed my immediate attention.",
          "According to them, a serious problem had to be fixed at once."},
         {1.0, 0.5}},
        {{"Step by step I was guided to follow their instructions.",
          "I did exactly what they asked, one instruction after another."},
         {1.0, 0.5}},
        {{"At their insistence I shared the code that arrived on my phone.",
          "I read out the verification code when they demanded it."},
         {1.0, 0.5}},
        {{"They asked me to transfer Rs. {amount} as a refundable deposit.",
          "A payment of Rs. {amount} was demanded as a processing charge."},
         {1.0, 0.5}},
        {{"Whenever I hesitated, they applied more pressure.",
          "Each time I doubted them, the pressure only increased."},
         {1.0, 0.5}},
        {{"My family had no idea what was happening to me.",
          "I kept the matter from my family out of fear and shame."},
         {1.0, 0.5}},
        {{"They warned me not to discuss the matter with anyone.",
          "I was told that involving others would make things worse."},
         {1.0, 0.5}},
        {{"More demands followed in the next days.",
          "The calls continued and the amounts kept growing."},
         {1.0, 0.5}},
        {{"Only when my account was nearly empty did I realise the truth.",
          "The truth dawned on me when the promised refund never came."},
         {1.0, 0.5}},
    };
    static const std::vector<Phrasing> closing = {
        {{"In total I lost Rs. {amount} to these criminals.",
          "The fraud cost me Rs. {amount} altogether."},
         {1.0, 0.5}},
        {{"I have filed a complaint with the cyber cell.",
          "The matter has been reported to the cyber crime police."},
         {1.0, 0.5}},
        {{"I am sharing my story so others stay alert.",
          "I hope no one else falls for this trap."},
         {1.0, 0.5}},
    };

    std::vector<std::string> lines;
    for (const auto& p : opening) lines.push_back(fill(p.variants[sampler.pick(p.logits)], slots));
    size_t middle_cursor = sampler.content(middle.size());
    while (static_cast<int>(lines.size()) < target_lines - static_cast<int>(closing.size())) {
        const Phrasing& p = middle[middle_cursor % middle.size()];
        lines.push_back(fill(p.variants[sampler.pick(p.logits)], slots));
        ++middle_cursor;
    }
    for (const auto& p : closing) lines.push_back(fill(p.variants[sampler.pick(p.logits)], slots));

    std::string story;
    for (size_t i = 0; i < lines.size(); ++i) {
        story += lines[i];
        if (i + 1 < lines.size()) story += '\n';
    }
    return story;
}

AnnotationRecord mock_record(const GenerationSeed& seed, SlotSampler& sampler) {
    int fraud = fraud_type_index(seed.fraud_type);
    LabelId major_tactic = normalize_label(seed.major_tactic);
    LabelId major_theory = normalize_label(seed.major_theory);
    if (major_tactic.kind != LabelKind::Tactic)
        throw ConfigError("seed major_tactic does not name a tactic: " + seed.major_tactic);
    if (major_theory.kind != LabelKind::Theory)
        throw ConfigError("seed major_theory does not name a theory: " + seed.major_theory);

    std::map<std::string, std::string> slots;
    slots["name"] = kNames[sampler.content(kNames.size())];
    slots["city"] = kCities[sampler.content(kCities.size())];
    slots["channel"] = kChannels[sampler.pick(kChannelLogits)];
    slots["persona"] = kPersonas[static_cast<size_t>(fraud)];
    slots["amount"] = std::to_string(5000 + 500 * static_cast<long long>(sampler.content(200)));

    AnnotationRecord record;
    record.fraud_type = fraud;
    record.major_tactic = major_tactic.index;
    record.major_theory = major_theory.index;
    record.provenance.origin = Provenance::Origin::Synthetic;
    record.provenance.provider = "mock";
    record.provenance.seed = static_cast<long long>(seed.nonce);

    // Majors are always present; other labels switch on with fixed rates so
    // multi-label density lands near 4 tactics / 2 theories per record.
    for (int i = 0; i < kTacticCount; ++i) {
        bool yes = i == major_tactic.index || sampler.bernoulli(0.246);
        if (yes) record.set({LabelKind::Tactic, i}, true, tactic_reason(i, slots, sampler));
    }
    for (int i = 0; i < kTheoryCount; ++i) {
        bool yes = i == major_theory.index || sampler.bernoulli(0.22);
        if (yes) record.set({LabelKind::Theory, i}, true, theory_reason(i, slots, sampler));
    }

    int target_lines = 12 + static_cast<int>(sampler.content(14));
    record.story = build_story(slots, target_lines, sampler);
    return record;
}

std::string wrap_dataset_json(const std::string& body, SlotSampler& sampler) {
    static const std::vector<double> kWrapLogits = {1.4, 0.7, 0.7};
    switch (sampler.pick(kWrapLogits)) {
        case 1: {
            // leading prose before the fenced object
            return "Here is the requested record.\n```json\n" + body + "\n```\n";
        }
        case 2: {
            // trailing comma before the final closing brace
            std::string defect = body;
            size_t brace = defect.rfind('}');
            if (brace != std::string::npos) defect.insert(brace, ",");
            return "```json\n" + defect + "\n```\n";
        }
        default:
            return "```json\n" + body + "\n```\n";
    }
}

uint64_t mix_seed(const GenerationSeed& seed) {
    uint64_t h = seed.nonce;
    h ^= static_cast<uint64_t>(seed.sample_index) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    return h;
}

}  // namespace

std::vector<double> softmax_probabilities(const std::vector<double>& logits, double temperature) {
    if (logits.empty()) throw ConfigError("logit table must be non-empty");
    if (temperature <= 0.0) throw ConfigError("temperature must be > 0");
    double max_logit = *std::max_element(logits.begin(), logits.end());
    std::vector<double> probs(logits.size());
    double sum = 0.0;
    for (size_t i = 0; i < logits.size(); ++i) {
        probs[i] = std::exp((logits[i] - max_logit) / temperature);
        sum += probs[i];
    }
    for (double& p : probs) p /= sum;
    return probs;
}

size_t sample_index_from_logits(const std::vector<double>& logits, double temperature, double u) {
    std::vector<double> probs = softmax_probabilities(logits, temperature);
    double cumulative = 0.0;
    for (size_t i = 0; i < probs.size(); ++i) {
        cumulative += probs[i];
        if (u < cumulative) return i;
    }
    return probs.size() - 1;
}

std::string mock_generate(const std::string& prompt, const GenerationSeed& seed,
                          const GenerationConfig& config, MockMode mode) {
    (void)prompt;  // the mock conditions on the seed, not the prompt text
    validate_config(config);
    SlotSampler sampler(mix_seed(seed), config.temperature);

    if (mode == MockMode::Dataset) {
        AnnotationRecord record = mock_record(seed, sampler);
        return wrap_dataset_json(record_to_json(record).dump(2), sampler);
    }

    // Analysis mode: fabricate a 20-section block with sampled decisions.
    std::array<bool, kLabelCount> present{};
    std::array<std::string, kLabelCount> reasons{};
    std::map<std::string, std::string> slots;
    slots["persona"] = kPersonas[sampler.content(kPersonas.size())];
    slots["channel"] = kChannels[sampler.pick(kChannelLogits)];
    slots["amount"] = std::to_string(5000 + 500 * static_cast<long long>(sampler.content(200)));
    for (int i = 0; i < kLabelCount; ++i) {
        if (!sampler.bernoulli(0.35)) continue;
        present[static_cast<size_t>(i)] = true;
        LabelId id = label_at(i);
        reasons[static_cast<size_t>(i)] = id.kind == LabelKind::Tactic
                                              ? tactic_reason(id.index, slots, sampler)
                                              : theory_reason(id.index, slots, sampler);
    }
    return render_analysis_block(present, reasons);
}

std::string mock_generate(const std::string& prompt, uint64_t seed,
                          const GenerationConfig& config, MockMode mode) {
    GenerationSeed gs;
    gs.fraud_type = fraud_type_name(static_cast<int>(seed % kFraudTypeCount));
    gs.major_tactic =
        display_name({LabelKind::Tactic, static_cast<int>((seed / 10) % kTacticCount)});
    gs.major_theory =
        display_name({LabelKind::Theory, static_cast<int>((seed / 140) % kTheoryCount)});
    gs.sample_index = 0;
    gs.nonce = seed;
    return mock_generate(prompt, gs, config, mode);
}

CompletionResult MockBackend::complete(const CompletionRequest& request,
                                       const GenerationConfig& config, const ProviderKey& key) {
    (void)key;
    int attempt;
    {
        std::lock_guard lock(mutex_);
        attempt = ++attempt_counts_[request.sample_index];
    }
    if (faults_.transport_samples.count(request.sample_index) &&
        (faults_.transport_attempts < 0 || attempt <= faults_.transport_attempts))
        return {false, "", "injected transport failure"};
    if (faults_.malformed_samples.count(request.sample_index) &&
        (faults_.malformed_attempts < 0 || attempt <= faults_.malformed_attempts))
        return {true, "I am sorry, but I cannot produce that output.", ""};

    GenerationSeed fallback;
    const GenerationSeed* seed = request.seed;
    if (!seed) {
        fallback.fraud_type = fraud_type_name(0);
        fallback.major_tactic = display_name({LabelKind::Tactic, 2});
        fallback.major_theory = display_name({LabelKind::Theory, 0});
        fallback.sample_index = request.sample_index;
        fallback.nonce = 0x5eed0000ull + static_cast<uint64_t>(request.sample_index);
        seed = &fallback;
    }
    return {true, mock_generate(request.prompt, *seed, config, mode_), ""};
}

CompletionResult EchoBackend::complete(const CompletionRequest& request,
                                       const GenerationConfig& config, const ProviderKey& key) {
    (void)config;
    (void)key;
    if (request.sample_index < 0 ||
        request.sample_index >= static_cast<long long>(gold_.size()))
        return {false, "", "echo backend has no record for sample"};
    return {true, render_target(gold_[static_cast<size_t>(request.sample_index)]), ""};
}

CompletionResult BitFlipBackend::complete(const CompletionRequest& request,
                                          const GenerationConfig& config,
                                          const ProviderKey& key) {
    (void)config;
    (void)key;
    if (request.sample_index < 0 ||
        request.sample_index >= static_cast<long long>(gold_.size()))
        return {false, "", "bitflip backend has no record for sample"};
    const AnnotationRecord& gold = gold_[static_cast<size_t>(request.sample_index)];

    std::mt19937_64 rng(seed_ ^ (0x9e3779b97f4a7c15ull * static_cast<uint64_t>(
                                     request.sample_index + 1)));
    std::array<bool, kLabelCount> present{};
    std::array<std::string, kLabelCount> reasons{};
    for (LabelId id : all_labels()) {
        int flat = flat_index(id);
        bool value = gold.present(id);
        if (uniform01(rng) < flip_prob_) value = !value;
        present[static_cast<size_t>(flat)] = value;
        if (value)
            reasons[static_cast<size_t>(flat)] = gold.present(id)
                                                     ? gold.reason(id)
                                                     : "signal added during automated review";
    }
    return {true, render_analysis_block(present, reasons), ""};
}

CompletionResult ScriptedBackend::complete(const CompletionRequest& request,
                                           const GenerationConfig& config,
                                           const ProviderKey& key) {
    (void)request;
    (void)config;
    (void)key;
    std::lock_guard lock(mutex_);
    if (next_ >= static_cast<int>(steps_.size()))
        return {false, "", "script exhausted"};
    const Step& step = steps_[static_cast<size_t>(next_++)];
    switch (step.kind) {
        case Step::Kind::Transport: return {false, "", step.text};
        case Step::Kind::Ok:
        case Step::Kind::Text: return {true, step.text, ""};
    }
    return {false, "", "unreachable"};
}

HttpBackend::HttpBackend(std::string base_url, double timeout_seconds)
    : base_url_(std::move(base_url)), timeout_seconds_(timeout_seconds) {}

CompletionResult HttpBackend::complete(const CompletionRequest& request,
                                       const GenerationConfig& config, const ProviderKey& key) {
    httplib::Client client(base_url_);
    client.set_connection_timeout(std::chrono::milliseconds(
        static_cast<long long>(timeout_seconds_ * 1000)));
    client.set_read_timeout(
        std::chrono::milliseconds(static_cast<long long>(timeout_seconds_ * 1000)));

    nlohmann::ordered_json body;
    body["prompt"] = request.prompt;
    body["max_new_tokens"] = config.max_new_tokens;
    body["temperature"] = config.temperature;
    body["top_p"] = config.top_p;
    body["repetition_penalty"] = config.repetition_penalty;
    body["do_sample"] = config.do_sample;

    httplib::Headers headers;
    if (!key.secret.empty()) headers.emplace("Authorization", "Bearer " + key.secret);
    if (!key.provider_name.empty()) headers.emplace("X-Provider", key.provider_name);

    auto response = client.Post("/v1/complete", headers, body.dump(), "application/json");
    if (!response)
        return {false, "", "transport error: " + httplib::to_string(response.error())};
    if (response->status != 200)
        return {false, "", "http status " + std::to_string(response->status)};
    try {
        auto parsed = nlohmann::ordered_json::parse(response->body);
        if (!parsed.contains("text") || !parsed["text"].is_string())
            return {false, "", "response missing text field"};
        return {true, parsed["text"].get<std::string>(), ""};
    } catch (const nlohmann::ordered_json::parse_error& e) {
        return {false, "", std::string("bad response body: ") + e.what()};
    }
}

std::unique_ptr<TextBackend> make_backend(const std::string& spec, MockMode mock_mode,
                                          const std::vector<AnnotationRecord>& gold) {
    auto parse_kv = [](const std::string& text) {
        std::map<std::string, std::string> kv;
        std::istringstream parts(text);
        std::string part;
        while (std::getline(parts, part, ',')) {
            size_t eq = part.find('=');
            if (eq == std::string::npos)
                kv[part] = "";
            else
                kv[part.substr(0, eq)] = part.substr(eq + 1);
        }
        return kv;
    };
    auto parse_index_list = [](const std::string& text) {
        std::set<long long> out;
        std::istringstream parts(text);
        std::string part;
        while (std::getline(parts, part, ';')) {
            if (!part.empty()) out.insert(std::stoll(part));
        }
        return out;
    };

    if (spec == "mock") return std::make_unique<MockBackend>(mock_mode);
    if (spec.starts_with("mock:")) {
        auto kv = parse_kv(spec.substr(5));
        MockFaults faults;
        if (auto it = kv.find("fail"); it != kv.end())
            faults.malformed_samples = parse_index_list(it->second);
        if (auto it = kv.find("transport_fail"); it != kv.end())
            faults.transport_samples = parse_index_list(it->second);
        if (auto it = kv.find("fail_attempts"); it != kv.end())
            faults.malformed_attempts = std::stoi(it->second);
        if (auto it = kv.find("transport_attempts"); it != kv.end())
            faults.transport_attempts = std::stoi(it->second);
        return std::make_unique<MockBackend>(mock_mode, std::move(faults));
    }
    if (spec == "echo") return std::make_unique<EchoBackend>(gold);
    if (spec.starts_with("bitflip")) {
        double p = 0.1;
        uint64_t seed = 7;
        if (spec.starts_with("bitflip:")) {
            auto kv = parse_kv(spec.substr(8));
            if (auto it = kv.find("p"); it != kv.end()) p = std::stod(it->second);
            if (auto it = kv.find("seed"); it != kv.end()) seed = std::stoull(it->second);
        }
        return std::make_unique<BitFlipBackend>(gold, p, seed);
    }
    if (spec.starts_with("http://") || spec.starts_with("https://"))
        return std::make_unique<HttpBackend>(spec);
    throw ConfigError("unknown backend spec: " + spec);
}

}  // namespace fraudlens
