#include "fraudlens/taxonomy.hpp"

#include <cctype>
#include <mutex>
#include <sstream>
#include <unordered_map>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

const std::vector<std::string> kTactics = {
    "Reconnaissance",
    "Resource Development",
    "Initial Contact",
    "Detonation",
    "Persistence",
    "Escalation",
    "Defense Evasion",
    "Credential Harvesting",
    "Discovery",
    "Pivoting",
    "Collection",
    "Command and Control",
    "Exfiltration",
    "Impact",
};

const std::vector<std::string> kTheories = {
    "Fear and Intimidation",
    "Urgency and Scarcity",
    "Authority, Social Proof, and Impersonation",
    "Consistency and Reciprocity",
    "Phantom Riches",
    "Emotional Exploitation",
};

const std::vector<std::string> kFraudTypes = {
    "Advertisement Fraud",
    "Customer Care/Technical Support Fraud",
    "Customs Fraud/Pig Butchering/Matrimonial Fraud",
    "Investment Fraud",
    "Insurance Fraud",
    "Job Fraud",
    "Loan Scam",
    "Sextortion",
    "Digital Arrest",
    "Crypto Investment Fraud",
};

// Short report-style names that differ from the canonical long form after
// normalization. Everything else resolves through normalize_key alone.
struct AliasEntry {
    const char* surface;
    LabelKind kind;
    int index;
};

const AliasEntry kAliases[] = {
    {"Authority/Social Proof", LabelKind::Theory, 2},
    {"Authority & Social Proof", LabelKind::Theory, 2},
};

const std::unordered_map<std::string, LabelId>& label_index() {
    static const std::unordered_map<std::string, LabelId> table = [] {
        std::unordered_map<std::string, LabelId> t;
        for (int i = 0; i < kTacticCount; ++i)
            t.emplace(normalize_key(kTactics[i]), LabelId{LabelKind::Tactic, i});
        for (int i = 0; i < kTheoryCount; ++i)
            t.emplace(normalize_key(kTheories[i]), LabelId{LabelKind::Theory, i});
        for (const auto& a : kAliases)
            t.emplace(normalize_key(a.surface), LabelId{a.kind, a.index});
        return t;
    }();
    return table;
}

const std::unordered_map<std::string, int>& fraud_index() {
    static const std::unordered_map<std::string, int> table = [] {
        std::unordered_map<std::string, int> t;
        for (int i = 0; i < kFraudTypeCount; ++i) t.emplace(normalize_key(kFraudTypes[i]), i);
        return t;
    }();
    return table;
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out.push_back('\\');
            out.push_back(c);
        } else if (static_cast<unsigned char>(c) < 0x20) {
            char buf[8];
            std::snprintf(buf, sizeof(buf), "\\u%04x", c);
            out += buf;
        } else {
            out.push_back(c);
        }
    }
    return out;
}

}  // namespace

const LabelSpace& canonical_space() {
    static const LabelSpace space{kTactics, kTheories, kFraudTypes};
    return space;
}

std::string normalize_key(std::string_view name) {
    std::string out;
    out.reserve(name.size());
    bool pending_space = false;
    auto push_word_break = [&] {
        if (!out.empty()) pending_space = true;
    };
    for (size_t i = 0; i < name.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(name[i]);
        if (c == '&') {
            push_word_break();
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out += "and";
            pending_space = true;
            continue;
        }
        if (std::isalnum(c)) {
            if (pending_space) {
                out.push_back(' ');
                pending_space = false;
            }
            out.push_back(static_cast<char>(std::tolower(c)));
        } else {
            push_word_break();
        }
    }
    return out;
}

LabelId normalize_label(std::string_view name) {
    auto id = try_normalize_label(name);
    if (!id) throw UnknownLabelError(std::string(name));
    return *id;
}

std::optional<LabelId> try_normalize_label(std::string_view name) {
    const auto& table = label_index();
    auto it = table.find(normalize_key(name));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const std::string& display_name(LabelId id) {
    if (id.kind == LabelKind::Tactic) return kTactics.at(static_cast<size_t>(id.index));
    return kTheories.at(static_cast<size_t>(id.index));
}

std::string json_key(LabelId id) {
    const std::string& name = display_name(id);
    std::string out;
    bool pending = false;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            if (pending && !out.empty()) out.push_back('_');
            pending = false;
            out.push_back(static_cast<char>(c));
        } else {
            pending = true;
        }
    }
    return out;
}

std::string machine_id(LabelId id) {
    std::string key = json_key(id);
    for (char& c : key) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return key;
}

int fraud_type_index(std::string_view name) {
    auto idx = try_fraud_type_index(name);
    if (!idx) throw UnknownFraudTypeError(std::string(name));
    return *idx;
}

std::optional<int> try_fraud_type_index(std::string_view name) {
    const auto& table = fraud_index();
    auto it = table.find(normalize_key(name));
    if (it == table.end()) return std::nullopt;
    return it->second;
}

const std::string& fraud_type_name(int index) {
    return kFraudTypes.at(static_cast<size_t>(index));
}

const std::array<LabelId, kLabelCount>& all_labels() {
    static const std::array<LabelId, kLabelCount> labels = [] {
        std::array<LabelId, kLabelCount> out{};
        for (int i = 0; i < kTacticCount; ++i) out[static_cast<size_t>(i)] = {LabelKind::Tactic, i};
        for (int i = 0; i < kTheoryCount; ++i)
            out[static_cast<size_t>(kTacticCount + i)] = {LabelKind::Theory, i};
        return out;
    }();
    return labels;
}

int flat_index(LabelId id) {
    return id.kind == LabelKind::Tactic ? id.index : kTacticCount + id.index;
}

LabelId label_at(int flat) {
    if (flat < kTacticCount) return {LabelKind::Tactic, flat};
    return {LabelKind::Theory, flat - kTacticCount};
}

std::string label_space_to_json(const LabelSpace& space) {
    std::ostringstream os;
    auto emit_list = [&](const char* key, const std::vector<std::string>& names) {
        os << '"' << key << "\":[";
        for (size_t i = 0; i < names.size(); ++i) {
            if (i) os << ',';
            os << '"' << json_escape(names[i]) << '"';
        }
        os << ']';
    };
    os << '{';
    emit_list("tactics", space.tactics);
    os << ',';
    emit_list("theories", space.theories);
    os << ',';
    emit_list("fraud_types", space.fraud_types);
    os << '}';
    return os.str();
}

}  // namespace fraudlens
