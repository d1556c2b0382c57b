#include "fraudlens/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string to_lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string strip_fence_lines(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        size_t end = (nl == std::string::npos) ? text.size() : nl;
        std::string_view line(text.data() + pos, end - pos);
        if (!trim(line).starts_with("```")) {
            out.append(line);
            if (nl != std::string::npos) out.push_back('\n');
        }
        if (nl == std::string::npos) break;
        pos = nl + 1;
    }
    return out;
}

// Window from the first '{' to its matching '}' (string-aware depth count);
// unbalanced input keeps everything to the end.
std::string brace_window(const std::string& text) {
    size_t start = text.find('{');
    if (start == std::string::npos) throw NoJsonObjectError();
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (size_t i = start; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            if (escaped) {
                escaped = false;
            } else if (c == '\\') {
                escaped = true;
            } else if (c == '"') {
                in_string = false;
            }
            continue;
        }
        if (c == '"') {
            in_string = true;
        } else if (c == '{') {
            ++depth;
        } else if (c == '}') {
            --depth;
            if (depth == 0) return text.substr(start, i - start + 1);
        }
    }
    return text.substr(start);
}

std::string drop_trailing_commas_once(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    bool in_string = false;
    bool escaped = false;
    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_string) {
            out.push_back(c);
            if (escaped)
                escaped = false;
            else if (c == '\\')
                escaped = true;
            else if (c == '"')
                in_string = false;
            continue;
        }
        if (c == '"') {
            in_string = true;
            out.push_back(c);
            continue;
        }
        if (c == ',') {
            size_t j = i + 1;
            while (j < text.size() && std::isspace(static_cast<unsigned char>(text[j]))) ++j;
            if (j < text.size() && (text[j] == '}' || text[j] == ']')) continue;  // drop
        }
        out.push_back(c);
    }
    return out;
}

std::string drop_trailing_commas(std::string text) {
    // Runs of commas (",,]") need repeated passes to reach a fixpoint.
    for (;;) {
        std::string next = drop_trailing_commas_once(text);
        if (next == text) return text;
        text = std::move(next);
    }
}

const Json* find_member(const Json& obj, const std::string& wanted_key) {
    std::string wanted = normalize_key(wanted_key);
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (normalize_key(it.key()) == wanted) return &it.value();
    }
    return nullptr;
}

const Json& require_member(const Json& obj, const std::string& key) {
    const Json* m = find_member(obj, key);
    if (!m)
        throw ValidationError(ValidationError::Code::MissingField, key, "missing field: " + key);
    return *m;
}

bool parse_yes_no(const Json& value, const std::string& field) {
    if (!value.is_string())
        throw ValidationError(ValidationError::Code::InvalidPresentValue, field,
                              "field " + field + " must be a Yes/No string");
    std::string v = to_lower(trim(value.get<std::string>()));
    if (v == "yes") return true;
    if (v == "no") return false;
    throw ValidationError(ValidationError::Code::InvalidPresentValue, field,
                          "field " + field + " has invalid present value '" +
                              value.get<std::string>() + "'");
}

// Fills present/reason slots for one label group ("Tactics" or
// "Behavioural_Theories"), enforcing the reason-presence biconditional.
template <size_t N>
void parse_label_group(const Json& group, const std::string& group_name, LabelKind kind,
                       std::array<bool, N>& present, std::array<std::string, N>& reason) {
    if (!group.is_object())
        throw ValidationError(ValidationError::Code::MissingField, group_name,
                              "field " + group_name + " must be an object");
    for (size_t i = 0; i < N; ++i) {
        LabelId id{kind, static_cast<int>(i)};
        std::string key = json_key(id);
        const Json* flag = find_member(group, key);
        if (!flag)
            throw ValidationError(ValidationError::Code::MissingField, group_name + "." + key,
                                  "missing label field: " + group_name + "." + key);
        present[i] = parse_yes_no(*flag, key);

        const Json* reason_field = find_member(group, key + "_Reason");
        std::string reason_text;
        if (reason_field && reason_field->is_string())
            reason_text = trim(reason_field->get<std::string>());
        if (present[i] && reason_text.empty())
            throw ValidationError(ValidationError::Code::ReasonConsistency, key,
                                  "label " + key + " is positive but has no reason");
        if (!present[i] && !reason_text.empty())
            throw ValidationError(ValidationError::Code::ReasonConsistency, key,
                                  "label " + key + " is negative but carries a reason");
        reason[i] = present[i] ? reason_text : std::string{};
    }
}

int parse_major(const Json& obj, const std::string& field, LabelKind kind) {
    const Json& value = require_member(obj, field);
    if (!value.is_string())
        throw ValidationError(ValidationError::Code::MissingField, field,
                              "field " + field + " must be a string");
    auto id = try_normalize_label(value.get<std::string>());
    if (!id || id->kind != kind)
        throw ValidationError(ValidationError::Code::UnknownLabel, field,
                              "field " + field + " does not name a known " +
                                  (kind == LabelKind::Tactic ? "tactic" : "theory") + ": '" +
                                  value.get<std::string>() + "'");
    return id->index;
}

uint64_t fnv1a(std::string_view data, uint64_t h = 1469598103934665603ull) {
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace

int count_lines(const std::string& text) {
    if (text.empty()) return 0;
    int lines = 1;
    for (char c : text)
        if (c == '\n') ++lines;
    if (text.back() == '\n') --lines;
    return lines;
}

std::string repair_json_text(const std::string& raw) {
    return drop_trailing_commas(brace_window(strip_fence_lines(raw)));
}

AnnotationRecord validate_record(const Json& candidate, std::vector<std::string>* warnings) {
    if (!candidate.is_object())
        throw ValidationError(ValidationError::Code::NotAnObject, "",
                              "candidate is not a JSON object");
    AnnotationRecord record;

    const Json& story = require_member(candidate, "Story");
    if (!story.is_string() || trim(story.get<std::string>()).empty())
        throw ValidationError(ValidationError::Code::EmptyStory, "Story",
                              "Story must be a non-empty string");
    record.story = story.get<std::string>();
    int lines = count_lines(record.story);
    if (warnings && (lines < 12 || lines > 25))
        warnings->push_back("story has " + std::to_string(lines) +
                            " lines, outside the 12-25 target");

    const Json& fraud = require_member(candidate, "Fraud_Type");
    if (!fraud.is_string())
        throw ValidationError(ValidationError::Code::UnknownFraudType, "Fraud_Type",
                              "Fraud_Type must be a string");
    auto fraud_idx = try_fraud_type_index(fraud.get<std::string>());
    if (!fraud_idx)
        throw ValidationError(ValidationError::Code::UnknownFraudType, "Fraud_Type",
                              "unknown fraud type: '" + fraud.get<std::string>() + "'");
    record.fraud_type = *fraud_idx;

    parse_label_group(require_member(candidate, "Tactics"), "Tactics", LabelKind::Tactic,
                      record.tactic_present, record.tactic_reason);
    parse_label_group(require_member(candidate, "Behavioural_Theories"), "Behavioural_Theories",
                      LabelKind::Theory, record.theory_present, record.theory_reason);

    record.major_tactic = parse_major(candidate, "Major_Tactic", LabelKind::Tactic);
    if (!record.tactic_present[static_cast<size_t>(record.major_tactic)])
        throw ValidationError(ValidationError::Code::MajorNotPositive, "Major_Tactic",
                              "Major_Tactic '" +
                                  display_name({LabelKind::Tactic, record.major_tactic}) +
                                  "' is not marked present");
    record.major_theory = parse_major(candidate, "Major_Theory", LabelKind::Theory);
    if (!record.theory_present[static_cast<size_t>(record.major_theory)])
        throw ValidationError(ValidationError::Code::MajorNotPositive, "Major_Theory",
                              "Major_Theory '" +
                                  display_name({LabelKind::Theory, record.major_theory}) +
                                  "' is not marked present");

    if (const Json* prov = find_member(candidate, "Provenance"); prov && prov->is_object()) {
        if (const Json* origin = find_member(*prov, "origin"); origin && origin->is_string())
            record.provenance.origin = normalize_key(origin->get<std::string>()) == "synthetic"
                                           ? Provenance::Origin::Synthetic
                                           : Provenance::Origin::Real;
        if (const Json* provider = find_member(*prov, "provider");
            provider && provider->is_string())
            record.provenance.provider = provider->get<std::string>();
        if (const Json* seed = find_member(*prov, "seed"); seed && seed->is_number_integer())
            record.provenance.seed = seed->get<long long>();
        if (const Json* attempts = find_member(*prov, "attempts");
            attempts && attempts->is_number_integer())
            record.provenance.attempts = attempts->get<int>();
    }
    return record;
}

Json record_to_json(const AnnotationRecord& record) {
    Json out = Json::object();
    out["Story"] = record.story;
    out["Fraud_Type"] = fraud_type_name(record.fraud_type);

    Json tactics = Json::object();
    for (int i = 0; i < kTacticCount; ++i) {
        std::string key = json_key({LabelKind::Tactic, i});
        bool yes = record.tactic_present[static_cast<size_t>(i)];
        tactics[key] = yes ? "Yes" : "No";
        if (yes) tactics[key + "_Reason"] = record.tactic_reason[static_cast<size_t>(i)];
    }
    out["Tactics"] = std::move(tactics);

    Json theories = Json::object();
    for (int i = 0; i < kTheoryCount; ++i) {
        std::string key = json_key({LabelKind::Theory, i});
        bool yes = record.theory_present[static_cast<size_t>(i)];
        theories[key] = yes ? "Yes" : "No";
        if (yes) theories[key + "_Reason"] = record.theory_reason[static_cast<size_t>(i)];
    }
    out["Behavioural_Theories"] = std::move(theories);

    out["Major_Tactic"] = display_name({LabelKind::Tactic, record.major_tactic});
    out["Major_Theory"] = display_name({LabelKind::Theory, record.major_theory});

    Json prov = Json::object();
    prov["origin"] =
        record.provenance.origin == Provenance::Origin::Synthetic ? "synthetic" : "real";
    if (!record.provenance.provider.empty()) prov["provider"] = record.provenance.provider;
    if (record.provenance.seed) prov["seed"] = *record.provenance.seed;
    if (record.provenance.attempts > 0) prov["attempts"] = record.provenance.attempts;
    out["Provenance"] = std::move(prov);
    return out;
}

std::string record_to_line(const AnnotationRecord& record) {
    return record_to_json(record).dump();
}

LoadResult load_dataset(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open dataset file: " + path.string());
    LoadResult result;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            Json candidate = Json::parse(line);
            result.records.push_back(validate_record(candidate, &result.warnings));
        } catch (const Json::parse_error& e) {
            if (options.strict)
                throw DatasetError("line " + std::to_string(line_no) + ": " + e.what());
            result.diagnostics.push_back({line_no, e.what()});
        } catch (const ValidationError& e) {
            if (options.strict)
                throw DatasetError("line " + std::to_string(line_no) + ": " + e.what());
            result.diagnostics.push_back({line_no, e.what()});
        }
    }
    return result;
}

void save_dataset(const std::vector<AnnotationRecord>& records,
                  const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write dataset file: " + path.string());
    for (const auto& record : records) out << record_to_line(record) << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::string dataset_content_hash(const std::vector<AnnotationRecord>& records) {
    uint64_t h = 1469598103934665603ull;
    for (const auto& record : records) {
        h = fnv1a(record_to_line(record), h);
        h = fnv1a("\n", h);
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace fraudlens
