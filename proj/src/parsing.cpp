#include "fraudlens/parsing.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_set>

namespace fraudlens {
namespace {

bool iequal_at(const std::string& text, size_t pos, const std::string& needle) {
    if (pos + needle.size() > text.size()) return false;
    for (size_t i = 0; i < needle.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
            std::tolower(static_cast<unsigned char>(needle[i])))
            return false;
    }
    return true;
}

size_t ifind(const std::string& text, const std::string& needle, size_t from) {
    if (needle.empty()) return from <= text.size() ? from : std::string::npos;
    if (text.size() < needle.size()) return std::string::npos;
    for (size_t pos = from; pos + needle.size() <= text.size(); ++pos) {
        if (iequal_at(text, pos, needle)) return pos;
    }
    return std::string::npos;
}

size_t skip_space(const std::string& text, size_t pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    return pos;
}

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

const std::vector<std::string>& label_markers() {
    static const std::vector<std::string> markers = [] {
        std::vector<std::string> m;
        m.reserve(kLabelCount);
        for (LabelId id : all_labels()) m.push_back("[" + display_name(id) + "]");
        return m;
    }();
    return markers;
}

// Earliest position of any known "[Label]" marker at or after `from`.
size_t next_marker(const std::string& text, size_t from) {
    size_t best = std::string::npos;
    for (const auto& marker : label_markers()) {
        size_t pos = ifind(text, marker, from);
        if (pos < best) best = pos;
    }
    return best;
}

// One label's section: find "[Label]" followed by whitespace, "Present:",
// a value, whitespace, "Reason:", and the tail. Occurrences that lack the
// Present/Reason shape are skipped, mirroring regex search semantics.
bool match_section(const std::string& text, const std::string& marker, LabelParse& out) {
    static const std::string kPresent = "Present:";
    static const std::string kReason = "Reason:";
    for (size_t occ = ifind(text, marker, 0); occ != std::string::npos;
         occ = ifind(text, marker, occ + 1)) {
        size_t p = skip_space(text, occ + marker.size());
        if (!iequal_at(text, p, kPresent)) continue;
        size_t value_start = skip_space(text, p + kPresent.size());
        size_t reason_kw = ifind(text, kReason, value_start);
        if (reason_kw == std::string::npos) continue;

        std::string present_raw =
            lower(trim(std::string_view(text).substr(value_start, reason_kw - value_start)));
        size_t reason_start = skip_space(text, reason_kw + kReason.size());
        size_t reason_end = next_marker(text, reason_start);
        if (reason_end == std::string::npos) reason_end = text.size();
        std::string reason =
            trim(std::string_view(text).substr(reason_start, reason_end - reason_start));

        // "yes" wins over "no"/"n/a"; unrecognized values default to absent.
        out.present = present_raw.find("yes") != std::string::npos;
        out.reason = std::move(reason);
        out.matched = true;
        return true;
    }
    return false;
}

}  // namespace

ParsedOutput parse_output(const std::string& text) {
    ParsedOutput result;
    result.raw_text = text;
    const auto& markers = label_markers();
    for (int i = 0; i < kLabelCount; ++i) {
        LabelParse parse;
        if (match_section(text, markers[static_cast<size_t>(i)], parse)) {
            result.labels[static_cast<size_t>(i)] = std::move(parse);
        } else {
            result.labels[static_cast<size_t>(i)] = LabelParse{};  // defaulted
        }
    }
    return result;
}

PredictionVectors to_vectors(const ParsedOutput& parsed) {
    PredictionVectors v;
    for (int i = 0; i < kTacticCount; ++i)
        v.tactical[static_cast<size_t>(i)] = parsed.labels[static_cast<size_t>(i)].present;
    for (int i = 0; i < kTheoryCount; ++i)
        v.behavioral[static_cast<size_t>(i)] =
            parsed.labels[static_cast<size_t>(kTacticCount + i)].present;
    return v;
}

std::vector<std::string> alnum_tokens(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(std::tolower(c)));
        } else if (!current.empty()) {
            tokens.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

double lexical_alignment(const std::string& reason, const std::string& narrative) {
    auto reason_tokens = alnum_tokens(reason);
    if (reason_tokens.empty()) return 0.0;
    std::unordered_set<std::string> distinct(reason_tokens.begin(), reason_tokens.end());
    auto narrative_tokens = alnum_tokens(narrative);
    std::unordered_set<std::string> narrative_set(narrative_tokens.begin(),
                                                  narrative_tokens.end());
    size_t overlap = 0;
    for (const auto& token : distinct)
        if (narrative_set.count(token)) ++overlap;
    return static_cast<double>(overlap) / static_cast<double>(distinct.size());
}

std::pair<std::optional<int>, std::optional<int>> select_major(const ParsedOutput& parsed,
                                                               const std::string& narrative) {
    auto pick = [&](LabelKind kind, int count) -> std::optional<int> {
        std::optional<int> best;
        double best_score = -1.0;
        for (int i = 0; i < count; ++i) {
            const LabelParse& lp = parsed.at({kind, i});
            if (!lp.present) continue;
            double score = lexical_alignment(lp.reason, narrative);
            if (score > best_score) {  // ties keep the earlier index
                best_score = score;
                best = i;
            }
        }
        return best;
    };
    return {pick(LabelKind::Tactic, kTacticCount), pick(LabelKind::Theory, kTheoryCount)};
}

}  // namespace fraudlens
