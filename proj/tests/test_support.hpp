#pragma once

// Shared helpers for the test suites: random record/text generators and a
// scratch-directory guard.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <unistd.h>
#include <vector>

#include "fraudlens/corpus.hpp"
#include "fraudlens/taxonomy.hpp"

namespace fraudlens::testsupport {

inline double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::string random_word(std::mt19937_64& rng) {
    static const char* words[] = {"account", "transfer", "caller",  "police", "refund",
                                  "deposit", "link",     "arrest",  "video",  "crypto",
                                  "bank",    "otp",      "pressure", "family", "loan"};
    return words[rng() % (sizeof(words) / sizeof(words[0]))];
}

inline std::string random_sentence(std::mt19937_64& rng, int words = 6) {
    std::string out;
    for (int i = 0; i < words; ++i) {
        if (i) out += ' ';
        out += random_word(rng);
    }
    return out;
}

// Occasionally hostile reason text: brackets, keywords, newlines.
inline std::string random_reason(std::mt19937_64& rng) {
    std::string out = random_sentence(rng, 3 + static_cast<int>(rng() % 5));
    switch (rng() % 6) {
        case 0: out += " [Pivoting]"; break;          // known label marker
        case 1: out += " [unrelated bracket]"; break;
        case 2: out += "\nPresent: No"; break;
        case 3: out = "Reason: " + out; break;
        default: break;
    }
    return out;
}

inline std::string random_story(std::mt19937_64& rng) {
    int lines = 12 + static_cast<int>(rng() % 14);
    std::string story;
    for (int i = 0; i < lines; ++i) {
        if (i) story += '\n';
        story += random_sentence(rng, 5 + static_cast<int>(rng() % 6));
    }
    return story;
}

inline AnnotationRecord random_record(std::mt19937_64& rng, bool hostile_reasons = false) {
    AnnotationRecord record;
    record.story = random_story(rng);
    record.fraud_type = static_cast<int>(rng() % kFraudTypeCount);
    auto reason = [&] {
        return hostile_reasons ? random_reason(rng) : random_sentence(rng, 4);
    };
    for (int i = 0; i < kTacticCount; ++i)
        if (uniform01(rng) < 0.3) record.set({LabelKind::Tactic, i}, true, reason());
    for (int i = 0; i < kTheoryCount; ++i)
        if (uniform01(rng) < 0.35) record.set({LabelKind::Theory, i}, true, reason());
    record.major_tactic = static_cast<int>(rng() % kTacticCount);
    record.set({LabelKind::Tactic, record.major_tactic}, true, reason());
    record.major_theory = static_cast<int>(rng() % kTheoryCount);
    record.set({LabelKind::Theory, record.major_theory}, true, reason());
    record.provenance.origin = Provenance::Origin::Synthetic;
    record.provenance.provider = "test";
    record.provenance.seed = static_cast<long long>(rng() % 100000);
    return record;
}

inline void write_lines(const std::filesystem::path& path,
                        const std::vector<std::string>& lines) {
    std::ofstream out(path, std::ios::trunc);
    for (const auto& line : lines) out << line << '\n';
}

class ScratchDir {
public:
    explicit ScratchDir(const std::string& tag) {
        path_ = std::filesystem::temp_directory_path() /
                ("fraudlens_" + tag + "_" + std::to_string(::getpid()) + "_" +
                 std::to_string(counter_++));
        std::filesystem::create_directories(path_);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path file(const std::string& name) const { return path_ / name; }

private:
    static inline int counter_ = 0;
    std::filesystem::path path_;
};

}  // namespace fraudlens::testsupport
