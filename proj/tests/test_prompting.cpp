#include <doctest.h>

#include <random>

#include "fraudlens/parsing.hpp"
#include "fraudlens/prompting.hpp"
#include "test_support.hpp"

using namespace fraudlens;
namespace ts = fraudlens::testsupport;

TEST_CASE("detailed prompt embeds all 20 bracketed headers and definitions") {
    PromptBundle bundle = build_detailed_prompt("X");
    for (LabelId id : all_labels()) {
        std::string marker = "[" + display_name(id) + "]";
        CHECK(bundle.rendered.find(marker) != std::string::npos);
        CHECK(bundle.system_instruction.find(display_name(id) + ":") != std::string::npos);
    }
    CHECK(bundle.rendered.find("\nX\n") != std::string::npos);
}

TEST_CASE("detailed prompt instruction size sits in the 1500-2500 token band") {
    PromptBundle bundle = build_detailed_prompt("X");
    CHECK(bundle.approx_token_count >= 1500);
    CHECK(bundle.approx_token_count <= 2500);
}

TEST_CASE("concise prompt embeds no definitions and stays within 30-80 tokens") {
    PromptBundle bundle = build_concise_prompt("X");
    CHECK(bundle.approx_token_count >= 30);
    CHECK(bundle.approx_token_count <= 80);
    // no definition text leaks into the concise instruction
    CHECK(bundle.system_instruction.find(label_definition({LabelKind::Tactic, 0})) ==
          std::string::npos);
    CHECK(bundle.system_instruction.find("[Reconnaissance]") == std::string::npos);
}

TEST_CASE("prompt builders are deterministic") {
    std::string narrative = "I got a call.\nThey asked for money.";
    CHECK(build_detailed_prompt(narrative).rendered == build_detailed_prompt(narrative).rendered);
    CHECK(build_concise_prompt(narrative).rendered == build_concise_prompt(narrative).rendered);
}

TEST_CASE("render_target emits one Present: Yes only for positive labels") {
    AnnotationRecord record;
    record.story = "s";
    record.fraud_type = 0;
    record.set({LabelKind::Tactic, 2}, true, "an unsolicited call");
    record.major_tactic = 2;
    record.set({LabelKind::Theory, 0}, true, "they threatened arrest");
    record.major_theory = 0;

    std::string block = render_target(record);
    size_t yes_count = 0;
    for (size_t pos = block.find("Present: Yes"); pos != std::string::npos;
         pos = block.find("Present: Yes", pos + 1))
        ++yes_count;
    CHECK(yes_count == 2);
    CHECK(block.find("[Initial Contact]\nPresent: Yes") != std::string::npos);
    CHECK(block.find("Reason: N/A") != std::string::npos);
}

TEST_CASE("parse(render_target(r)) reproduces the 20 flags and reasons") {
    std::mt19937_64 rng(5150);
    for (int iter = 0; iter < 300; ++iter) {
        AnnotationRecord record = ts::random_record(rng, /*hostile_reasons=*/true);
        ParsedOutput parsed = parse_output(render_target(record));
        for (LabelId id : all_labels()) {
            CHECK(parsed.at(id).present == record.present(id));
            if (record.present(id)) {
                // reasons match after the '[' -> '(' sanitization and
                // whitespace normalization
                auto expect = alnum_tokens(sanitize_reason(record.reason(id)));
                auto got = alnum_tokens(parsed.at(id).reason);
                CHECK(expect == got);
            }
        }
    }
}

TEST_CASE("sanitize_reason removes section-marker ambiguity") {
    CHECK(sanitize_reason("saw [Pivoting] mentioned") == "saw (Pivoting] mentioned");
    CHECK(sanitize_reason("plain text") == "plain text");
}

TEST_CASE("generation prompt carries the seed conditioning") {
    GenerationSeed seed{"Investment Fraud", "Detonation", "Phantom Riches", 17, 12345};
    std::string prompt = build_generation_prompt(seed);
    CHECK(prompt.find("Investment Fraud") != std::string::npos);
    CHECK(prompt.find("Detonation") != std::string::npos);
    CHECK(prompt.find("Phantom Riches") != std::string::npos);
    CHECK(prompt.find("17") != std::string::npos);
    CHECK(prompt.find("12345") != std::string::npos);
    CHECK(prompt.find("\"Story\"") != std::string::npos);
}

TEST_CASE("prompt mode parsing") {
    CHECK(prompt_mode_from_string("detailed") == PromptMode::Detailed);
    CHECK(prompt_mode_from_string("Concise") == PromptMode::Concise);
    CHECK_THROWS(prompt_mode_from_string("verbose"));
}
