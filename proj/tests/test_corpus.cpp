#include <doctest.h>

#include <random>

#include "fraudlens/corpus.hpp"
#include "fraudlens/errors.hpp"
#include "test_support.hpp"

using namespace fraudlens;
namespace ts = fraudlens::testsupport;

namespace {

Json minimal_candidate() {
    Json j = Json::object();
    j["Story"] = "line one\nline two\nline three";
    j["Fraud_Type"] = "Investment Fraud";
    Json tactics = Json::object();
    for (int i = 0; i < kTacticCount; ++i) tactics[json_key({LabelKind::Tactic, i})] = "No";
    tactics["Initial_Contact"] = "Yes";
    tactics["Initial_Contact_Reason"] = "an unsolicited call started it";
    j["Tactics"] = tactics;
    Json theories = Json::object();
    for (int i = 0; i < kTheoryCount; ++i) theories[json_key({LabelKind::Theory, i})] = "No";
    theories["Phantom_Riches"] = "Yes";
    theories["Phantom_Riches_Reason"] = "huge returns were promised";
    j["Behavioural_Theories"] = theories;
    j["Major_Tactic"] = "Initial Contact";
    j["Major_Theory"] = "Phantom Riches";
    return j;
}

}  // namespace

TEST_CASE("repair strips fences, trims to the object, and drops trailing commas") {
    CHECK(repair_json_text("```json\n{\"a\": 1,}\n```") == "{\"a\": 1}");
    CHECK(repair_json_text("{\"a\": [1, 2,]}") == "{\"a\": [1, 2]}");
    CHECK_THROWS_AS(repair_json_text("no braces here"), NoJsonObjectError);
    CHECK(repair_json_text("prose before {\"k\": \"v\"} prose after") == "{\"k\": \"v\"}");
    CHECK(repair_json_text("{\"a\": {\"b\": 2}} trailing story") == "{\"a\": {\"b\": 2}}");
    // commas inside strings survive
    CHECK(repair_json_text("{\"a\": \"x,}\"}") == "{\"a\": \"x,}\"}");
    // runs of trailing commas collapse fully
    CHECK(repair_json_text("{\"a\": [1,,]}") == "{\"a\": [1]}");
    // unbalanced object is kept to the end rather than rejected
    CHECK(repair_json_text("{\"a\": 1").starts_with("{\"a\""));
}

TEST_CASE("repair is idempotent on fuzz inputs") {
    std::mt19937_64 rng(404);
    const std::string alphabet = "{}[]\",:`\n abcdef0123,";
    int repaired = 0;
    for (int i = 0; i < 2000; ++i) {
        std::string input;
        size_t len = rng() % 160;
        for (size_t k = 0; k < len; ++k) input.push_back(alphabet[rng() % alphabet.size()]);
        try {
            std::string once = repair_json_text(input);
            std::string twice = repair_json_text(once);
            CHECK(once == twice);
            ++repaired;
        } catch (const NoJsonObjectError&) {
            // acceptable outcome for brace-free noise
        }
    }
    CHECK(repaired > 0);
}

TEST_CASE("validate_record accepts a conforming candidate") {
    std::vector<std::string> warnings;
    AnnotationRecord record = validate_record(minimal_candidate(), &warnings);
    CHECK(record.fraud_type == 3);
    CHECK(record.tactic_present[2]);
    CHECK(record.tactic_reason[2] == "an unsolicited call started it");
    CHECK(record.major_tactic == 2);
    CHECK(record.major_theory == 4);
    // 3-line story is outside the 12-25 target: warned, not rejected
    CHECK(warnings.size() == 1);
}

TEST_CASE("validate_record enforces the schema rules") {
    SUBCASE("major label must be positive") {
        Json j = minimal_candidate();
        j["Major_Tactic"] = "Detonation";  // Detonation is "No"
        try {
            validate_record(j);
            FAIL("expected MajorNotPositive");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::MajorNotPositive);
        }
    }
    SUBCASE("missing group") {
        Json j = minimal_candidate();
        j.erase("Behavioural_Theories");
        try {
            validate_record(j);
            FAIL("expected MissingField");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::MissingField);
        }
    }
    SUBCASE("positive label without reason") {
        Json j = minimal_candidate();
        j["Tactics"].erase("Initial_Contact_Reason");
        try {
            validate_record(j);
            FAIL("expected ReasonConsistency");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::ReasonConsistency);
        }
    }
    SUBCASE("negative label with reason") {
        Json j = minimal_candidate();
        j["Tactics"]["Detonation_Reason"] = "should not be here";
        try {
            validate_record(j);
            FAIL("expected ReasonConsistency");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::ReasonConsistency);
        }
    }
    SUBCASE("present value outside yes/no") {
        Json j = minimal_candidate();
        j["Tactics"]["Pivoting"] = "maybe";
        try {
            validate_record(j);
            FAIL("expected InvalidPresentValue");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::InvalidPresentValue);
        }
    }
    SUBCASE("unknown fraud type") {
        Json j = minimal_candidate();
        j["Fraud_Type"] = "Time Travel Fraud";
        try {
            validate_record(j);
            FAIL("expected UnknownFraudType");
        } catch (const ValidationError& e) {
            CHECK(e.code() == ValidationError::Code::UnknownFraudType);
        }
    }
    SUBCASE("yes/no mapping is case-insensitive with whitespace") {
        Json j = minimal_candidate();
        j["Tactics"]["Initial_Contact"] = "  YES ";
        j["Behavioural_Theories"]["Phantom_Riches"] = "yes";
        AnnotationRecord record = validate_record(j);
        CHECK(record.tactic_present[2]);
    }
    SUBCASE("not an object") {
        CHECK_THROWS_AS(validate_record(Json::array()), ValidationError);
    }
}

TEST_CASE("record json round-trips through validate_record") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 200; ++i) {
        AnnotationRecord record = ts::random_record(rng);
        AnnotationRecord back = validate_record(record_to_json(record));
        CHECK(back == record);
    }
}

TEST_CASE("reason-presence biconditional holds on every validated record") {
    std::mt19937_64 rng(18);
    for (int i = 0; i < 100; ++i) {
        AnnotationRecord record = validate_record(record_to_json(ts::random_record(rng)));
        for (LabelId id : all_labels()) {
            CHECK(record.present(id) == !record.reason(id).empty());
        }
    }
}

TEST_CASE("dataset save/load identity, diagnostics, and hashing") {
    ts::ScratchDir dir("corpus");
    std::mt19937_64 rng(99);
    std::vector<AnnotationRecord> records;
    for (int i = 0; i < 3; ++i) records.push_back(ts::random_record(rng));

    auto path = dir.file("data.jsonl");
    save_dataset(records, path);
    LoadResult loaded = load_dataset(path);
    REQUIRE(loaded.records.size() == 3);
    CHECK(loaded.records == records);
    CHECK(loaded.diagnostics.empty());
    CHECK(dataset_content_hash(loaded.records) == dataset_content_hash(records));

    records[1].story += "\nan extra closing line";
    CHECK(dataset_content_hash(loaded.records) != dataset_content_hash(records));
}

TEST_CASE("malformed lines: lenient collects, strict throws") {
    ts::ScratchDir dir("corpus_bad");
    std::mt19937_64 rng(7);
    auto path = dir.file("mixed.jsonl");
    std::string good1 = record_to_line(ts::random_record(rng));
    std::string good2 = record_to_line(ts::random_record(rng));
    ts::write_lines(path, {good1, "{not json", good2});

    LoadResult lenient = load_dataset(path);
    CHECK(lenient.records.size() == 2);
    REQUIRE(lenient.diagnostics.size() == 1);
    CHECK(lenient.diagnostics[0].line_no == 2);

    CHECK_THROWS_AS(load_dataset(path, {true}), DatasetError);
}

TEST_CASE("empty dataset file loads as empty") {
    ts::ScratchDir dir("corpus_empty");
    auto path = dir.file("empty.jsonl");
    ts::write_lines(path, {});
    LoadResult loaded = load_dataset(path);
    CHECK(loaded.records.empty());
    CHECK(loaded.diagnostics.empty());
}

TEST_CASE("count_lines matches newline structure") {
    CHECK(count_lines("") == 0);
    CHECK(count_lines("a") == 1);
    CHECK(count_lines("a\nb") == 2);
    CHECK(count_lines("a\nb\n") == 2);
}
