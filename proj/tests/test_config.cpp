#include <doctest.h>

#include "fraudlens/config.hpp"
#include "fraudlens/errors.hpp"
#include "test_support.hpp"

using namespace fraudlens;
namespace ts = fraudlens::testsupport;

TEST_CASE("option bag: later writes win, typed getters convert") {
    OptionBag bag;
    bag.set("seed", "5");
    bag.set("seed", "9");
    CHECK(bag.get_u64("seed", 0) == 9);
    CHECK(bag.get_int("missing", 42) == 42);
    bag.set("strict", "true");
    CHECK(bag.get_bool("strict", false));
    bag.set("strict", "off");
    CHECK_FALSE(bag.get_bool("strict", true));
    bag.set("rate", "0.25");
    CHECK(bag.get_double("rate", 0.0) == doctest::Approx(0.25));
    bag.set("rate", "not-a-number");
    CHECK_THROWS_AS(bag.get_double("rate", 0.0), ConfigError);
}

TEST_CASE("config files feed the bag; malformed lines are rejected") {
    ts::ScratchDir dir("config");
    ts::write_lines(dir.file("good.conf"),
                    {"# comment line", "dataset = data.jsonl", "workers = 3",
                     "backend = mock  # trailing comment"});
    OptionBag bag;
    bag.load_file(dir.file("good.conf").string());
    CHECK(bag.get_or("dataset", "") == "data.jsonl");
    CHECK(bag.get_int("workers", 0) == 3);
    CHECK(bag.get_or("backend", "") == "mock");

    ts::write_lines(dir.file("bad.conf"), {"just a bare token"});
    OptionBag bad;
    CHECK_THROWS_AS(bad.load_file(dir.file("bad.conf").string()), ConfigError);
    CHECK_THROWS_AS(bad.load_file("/definitely/not/here.conf"), IoError);
}

TEST_CASE("run config resolution: defaults, profiles, and overrides") {
    OptionBag bag;
    bag.set("dataset", "d.jsonl");

    RunConfig config = run_config_from_options(bag);
    CHECK(config.model_tag == ModelTag::Base);
    CHECK(config.prompt_mode() == PromptMode::Detailed);
    CHECK(config.generation.temperature == doctest::Approx(0.1));  // evaluation profile
    CHECK(config.generation.max_new_tokens == 1536);
    CHECK(config.generation.batch_size == 32);
    CHECK(config.workers == 1);

    bag.set("profile", "production");
    CHECK(run_config_from_options(bag).generation.temperature == doctest::Approx(0.01));

    bag.set("temperature", "0.7");  // explicit value beats the profile
    CHECK(run_config_from_options(bag).generation.temperature == doctest::Approx(0.7));

    bag.set("model_tag", "finetuned");
    CHECK(run_config_from_options(bag).prompt_mode() == PromptMode::Concise);
    bag.set("prompt_mode", "detailed");
    CHECK(run_config_from_options(bag).prompt_mode() == PromptMode::Detailed);

    bag.set("profile", "staging");
    CHECK_THROWS_AS(run_config_from_options(bag), ConfigError);
}

TEST_CASE("missing dataset or bad numbers are usage errors") {
    OptionBag empty;
    CHECK_THROWS_AS(run_config_from_options(empty), ConfigError);

    OptionBag bad;
    bad.set("dataset", "d.jsonl");
    bad.set("workers", "0");
    CHECK_THROWS_AS(run_config_from_options(bad), ConfigError);

    OptionBag bad_retry;
    bad_retry.set("dataset", "d.jsonl");
    bad_retry.set("backoff_cap", "0.5");  // below base_backoff
    CHECK_THROWS_AS(run_config_from_options(bad_retry), ConfigError);
}

TEST_CASE("credentials resolve from the keys option, then the keys file") {
    OptionBag bag;
    CHECK(resolve_credentials(bag).empty());

    ts::ScratchDir dir("config_creds");
    ts::write_lines(dir.file("keys.txt"), {"kf openai abc"});
    bag.set("keys_file", dir.file("keys.txt").string());
    auto from_file = resolve_credentials(bag);
    REQUIRE(from_file.size() == 1);
    CHECK(from_file[0].key_id == "kf");

    bag.set("keys", "ke:gemini:zzz");  // env-style option outranks the file
    auto from_env = resolve_credentials(bag);
    REQUIRE(from_env.size() == 1);
    CHECK(from_env[0].key_id == "ke");
}
