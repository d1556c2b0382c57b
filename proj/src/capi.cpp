#include "fraudlens.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "fraudlens/commands.hpp"
#include "fraudlens/errors.hpp"
#include "fraudlens/parsing.hpp"
#include "fraudlens/prompting.hpp"
#include "fraudlens/provider_pool.hpp"
#include "fraudlens/taxonomy.hpp"

#if defined(_WIN32)
#define FL_EXPORT __declspec(dllexport)
#else
#define FL_EXPORT __attribute__((visibility("default")))
#endif

struct fl_context {
    std::string error;
    std::string output;
};

struct fl_opts {
    fraudlens::OptionBag bag;
};

namespace {

char* dup_string(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) return nullptr;
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int run_command(fl_context* ctx, const fl_opts* opts,
                fraudlens::CommandResult (*command)(const fraudlens::OptionBag&)) {
    if (!ctx) return FL_E_USAGE;
    if (!opts) {
        ctx->error = "null options";
        return FL_E_USAGE;
    }
    ctx->error.clear();
    ctx->output.clear();
    fraudlens::CommandResult result = command(opts->bag);
    ctx->output = result.output;
    ctx->error = result.error;
    return result.status;
}

template <typename Fn>
char* string_call(fl_context* ctx, Fn&& fn) {
    if (!ctx) return nullptr;
    ctx->error.clear();
    try {
        return dup_string(fn());
    } catch (const fraudlens::ConfigError& e) {
        ctx->error = e.what();
        return nullptr;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return nullptr;
    }
}

}  // namespace

extern "C" {

FL_EXPORT const char* fl_version(void) { return "0.1.0"; }

FL_EXPORT fl_context* fl_context_new(void) { return new (std::nothrow) fl_context(); }

FL_EXPORT void fl_context_free(fl_context* ctx) { delete ctx; }

FL_EXPORT const char* fl_context_error(const fl_context* ctx) {
    return ctx ? ctx->error.c_str() : "";
}

FL_EXPORT const char* fl_context_output(const fl_context* ctx) {
    return ctx ? ctx->output.c_str() : "";
}

FL_EXPORT fl_opts* fl_opts_new(void) { return new (std::nothrow) fl_opts(); }

FL_EXPORT void fl_opts_free(fl_opts* opts) { delete opts; }

FL_EXPORT int fl_opts_set(fl_context* ctx, fl_opts* opts, const char* key, const char* value) {
    if (!ctx) return FL_E_USAGE;
    if (!opts || !key || !value) {
        ctx->error = "null option argument";
        return FL_E_USAGE;
    }
    opts->bag.set(key, value);
    return FL_OK;
}

FL_EXPORT int fl_opts_load_file(fl_context* ctx, fl_opts* opts, const char* path) {
    if (!ctx) return FL_E_USAGE;
    if (!opts || !path) {
        ctx->error = "null option argument";
        return FL_E_USAGE;
    }
    try {
        opts->bag.load_file(path);
        return FL_OK;
    } catch (const fraudlens::ConfigError& e) {
        ctx->error = e.what();
        return FL_E_USAGE;
    } catch (const std::exception& e) {
        ctx->error = e.what();
        return FL_E_DATA;
    }
}

FL_EXPORT int fl_opts_apply_env(fl_context* ctx, fl_opts* opts) {
    if (!ctx) return FL_E_USAGE;
    if (!opts) {
        ctx->error = "null options";
        return FL_E_USAGE;
    }
    opts->bag.apply_env();
    return FL_OK;
}

FL_EXPORT int fl_cmd_plan(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_plan);
}
FL_EXPORT int fl_cmd_generate(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_generate);
}
FL_EXPORT int fl_cmd_validate(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_validate);
}
FL_EXPORT int fl_cmd_evaluate(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_evaluate);
}
FL_EXPORT int fl_cmd_compare(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_compare);
}
FL_EXPORT int fl_cmd_parse(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_parse);
}
FL_EXPORT int fl_cmd_prompt(fl_context* ctx, const fl_opts* opts) {
    return run_command(ctx, opts, fraudlens::cmd_prompt);
}

FL_EXPORT char* fl_repair_json(fl_context* ctx, const char* raw) {
    return string_call(ctx, [&] {
        if (!raw) throw fraudlens::ConfigError("null input");
        return fraudlens::repair_json_text(raw);
    });
}

FL_EXPORT char* fl_parse_analysis(fl_context* ctx, const char* raw) {
    return string_call(ctx, [&]() -> std::string {
        if (!raw) throw fraudlens::ConfigError("null input");
        fraudlens::ParsedOutput parsed = fraudlens::parse_output(raw);
        nlohmann::ordered_json labels = nlohmann::ordered_json::object();
        for (fraudlens::LabelId id : fraudlens::all_labels()) {
            const fraudlens::LabelParse& lp = parsed.at(id);
            nlohmann::ordered_json cell = nlohmann::ordered_json::object();
            cell["present"] = lp.present;
            cell["reason"] = lp.reason;
            cell["status"] = lp.matched ? "matched" : "defaulted";
            labels[fraudlens::json_key(id)] = std::move(cell);
        }
        return labels.dump();
    });
}

FL_EXPORT char* fl_build_prompt(fl_context* ctx, const char* mode, const char* narrative) {
    return string_call(ctx, [&]() -> std::string {
        if (!mode || !narrative) throw fraudlens::ConfigError("null input");
        fraudlens::PromptBundle bundle =
            fraudlens::build_prompt(fraudlens::prompt_mode_from_string(mode), narrative);
        return bundle.rendered;
    });
}

FL_EXPORT char* fl_label_space(fl_context* ctx) {
    return string_call(ctx,
                       [&] { return fraudlens::label_space_to_json(fraudlens::canonical_space()); });
}

FL_EXPORT void fl_string_free(char* s) { std::free(s); }

FL_EXPORT double fl_backoff_delay(int attempt, double base, double mult, double cap) {
    fraudlens::RetryPolicy policy;
    policy.base_backoff = base;
    policy.backoff_mult = mult;
    policy.backoff_cap = cap;
    if (attempt < 1 || base <= 0.0 || mult <= 0.0 || cap < base) return -1.0;
    return fraudlens::backoff_delay(attempt, policy);
}

}  // extern "C"
