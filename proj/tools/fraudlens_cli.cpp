// Command-line front end. All functionality comes through the C API; this
// file only parses argv into the option bag and prints results.

#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "fraudlens.h"

namespace {

void print_usage(FILE* out) {
    std::fprintf(out,
        "fraudlens %s - cybercrime narrative dataset and evaluation toolkit\n"
        "\n"
        "usage: fraudlens <command> [options]\n"
        "\n"
        "commands:\n"
        "  plan      --n N --out FILE [--seed N]\n"
        "            plan balanced (fraud type, major tactic, major theory) coverage\n"
        "  generate  --plan FILE --out FILE [--backend SPEC] [--trace FILE] [--resume]\n"
        "            [--seed N] [--workers N] [--strict]\n"
        "            run the retry pipeline per planned sample and write the dataset\n"
        "  validate  --dataset FILE\n"
        "            schema and consistency audit with line numbers\n"
        "  evaluate  --run-config FILE | --dataset FILE [--backend SPEC]\n"
        "            [--model-tag base|finetuned|custom] [--prompt-mode detailed|concise]\n"
        "            [--output-dir DIR] [--workers N] [--strict]\n"
        "            score a backend against gold labels and write run reports\n"
        "  compare   --base report.json --ft report.json [--format markdown|csv|jsonl]\n"
        "            [--out FILE]\n"
        "  parse     --in FILE [--in FILE ...] [--out FILE]\n"
        "            extract per-label predictions from raw model output\n"
        "  prompt    --mode detailed|concise --narrative FILE\n"
        "\n"
        "global options:\n"
        "  --config FILE       key = value configuration (applied before flags)\n"
        "  --set KEY=VALUE     set any option directly\n"
        "  --seed N            generation seed\n"
        "  --workers N         worker threads\n"
        "  --strict            fail fast on data errors\n"
        "  --format FMT        output format for compare\n"
        "  --resume            continue an interrupted generate run\n"
        "\n"
        "environment (overrides flags): FRAUDLENS_SEED, FRAUDLENS_WORKERS,\n"
        "  FRAUDLENS_STRICT, FRAUDLENS_KEYS, FRAUDLENS_KEYS_FILE, FRAUDLENS_BACKEND,\n"
        "  FRAUDLENS_FORMAT, FRAUDLENS_EMBEDDER\n",
        fl_version());
}

struct Flag {
    const char* name;   // e.g. "--plan"
    const char* key;    // option bag key
    bool takes_value;
};

const Flag kFlags[] = {
    {"--n", "n", true},
    {"--seed", "seed", true},
    {"--out", "out", true},
    {"--plan", "plan", true},
    {"--backend", "backend", true},
    {"--trace", "trace", true},
    {"--resume", "resume", false},
    {"--workers", "workers", true},
    {"--strict", "strict", false},
    {"--dataset", "dataset", true},
    {"--model-tag", "model_tag", true},
    {"--prompt-mode", "prompt_mode", true},
    {"--output-dir", "output_dir", true},
    {"--base", "base", true},
    {"--ft", "ft", true},
    {"--format", "format", true},
    {"--mode", "mode", true},
    {"--narrative", "narrative", true},
    {"--temperature", "temperature", true},
    {"--batch-size", "batch_size", true},
    {"--embedder", "embedder", true},
};

int usage_failure(const std::string& message) {
    std::fprintf(stderr, "error: %s\n\n", message.c_str());
    print_usage(stderr);
    return FL_E_USAGE;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        print_usage(stderr);
        return FL_E_USAGE;
    }
    std::string command = argv[1];
    if (command == "--help" || command == "-h" || command == "help") {
        print_usage(stdout);
        return FL_OK;
    }

    fl_context* ctx = fl_context_new();
    fl_opts* opts = fl_opts_new();
    if (!ctx || !opts) {
        std::fprintf(stderr, "error: out of memory\n");
        return FL_E_DATA;
    }

    std::string in_files;  // accumulates repeated --in values
    int status = FL_OK;

    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            print_usage(stdout);
            fl_opts_free(opts);
            fl_context_free(ctx);
            return FL_OK;
        }
        if (arg == "--config" || arg == "--run-config") {
            if (i + 1 >= argc) return usage_failure(arg + " needs a file path");
            if (fl_opts_load_file(ctx, opts, argv[++i]) != FL_OK)
                return usage_failure(fl_context_error(ctx));
            continue;
        }
        if (arg == "--set") {
            if (i + 1 >= argc) return usage_failure("--set needs KEY=VALUE");
            std::string kv = argv[++i];
            size_t eq = kv.find('=');
            if (eq == std::string::npos) return usage_failure("--set needs KEY=VALUE");
            fl_opts_set(ctx, opts, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
            continue;
        }
        if (arg == "--in") {
            if (i + 1 >= argc) return usage_failure("--in needs a file path");
            if (!in_files.empty()) in_files += "\n";
            in_files += argv[++i];
            continue;
        }
        bool matched = false;
        for (const Flag& flag : kFlags) {
            if (arg != flag.name) continue;
            matched = true;
            if (flag.takes_value) {
                if (i + 1 >= argc) return usage_failure(arg + " needs a value");
                fl_opts_set(ctx, opts, flag.key, argv[++i]);
            } else {
                fl_opts_set(ctx, opts, flag.key, "true");
            }
            break;
        }
        if (!matched) return usage_failure("unknown option: " + arg);
    }
    if (!in_files.empty()) fl_opts_set(ctx, opts, "in_files", in_files.c_str());
    fl_opts_apply_env(ctx, opts);

    if (command == "plan") status = fl_cmd_plan(ctx, opts);
    else if (command == "generate") status = fl_cmd_generate(ctx, opts);
    else if (command == "validate") status = fl_cmd_validate(ctx, opts);
    else if (command == "evaluate") status = fl_cmd_evaluate(ctx, opts);
    else if (command == "compare") status = fl_cmd_compare(ctx, opts);
    else if (command == "parse") status = fl_cmd_parse(ctx, opts);
    else if (command == "prompt") status = fl_cmd_prompt(ctx, opts);
    else {
        fl_opts_free(opts);
        fl_context_free(ctx);
        return usage_failure("unknown command: " + command);
    }

    const char* output = fl_context_output(ctx);
    if (output && *output) std::fputs(output, stdout);
    const char* error = fl_context_error(ctx);
    if (error && *error) std::fprintf(stderr, "error: %s\n", error);

    fl_opts_free(opts);
    fl_context_free(ctx);
    return status;
}
