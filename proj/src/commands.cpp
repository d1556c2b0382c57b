#include "fraudlens/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "fraudlens/backends.hpp"
#include "fraudlens/errors.hpp"
#include "fraudlens/report_io.hpp"

namespace fraudlens {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

CommandResult usage_error(const std::string& message) { return {2, "", message}; }
CommandResult data_error(const std::string& message) { return {1, "", message}; }

CommandResult guarded(const std::function<CommandResult()>& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        return usage_error(e.what());
    } catch (const Error& e) {
        return data_error(e.what());
    } catch (const std::exception& e) {
        return data_error(e.what());
    }
}

std::unique_ptr<Clock> make_clock(const OptionBag& options) {
    std::string kind = options.get_or("clock", "real");
    if (kind == "virtual") return std::make_unique<VirtualClock>();
    if (kind == "real") return std::make_unique<RealClock>();
    throw ConfigError("clock must be 'real' or 'virtual'");
}

std::string require(const OptionBag& options, const std::string& key,
                    const std::string& what) {
    auto value = options.get(key);
    if (!value || value->empty()) throw ConfigError("missing required option: " + what);
    return *value;
}

// Validator used during dataset generation: repair, parse, validate; the
// accepted record is stashed for the caller.
PayloadValidator dataset_validator(std::shared_ptr<AnnotationRecord> slot) {
    return [slot](const std::string& raw) -> std::optional<std::string> {
        try {
            std::string repaired = repair_json_text(raw);
            Json parsed = Json::parse(repaired);
            *slot = validate_record(parsed);
            return std::nullopt;
        } catch (const Json::parse_error& e) {
            return std::string("invalid JSON after repair: ") + e.what();
        } catch (const Error& e) {
            return std::string(e.what());
        }
    };
}

struct TraceEntry {
    long long sample_index = 0;
    int attempts = 0;
    std::string key_id;
    std::string outcome;  // "ok" | "failed"
    std::string error;
};

std::string trace_line(const TraceEntry& entry) {
    Json row = Json::object();
    row["sample_index"] = entry.sample_index;
    row["attempts"] = entry.attempts;
    row["key_id"] = entry.key_id;
    row["outcome"] = entry.outcome;
    if (!entry.error.empty()) row["error"] = entry.error;
    return row.dump();
}

std::map<long long, std::string> load_trace_outcomes(const fs::path& path) {
    std::map<long long, std::string> outcomes;
    std::ifstream in(path);
    if (!in) return outcomes;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            Json row = Json::parse(line);
            outcomes[row.at("sample_index").get<long long>()] =
                row.at("outcome").get<std::string>();
        } catch (const Json::parse_error&) {
            continue;  // partial line from an interrupted run
        }
    }
    return outcomes;
}

}  // namespace

CommandResult cmd_plan(const OptionBag& options) {
    return guarded([&] {
        long long n_total = options.get_int("n", -1);
        if (n_total < 0) throw ConfigError("plan needs --n (total sample count)");
        uint64_t seed = options.get_u64("seed", 42);
        std::string out = require(options, "out", "--out (plan file path)");

        TripletPlan plan = plan_triplets(n_total, canonical_space(), seed);
        save_plan(plan, out);

        auto marginals = fraud_type_marginals(plan);
        long long lo = plan.total, hi = 0;
        for (const auto& [name, count] : marginals) {
            lo = std::min(lo, count);
            hi = std::max(hi, count);
        }
        std::ostringstream os;
        os << "planned " << plan.total << " samples over " << plan.entries.size()
           << " triplets -> " << out << "\n";
        if (!marginals.empty())
            os << "fraud-type totals: min " << lo << ", max " << hi << "\n";
        return CommandResult{0, os.str(), ""};
    });
}

CommandResult cmd_generate(const OptionBag& options) {
    return guarded([&] {
        std::string plan_path = require(options, "plan", "--plan");
        std::string out_path = require(options, "out", "--out (dataset path)");
        std::string backend_spec = options.get_or("backend", "mock");
        std::string trace_path = options.get_or("trace", out_path + ".trace.jsonl");
        bool resume = options.get_bool("resume", false);
        bool strict = options.get_bool("strict", false);
        uint64_t seed = options.get_u64("seed", 42);
        int workers = std::max(1, static_cast<int>(options.get_int("workers", 1)));

        GenerationConfig generation = generation_config_from_options(options);
        RetryPolicy retry = retry_policy_from_options(options);
        auto clock = make_clock(options);

        TripletPlan plan = load_plan(plan_path);
        std::vector<GenerationSeed> seeds = seeds_for_plan(plan, seed);

        std::map<long long, AnnotationRecord> done;
        if (resume && fs::exists(out_path)) {
            std::map<uint64_t, long long> nonce_to_index;
            for (const auto& s : seeds) nonce_to_index[s.nonce] = s.sample_index;
            LoadResult existing = load_dataset(out_path, {});
            for (auto& record : existing.records) {
                if (!record.provenance.seed) continue;
                auto it = nonce_to_index.find(static_cast<uint64_t>(*record.provenance.seed));
                if (it != nonce_to_index.end()) done[it->second] = std::move(record);
            }
        }
        std::map<long long, std::string> prior_outcomes =
            resume ? load_trace_outcomes(trace_path) : std::map<long long, std::string>{};

        std::vector<ProviderKey> keys = resolve_credentials(options);
        if (keys.empty()) keys.push_back({"local", backend_spec, ""});
        ProviderPool pool(keys);
        auto backend = make_backend(backend_spec, MockMode::Dataset, {});

        std::vector<long long> pending;
        for (const auto& s : seeds)
            if (!done.count(s.sample_index)) pending.push_back(s.sample_index);

        std::ofstream trace(trace_path, resume ? std::ios::app : std::ios::trunc);
        if (!trace) throw IoError("cannot write trace file: " + trace_path);
        std::mutex io_mutex;
        std::vector<TraceEntry> entries;
        std::map<long long, AnnotationRecord> generated;
        std::atomic<size_t> cursor{0};
        std::atomic<long long> failures{0};
        std::vector<std::string> hard_errors;

        auto worker = [&] {
            for (;;) {
                size_t slot = cursor.fetch_add(1);
                if (slot >= pending.size()) return;
                long long index = pending[slot];
                const GenerationSeed& gseed = seeds[static_cast<size_t>(index)];
                try {
                    auto record_slot = std::make_shared<AnnotationRecord>();
                    CompletionRequest request;
                    request.prompt = build_generation_prompt(gseed);
                    request.sample_index = index;
                    request.seed = &gseed;
                    GenerationOutcome outcome =
                        generate_with_retry(request, pool, retry, generation, *backend, *clock,
                                            dataset_validator(record_slot));
                    TraceEntry entry;
                    entry.sample_index = index;
                    entry.attempts = outcome.attempts_used;
                    entry.key_id = outcome.key_id;
                    if (outcome.ok) {
                        entry.outcome = "ok";
                        AnnotationRecord record = *record_slot;
                        record.provenance.origin = Provenance::Origin::Synthetic;
                        record.provenance.provider = backend->name();
                        record.provenance.seed = static_cast<long long>(gseed.nonce);
                        record.provenance.attempts = outcome.attempts_used;
                        std::lock_guard lock(io_mutex);
                        generated[index] = std::move(record);
                        entries.push_back(entry);
                        trace << trace_line(entry) << '\n';
                        trace.flush();
                    } else {
                        entry.outcome = "failed";
                        entry.error = outcome.failure_reason;
                        failures.fetch_add(1);
                        std::lock_guard lock(io_mutex);
                        entries.push_back(entry);
                        trace << trace_line(entry) << '\n';
                        trace.flush();
                    }
                } catch (const std::exception& e) {
                    failures.fetch_add(1);
                    std::lock_guard lock(io_mutex);
                    hard_errors.push_back("sample " + std::to_string(index) + ": " + e.what());
                }
            }
        };

        if (workers == 1) {
            worker();
        } else {
            std::vector<std::thread> threads;
            for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
            for (auto& t : threads) t.join();
        }

        // Rewrite the trace in sample order once the run is complete so full
        // runs are reproducible byte for byte.
        trace.close();
        {
            std::sort(entries.begin(), entries.end(),
                      [](const TraceEntry& a, const TraceEntry& b) {
                          return a.sample_index < b.sample_index;
                      });
            std::ofstream sorted(trace_path, std::ios::trunc);
            for (const auto& [index, outcome] : prior_outcomes) {
                if (done.count(index)) {
                    TraceEntry entry;
                    entry.sample_index = index;
                    entry.outcome = "ok";
                    entry.key_id = "resumed";
                    sorted << trace_line(entry) << '\n';
                }
            }
            for (const auto& entry : entries) sorted << trace_line(entry) << '\n';
        }

        for (auto& [index, record] : generated) done[index] = std::move(record);
        std::vector<AnnotationRecord> records;
        records.reserve(done.size());
        for (auto& [index, record] : done) records.push_back(std::move(record));
        save_dataset(records, out_path);

        long long failed = failures.load();
        long long attempted = static_cast<long long>(pending.size());
        std::ostringstream os;
        os << "generated " << records.size() << " records -> " << out_path << "\n";
        os << "attempted " << attempted << ", failed " << failed;
        if (attempted > 0) {
            char rate[32];
            std::snprintf(rate, sizeof(rate), "%.2f%%",
                          100.0 * static_cast<double>(failed) / static_cast<double>(attempted));
            os << " (failure rate " << rate << ")";
        }
        os << "\ntrace -> " << trace_path << "\n";
        for (const auto& err : hard_errors) os << "error: " << err << "\n";
        int status = 0;
        if (!hard_errors.empty() || (strict && failed > 0)) status = 1;
        return CommandResult{status, os.str(), ""};
    });
}

CommandResult cmd_validate(const OptionBag& options) {
    return guarded([&] {
        std::string dataset = require(options, "dataset", "--dataset");
        LoadResult loaded = load_dataset(dataset, {});
        std::ostringstream os;
        for (const auto& diag : loaded.diagnostics)
            os << "line " << diag.line_no << ": " << diag.message << "\n";
        for (const auto& warning : loaded.warnings) os << "warning: " << warning << "\n";
        os << "records: " << loaded.records.size() << ", violations: "
           << loaded.diagnostics.size() << ", warnings: " << loaded.warnings.size() << "\n";
        return CommandResult{loaded.diagnostics.empty() ? 0 : 1, os.str(), ""};
    });
}

CommandResult cmd_evaluate(const OptionBag& options) {
    return guarded([&] {
        RunConfig config = run_config_from_options(options);
        LoadResult loaded = load_dataset(config.dataset_path, {config.strict});
        if (config.strict && !loaded.diagnostics.empty())
            throw DatasetError("dataset has malformed lines");
        if (loaded.records.empty()) throw DatasetError("dataset is empty");

        auto backend = make_backend(config.backend_spec, MockMode::Analysis, loaded.records);
        auto clock = make_clock(options);
        RunResult result = evaluate_run(config, loaded.records, *backend, *clock);

        std::string out_dir = config.output_dir.empty()
                                  ? std::string("run_") + result.report.model_tag
                                  : config.output_dir;
        fs::create_directories(out_dir);
        save_run_report(result.report, fs::path(out_dir) / "report.json");
        write_text_file(fs::path(out_dir) / "report.md",
                        run_report_to_markdown(result.report));
        if (config.emit_decisions)
            write_text_file(fs::path(out_dir) / "decisions.jsonl",
                            decisions_to_jsonl(result.decisions));

        std::ostringstream os;
        os << "evaluated " << result.report.narrative_count << " narratives ("
           << result.report.total_decisions << " decisions) with backend '"
           << result.report.backend << "'\n";
        os << "global accuracy " << result.report.global_micro.accuracy << ", macro-F1 "
           << result.report.macro.value << "\n";
        os << "reports -> " << out_dir << "\n";
        int status = config.strict && result.report.generation_failures > 0 ? 1 : 0;
        return CommandResult{status, os.str(), ""};
    });
}

CommandResult cmd_compare(const OptionBag& options) {
    return guarded([&] {
        std::string base_path = require(options, "base", "--base (run report json)");
        std::string ft_path = require(options, "ft", "--ft (run report json)");
        ReportFormat format = report_format_from_string(options.get_or("format", "markdown"));

        RunReport base = load_run_report(base_path);
        RunReport ft = load_run_report(ft_path);
        ComparisonReport cmp = compare_runs(base, ft);
        std::string rendered = emit_comparison(cmp, format);
        if (auto out = options.get("out"); out && !out->empty()) {
            write_text_file(*out, rendered);
            return CommandResult{0, "comparison -> " + *out + "\n", ""};
        }
        return CommandResult{0, rendered, ""};
    });
}

CommandResult cmd_parse(const OptionBag& options) {
    return guarded([&] {
        std::string files = require(options, "in_files", "--in (raw output file)");
        std::ostringstream os;
        std::istringstream list(files);
        std::string path;
        while (std::getline(list, path, '\n')) {
            if (path.empty()) continue;
            std::string raw = read_text_file(path);
            ParsedOutput parsed = parse_output(raw);
            auto [major_tactic, major_theory] = select_major(parsed, "");

            Json row = Json::object();
            row["file"] = path;
            Json labels = Json::object();
            for (LabelId id : all_labels()) {
                const LabelParse& lp = parsed.at(id);
                Json cell = Json::object();
                cell["present"] = lp.present;
                cell["reason"] = lp.reason;
                cell["status"] = lp.matched ? "matched" : "defaulted";
                labels[json_key(id)] = std::move(cell);
            }
            row["labels"] = std::move(labels);
            row["major_tactic"] =
                major_tactic ? Json(display_name({LabelKind::Tactic, *major_tactic}))
                             : Json(nullptr);
            row["major_theory"] =
                major_theory ? Json(display_name({LabelKind::Theory, *major_theory}))
                             : Json(nullptr);
            os << row.dump() << '\n';
        }
        if (auto out = options.get("out"); out && !out->empty()) {
            write_text_file(*out, os.str());
            return CommandResult{0, "predictions -> " + *out + "\n", ""};
        }
        return CommandResult{0, os.str(), ""};
    });
}

CommandResult cmd_prompt(const OptionBag& options) {
    return guarded([&] {
        PromptMode mode = prompt_mode_from_string(options.get_or("mode", "detailed"));
        std::string narrative_path = require(options, "narrative", "--narrative (text file)");
        std::string narrative = read_text_file(narrative_path);
        PromptBundle bundle = build_prompt(mode, narrative);
        return CommandResult{0, bundle.rendered, ""};
    });
}

}  // namespace fraudlens
