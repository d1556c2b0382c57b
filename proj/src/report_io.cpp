#include "fraudlens/report_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

using Json = nlohmann::ordered_json;

// Full-precision decimal form that survives a print/parse/print cycle.
std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string num2(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string pct1(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", v);
    return buf;
}

std::string opt2(const std::optional<double>& v) { return v ? num2(*v) : "n/a"; }

Json prf_to_json(const PrfScores& s) {
    Json j = Json::object();
    j["precision"] = s.precision;
    j["recall"] = s.recall;
    j["f1"] = s.f1;
    j["empty_input"] = s.empty_input;
    return j;
}

PrfScores prf_from_json(const Json& j) {
    PrfScores s;
    s.precision = j.at("precision").get<double>();
    s.recall = j.at("recall").get<double>();
    s.f1 = j.at("f1").get<double>();
    s.empty_input = j.value("empty_input", false);
    return s;
}

Json opt_to_json(const std::optional<double>& v) {
    return v ? Json(*v) : Json(nullptr);
}

std::optional<double> opt_from_json(const Json& j) {
    if (j.is_null()) return std::nullopt;
    return j.get<double>();
}

Json metrics_to_json(const LabelMetrics& m) {
    Json j = Json::object();
    j["accuracy"] = m.accuracy;
    j["precision"] = opt_to_json(m.precision);
    j["recall"] = opt_to_json(m.recall);
    j["f1"] = opt_to_json(m.f1);
    j["hallucination_rate"] = opt_to_json(m.hallucination_rate);
    j["pr_product"] = opt_to_json(m.pr_product);
    j["support"] = m.support;
    return j;
}

LabelMetrics metrics_from_json(const Json& j) {
    LabelMetrics m;
    m.accuracy = j.at("accuracy").get<double>();
    m.precision = opt_from_json(j.at("precision"));
    m.recall = opt_from_json(j.at("recall"));
    m.f1 = opt_from_json(j.at("f1"));
    m.hallucination_rate = opt_from_json(j.at("hallucination_rate"));
    m.pr_product = opt_from_json(j.at("pr_product"));
    m.support = j.at("support").get<long long>();
    return m;
}

Json interval_to_json(const IntervalEstimate& e) {
    Json j = Json::object();
    j["point"] = e.point;
    j["se"] = e.se;
    j["lo"] = e.lo;
    j["hi"] = e.hi;
    j["n"] = e.n;
    return j;
}

IntervalEstimate interval_from_json(const Json& j) {
    IntervalEstimate e;
    e.point = j.at("point").get<double>();
    e.se = j.at("se").get<double>();
    e.lo = j.at("lo").get<double>();
    e.hi = j.at("hi").get<double>();
    e.n = j.at("n").get<long long>();
    return e;
}

Significance significance_from_string(const std::string& s) {
    if (s == "***") return Significance::TripleStar;
    if (s == "**") return Significance::DoubleStar;
    if (s == "*") return Significance::Star;
    if (s == "†") return Significance::Dagger;
    return Significance::NotSignificant;
}

// Minimal CSV quoting: fields with commas/quotes/newlines get quoted.
std::string csv_field(const std::string& value) {
    if (value.find_first_of(",\"\n") == std::string::npos) return value;
    std::string out = "\"";
    for (char c : value) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string current;
    bool quoted = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    current.push_back('"');
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                current.push_back(c);
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(c);
        }
    }
    fields.push_back(std::move(current));
    return fields;
}

std::string opt17(const std::optional<double>& v) { return v ? num17(*v) : ""; }

std::optional<double> parse_opt(const std::string& field) {
    if (field.empty()) return std::nullopt;
    return std::stod(field);
}

const char* kCsvHeader =
    "label,base_accuracy,ft_accuracy,base_precision,ft_precision,base_recall,ft_recall,"
    "base_f1,ft_f1,delta_accuracy,delta_f1,significance,base_hallucination,ft_hallucination,"
    "hallucination_abs_change,hallucination_rel_change_pct,base_ci_lo,base_ci_hi,ft_ci_lo,"
    "ft_ci_hi,base_support,ft_support";

std::string row_to_csv(const ComparisonRow& row) {
    std::ostringstream os;
    os << csv_field(row.label) << ',' << num17(row.base.accuracy) << ','
       << num17(row.ft.accuracy) << ',' << opt17(row.base.precision) << ','
       << opt17(row.ft.precision) << ',' << opt17(row.base.recall) << ','
       << opt17(row.ft.recall) << ',' << opt17(row.base.f1) << ',' << opt17(row.ft.f1) << ','
       << num17(row.delta_accuracy) << ',' << opt17(row.delta_f1) << ','
       << to_string(row.marker) << ',' << opt17(row.base.hallucination_rate) << ','
       << opt17(row.ft.hallucination_rate) << ',' << opt17(row.hallucination_abs_change) << ','
       << opt17(row.hallucination_rel_change_pct) << ','
       << (row.base_ci ? num17(row.base_ci->lo) : "") << ','
       << (row.base_ci ? num17(row.base_ci->hi) : "") << ','
       << (row.ft_ci ? num17(row.ft_ci->lo) : "") << ','
       << (row.ft_ci ? num17(row.ft_ci->hi) : "") << ',' << row.base.support << ','
       << row.ft.support;
    return os.str();
}

ComparisonRow row_from_csv(const std::vector<std::string>& f, long long n) {
    if (f.size() != 22) throw DatasetError("comparison csv row has wrong field count");
    ComparisonRow row;
    row.label = f[0];
    row.base.accuracy = std::stod(f[1]);
    row.ft.accuracy = std::stod(f[2]);
    row.base.precision = parse_opt(f[3]);
    row.ft.precision = parse_opt(f[4]);
    row.base.recall = parse_opt(f[5]);
    row.ft.recall = parse_opt(f[6]);
    row.base.f1 = parse_opt(f[7]);
    row.ft.f1 = parse_opt(f[8]);
    row.delta_accuracy = std::stod(f[9]);
    row.delta_f1 = parse_opt(f[10]);
    row.marker = significance_from_string(f[11]);
    row.base.hallucination_rate = parse_opt(f[12]);
    row.ft.hallucination_rate = parse_opt(f[13]);
    row.hallucination_abs_change = parse_opt(f[14]);
    row.hallucination_rel_change_pct = parse_opt(f[15]);
    if (!f[16].empty() && row.base.f1) {
        IntervalEstimate e;
        e.point = *row.base.f1;
        e.lo = std::stod(f[16]);
        e.hi = std::stod(f[17]);
        e.n = n;
        e.se = f1_interval(*row.base.f1, n).se;
        row.base_ci = e;
    }
    if (!f[18].empty() && row.ft.f1) {
        IntervalEstimate e;
        e.point = *row.ft.f1;
        e.lo = std::stod(f[18]);
        e.hi = std::stod(f[19]);
        e.n = n;
        e.se = f1_interval(*row.ft.f1, n).se;
        row.ft_ci = e;
    }
    row.base.support = std::stoll(f[20]);
    row.ft.support = std::stoll(f[21]);
    return row;
}

}  // namespace

ReportFormat report_format_from_string(const std::string& name) {
    std::string key = normalize_key(name);
    if (key == "markdown" || key == "md" || key == "markdown table") return ReportFormat::Markdown;
    if (key == "csv") return ReportFormat::Csv;
    if (key == "json lines" || key == "jsonl" || key == "json") return ReportFormat::JsonLines;
    throw ConfigError("unknown report format: " + name);
}

std::string run_report_to_json(const RunReport& report) {
    Json j = Json::object();
    j["model_tag"] = report.model_tag;
    j["prompt_mode"] = report.prompt_mode;
    j["backend"] = report.backend;
    j["dataset_hash"] = report.dataset_hash;
    j["config_hash"] = report.config_hash;
    j["created_at"] = report.created_at;
    j["narrative_count"] = report.narrative_count;
    j["total_decisions"] = report.total_decisions;
    j["generation_failures"] = report.generation_failures;
    j["parse_defaulted_labels"] = report.parse_defaulted_labels;

    Json labels = Json::array();
    for (int i = 0; i < kLabelCount; ++i) {
        const LabelReport& lr = report.labels[static_cast<size_t>(i)];
        Json row = Json::object();
        row["label"] = display_name(label_at(i));
        row["tp"] = lr.counts.tp;
        row["fp"] = lr.counts.fp;
        row["tn"] = lr.counts.tn;
        row["fn"] = lr.counts.fn;
        row["metrics"] = metrics_to_json(lr.metrics);
        row["f1_ci"] = lr.f1_ci ? interval_to_json(*lr.f1_ci) : Json(nullptr);
        row["tp_reason_pairs"] = lr.tp_reason_pairs;
        if (lr.similarity) {
            Json sim = Json::object();
            sim["rouge1"] = prf_to_json(lr.similarity->rouge1);
            sim["rouge2"] = prf_to_json(lr.similarity->rouge2);
            sim["rougeL"] = prf_to_json(lr.similarity->rougeL);
            sim["bleu"] = lr.similarity->bleu;
            sim["embed_f1"] = opt_to_json(lr.similarity->embed_f1);
            row["similarity"] = std::move(sim);
        } else {
            row["similarity"] = nullptr;
        }
        labels.push_back(std::move(row));
    }
    j["labels"] = std::move(labels);
    j["global"] = metrics_to_json(report.global_micro);
    j["global_f1_ci"] = interval_to_json(report.global_f1_ci);
    Json macro = Json::object();
    macro["value"] = report.macro.value;
    macro["used"] = report.macro.used;
    macro["skipped"] = report.macro.skipped;
    j["macro_f1"] = std::move(macro);
    return j.dump(2) + "\n";
}

RunReport run_report_from_json(const std::string& text) {
    Json j = Json::parse(text);
    RunReport report;
    report.model_tag = j.at("model_tag").get<std::string>();
    report.prompt_mode = j.at("prompt_mode").get<std::string>();
    report.backend = j.value("backend", "");
    report.dataset_hash = j.at("dataset_hash").get<std::string>();
    report.config_hash = j.at("config_hash").get<std::string>();
    report.created_at = j.value("created_at", "");
    report.narrative_count = j.at("narrative_count").get<long long>();
    report.total_decisions = j.at("total_decisions").get<long long>();
    report.generation_failures = j.at("generation_failures").get<long long>();
    report.parse_defaulted_labels = j.at("parse_defaulted_labels").get<long long>();

    const Json& labels = j.at("labels");
    if (labels.size() != static_cast<size_t>(kLabelCount))
        throw DatasetError("run report must cover the 20 canonical labels");
    for (int i = 0; i < kLabelCount; ++i) {
        const Json& row = labels[static_cast<size_t>(i)];
        LabelReport& lr = report.labels[static_cast<size_t>(i)];
        lr.counts.tp = row.at("tp").get<long long>();
        lr.counts.fp = row.at("fp").get<long long>();
        lr.counts.tn = row.at("tn").get<long long>();
        lr.counts.fn = row.at("fn").get<long long>();
        lr.metrics = metrics_from_json(row.at("metrics"));
        if (!row.at("f1_ci").is_null()) lr.f1_ci = interval_from_json(row.at("f1_ci"));
        lr.tp_reason_pairs = row.at("tp_reason_pairs").get<long long>();
        if (!row.at("similarity").is_null()) {
            const Json& sim = row.at("similarity");
            MeanSimilarity mean;
            mean.rouge1 = prf_from_json(sim.at("rouge1"));
            mean.rouge2 = prf_from_json(sim.at("rouge2"));
            mean.rougeL = prf_from_json(sim.at("rougeL"));
            mean.bleu = sim.at("bleu").get<double>();
            mean.embed_f1 = opt_from_json(sim.at("embed_f1"));
            lr.similarity = mean;
        }
    }
    report.global_micro = metrics_from_json(j.at("global"));
    report.global_f1_ci = interval_from_json(j.at("global_f1_ci"));
    report.macro.value = j.at("macro_f1").at("value").get<double>();
    report.macro.used = j.at("macro_f1").at("used").get<int>();
    report.macro.skipped = j.at("macro_f1").at("skipped").get<int>();
    return report;
}

void save_run_report(const RunReport& report, const std::filesystem::path& path) {
    write_text_file(path, run_report_to_json(report));
}

RunReport load_run_report(const std::filesystem::path& path) {
    return run_report_from_json(read_text_file(path));
}

std::string run_report_to_markdown(const RunReport& report) {
    std::ostringstream os;
    os << "# Run report (" << report.model_tag << ", " << report.prompt_mode << " prompt)\n\n";
    os << "- dataset hash: `" << report.dataset_hash << "`\n";
    os << "- config hash: `" << report.config_hash << "`\n";
    os << "- narratives: " << report.narrative_count << ", decisions: " << report.total_decisions
       << ", generation failures: " << report.generation_failures << "\n\n";
    os << "| Label | Acc | Prec | Rec | F1 | Halluc. | ROUGE-1 F | TP pairs |\n";
    os << "|---|---|---|---|---|---|---|---|\n";
    for (int i = 0; i < kLabelCount; ++i) {
        const LabelReport& lr = report.labels[static_cast<size_t>(i)];
        os << "| " << display_name(label_at(i)) << " | " << num2(lr.metrics.accuracy) << " | "
           << opt2(lr.metrics.precision) << " | " << opt2(lr.metrics.recall) << " | "
           << opt2(lr.metrics.f1) << " | " << opt2(lr.metrics.hallucination_rate) << " | "
           << (lr.similarity ? num2(lr.similarity->rouge1.f1) : std::string("n/a")) << " | "
           << lr.tp_reason_pairs << " |\n";
    }
    os << "| GLOBAL | " << num2(report.global_micro.accuracy) << " | "
       << opt2(report.global_micro.precision) << " | " << opt2(report.global_micro.recall)
       << " | " << opt2(report.global_micro.f1) << " | "
       << opt2(report.global_micro.hallucination_rate) << " | n/a | - |\n";
    os << "\nMacro-F1: " << num2(report.macro.value) << " (over " << report.macro.used
       << " labels";
    if (report.macro.skipped > 0) os << ", " << report.macro.skipped << " undefined skipped";
    os << ")\n";
    return os.str();
}

std::string decisions_to_jsonl(const std::vector<DecisionRecord>& decisions) {
    std::ostringstream os;
    for (const auto& d : decisions) {
        Json row = Json::object();
        row["sample_index"] = d.sample_index;
        row["generation_failed"] = d.generation_failed;
        Json pred = Json::array(), gold = Json::array();
        for (int i = 0; i < kLabelCount; ++i) {
            pred.push_back(d.predicted[static_cast<size_t>(i)]);
            gold.push_back(d.gold[static_cast<size_t>(i)]);
        }
        row["pred"] = std::move(pred);
        row["gold"] = std::move(gold);
        Json reasons = Json::object();
        for (int i = 0; i < kLabelCount; ++i) {
            if (d.predicted[static_cast<size_t>(i)] && d.gold[static_cast<size_t>(i)]) {
                Json pair = Json::array();
                pair.push_back(d.predicted_reason[static_cast<size_t>(i)]);
                pair.push_back(d.gold_reason[static_cast<size_t>(i)]);
                reasons[json_key(label_at(i))] = std::move(pair);
            }
        }
        row["tp_reasons"] = std::move(reasons);
        os << row.dump() << '\n';
    }
    return os.str();
}

std::string comparison_to_markdown(const ComparisonReport& report) {
    std::ostringstream os;
    os << "# Base vs fine-tuned comparison\n\n";
    os << "- dataset hash: `" << report.dataset_hash << "`\n";
    os << "- narratives: " << report.narrative_count << "\n\n";

    os << "## Classification performance\n\n";
    os << "| Label | Acc (base) | Acc (ft) | P (base) | P (ft) | R (base) | R (ft) | F1 (base) "
          "| F1 (ft) | dAcc |\n";
    os << "|---|---|---|---|---|---|---|---|---|---|\n";
    auto classification_row = [&](const ComparisonRow& row) {
        os << "| " << row.label << " | " << num2(row.base.accuracy) << " | "
           << num2(row.ft.accuracy) << " | " << opt2(row.base.precision) << " | "
           << opt2(row.ft.precision) << " | " << opt2(row.base.recall) << " | "
           << opt2(row.ft.recall) << " | " << opt2(row.base.f1) << " | " << opt2(row.ft.f1)
           << " | " << num2(row.delta_accuracy) << " |\n";
    };
    for (const auto& row : report.rows) classification_row(row);
    classification_row(report.global);

    os << "\n## Hallucination rates (1 - precision)\n\n";
    os << "| Label | Base rate | FT rate | Abs. change | Rel. change |\n";
    os << "|---|---|---|---|---|\n";
    auto hallucination_row = [&](const ComparisonRow& row) {
        os << "| " << row.label << " | " << opt2(row.base.hallucination_rate) << " | "
           << opt2(row.ft.hallucination_rate) << " | "
           << (row.hallucination_abs_change ? num2(*row.hallucination_abs_change)
                                            : std::string("n/a"))
           << " | "
           << (row.hallucination_rel_change_pct ? pct1(*row.hallucination_rel_change_pct)
                                                : std::string("n/a"))
           << " |\n";
    };
    for (const auto& row : report.rows) hallucination_row(row);
    hallucination_row(report.global);

    os << "\n## F1 confidence intervals and significance\n\n";
    os << "| Label | Base F1 (CI) | FT F1 (CI) | dF1 | Significance |\n";
    os << "|---|---|---|---|---|\n";
    auto ci_cell = [&](const std::optional<double>& f1,
                       const std::optional<IntervalEstimate>& ci) {
        if (!f1) return std::string("n/a");
        std::string out = num2(*f1);
        if (ci) out += " [" + num2(ci->lo) + ", " + num2(ci->hi) + "]";
        return out;
    };
    auto significance_row = [&](const ComparisonRow& row) {
        os << "| " << row.label << " | " << ci_cell(row.base.f1, row.base_ci) << " | "
           << ci_cell(row.ft.f1, row.ft_ci) << " | "
           << (row.delta_f1 ? num2(*row.delta_f1) : std::string("n/a")) << " | "
           << to_string(row.marker) << " |\n";
    };
    for (const auto& row : report.rows) significance_row(row);
    significance_row(report.global);
    os << "| MACRO-F1 | " << num2(report.base_macro_f1) << " | " << num2(report.ft_macro_f1)
       << " | " << num2(report.ft_macro_f1 - report.base_macro_f1) << " | "
       << to_string(report.macro_marker) << " |\n";
    return os.str();
}

std::string comparison_to_csv(const ComparisonReport& report) {
    std::ostringstream os;
    os << "#dataset_hash=" << report.dataset_hash << "\n";
    os << "#base_config_hash=" << report.base_config_hash << "\n";
    os << "#ft_config_hash=" << report.ft_config_hash << "\n";
    os << "#narrative_count=" << report.narrative_count << "\n";
    os << "#base_macro_f1=" << num17(report.base_macro_f1) << "\n";
    os << "#ft_macro_f1=" << num17(report.ft_macro_f1) << "\n";
    os << "#macro_marker=" << to_string(report.macro_marker) << "\n";
    os << kCsvHeader << "\n";
    for (const auto& row : report.rows) os << row_to_csv(row) << "\n";
    os << row_to_csv(report.global) << "\n";
    return os.str();
}

ComparisonReport comparison_from_csv(const std::string& text) {
    ComparisonReport report;
    std::istringstream in(text);
    std::string line;
    std::vector<std::string> body;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line[0] == '#') {
            size_t eq = line.find('=');
            if (eq == std::string::npos) continue;
            std::string key = line.substr(1, eq - 1);
            std::string value = line.substr(eq + 1);
            if (key == "dataset_hash") report.dataset_hash = value;
            else if (key == "base_config_hash") report.base_config_hash = value;
            else if (key == "ft_config_hash") report.ft_config_hash = value;
            else if (key == "narrative_count") report.narrative_count = std::stoll(value);
            else if (key == "base_macro_f1") report.base_macro_f1 = std::stod(value);
            else if (key == "ft_macro_f1") report.ft_macro_f1 = std::stod(value);
            else if (key == "macro_marker") report.macro_marker = significance_from_string(value);
            continue;
        }
        if (line == kCsvHeader) continue;
        body.push_back(line);
    }
    if (body.empty()) throw DatasetError("comparison csv has no rows");
    for (size_t i = 0; i + 1 < body.size(); ++i)
        report.rows.push_back(row_from_csv(split_csv_line(body[i]), report.narrative_count));
    report.global = row_from_csv(split_csv_line(body.back()), report.narrative_count);
    return report;
}

std::string comparison_to_jsonl(const ComparisonReport& report) {
    std::ostringstream os;
    Json meta = Json::object();
    meta["type"] = "meta";
    meta["dataset_hash"] = report.dataset_hash;
    meta["base_config_hash"] = report.base_config_hash;
    meta["ft_config_hash"] = report.ft_config_hash;
    meta["narrative_count"] = report.narrative_count;
    meta["base_macro_f1"] = report.base_macro_f1;
    meta["ft_macro_f1"] = report.ft_macro_f1;
    meta["macro_marker"] = to_string(report.macro_marker);
    os << meta.dump() << '\n';

    auto row_json = [&](const ComparisonRow& row, const char* type) {
        Json j = Json::object();
        j["type"] = type;
        j["label"] = row.label;
        j["base"] = metrics_to_json(row.base);
        j["ft"] = metrics_to_json(row.ft);
        j["delta_accuracy"] = row.delta_accuracy;
        j["delta_f1"] = opt_to_json(row.delta_f1);
        j["significance"] = to_string(row.marker);
        j["base_ci"] = row.base_ci ? interval_to_json(*row.base_ci) : Json(nullptr);
        j["ft_ci"] = row.ft_ci ? interval_to_json(*row.ft_ci) : Json(nullptr);
        j["hallucination_abs_change"] = opt_to_json(row.hallucination_abs_change);
        j["hallucination_rel_change_pct"] = opt_to_json(row.hallucination_rel_change_pct);
        return j;
    };
    for (const auto& row : report.rows) os << row_json(row, "row").dump() << '\n';
    os << row_json(report.global, "global").dump() << '\n';
    return os.str();
}

std::string emit_comparison(const ComparisonReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Markdown: return comparison_to_markdown(report);
        case ReportFormat::Csv: return comparison_to_csv(report);
        case ReportFormat::JsonLines: return comparison_to_jsonl(report);
    }
    throw ConfigError("unsupported report format");
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path.string());
    out << content;
    if (!out) throw IoError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read file: " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace fraudlens
