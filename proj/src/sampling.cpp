#include "fraudlens/sampling.hpp"

#include <fstream>
#include <random>
#include <unordered_map>

#include <json.hpp>

#include "fraudlens/errors.hpp"

namespace fraudlens {
namespace {

using Json = nlohmann::ordered_json;

// Bounded draw with explicit arithmetic so plans are reproducible across
// standard-library implementations.
size_t draw_below(std::mt19937_64& rng, size_t bound) {
    return static_cast<size_t>(rng() % bound);
}

template <typename T>
void shuffle_vec(std::vector<T>& v, std::mt19937_64& rng) {
    for (size_t i = v.size(); i > 1; --i) {
        size_t j = draw_below(rng, i);
        std::swap(v[i - 1], v[j]);
    }
}

}  // namespace

TripletPlan plan_triplets(long long n_total, const LabelSpace& space, uint64_t rng_seed) {
    if (n_total < 0) throw ConfigError("n_total must be non-negative");
    const long long combos = space.triplet_count();
    if (combos == 0) throw ConfigError("label space has no triplets");

    TripletPlan plan;
    plan.entries.reserve(static_cast<size_t>(combos));
    for (const auto& fraud : space.fraud_types)
        for (const auto& tactic : space.tactics)
            for (const auto& theory : space.theories)
                plan.entries.push_back({fraud, tactic, theory, 0});

    const int base = static_cast<int>(n_total / combos);
    long long remainder = n_total % combos;
    for (auto& entry : plan.entries) entry.count = base;

    if (remainder > 0) {
        std::mt19937_64 rng(rng_seed);
        const size_t type_count = space.fraud_types.size();
        const size_t per_type = space.tactics.size() * space.theories.size();

        // Entry indices grouped by fraud type, each group shuffled, plus a
        // shuffled type rotation; extras are dealt one type at a time.
        std::vector<std::vector<size_t>> groups(type_count);
        for (size_t f = 0; f < type_count; ++f) {
            groups[f].reserve(per_type);
            for (size_t k = 0; k < per_type; ++k) groups[f].push_back(f * per_type + k);
            shuffle_vec(groups[f], rng);
        }
        std::vector<size_t> type_order(type_count);
        for (size_t f = 0; f < type_count; ++f) type_order[f] = f;
        shuffle_vec(type_order, rng);

        std::vector<size_t> taken(type_count, 0);
        for (long long k = 0; k < remainder; ++k) {
            size_t f = type_order[static_cast<size_t>(k) % type_count];
            plan.entries[groups[f][taken[f]++]].count += 1;
        }
    }

    plan.total = n_total;
    return plan;
}

std::vector<GenerationSeed> seeds_for_plan(const TripletPlan& plan, uint64_t rng_seed) {
    std::mt19937_64 rng(rng_seed);
    std::vector<GenerationSeed> seeds;
    seeds.reserve(static_cast<size_t>(plan.total));
    long long index = 0;
    for (const auto& entry : plan.entries) {
        for (int k = 0; k < entry.count; ++k) {
            seeds.push_back({entry.fraud_type, entry.major_tactic, entry.major_theory, index++,
                             rng()});
        }
    }
    return seeds;
}

void save_plan(const TripletPlan& plan, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write plan file: " + path.string());
    for (const auto& entry : plan.entries) {
        Json row = Json::object();
        row["fraud_type"] = entry.fraud_type;
        row["major_tactic"] = entry.major_tactic;
        row["major_theory"] = entry.major_theory;
        row["count"] = entry.count;
        out << row.dump() << '\n';
    }
    if (!out) throw IoError("write failed: " + path.string());
}

TripletPlan load_plan(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open plan file: " + path.string());
    TripletPlan plan;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json row;
        try {
            row = Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw DatasetError("plan line " + std::to_string(line_no) + ": " + e.what());
        }
        TripletPlanEntry entry;
        entry.fraud_type = row.at("fraud_type").get<std::string>();
        entry.major_tactic = row.at("major_tactic").get<std::string>();
        entry.major_theory = row.at("major_theory").get<std::string>();
        entry.count = row.at("count").get<int>();
        if (entry.count < 0)
            throw DatasetError("plan line " + std::to_string(line_no) + ": negative count");
        plan.total += entry.count;
        plan.entries.push_back(std::move(entry));
    }
    return plan;
}

std::vector<std::pair<std::string, long long>> fraud_type_marginals(const TripletPlan& plan) {
    std::vector<std::pair<std::string, long long>> totals;
    std::unordered_map<std::string, size_t> index;
    for (const auto& entry : plan.entries) {
        auto [it, inserted] = index.try_emplace(entry.fraud_type, totals.size());
        if (inserted) totals.emplace_back(entry.fraud_type, 0);
        totals[it->second].second += entry.count;
    }
    return totals;
}

}  // namespace fraudlens
